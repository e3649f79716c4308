"""Module entry point: python -m potts_ghs ..."""
from .cli import main

if __name__ == "__main__":
    raise SystemExit(main())
