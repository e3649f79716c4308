"""Separation of the curvature polynomial into per-pair factors and a core.

Every pair outside the distinguished core pairs (1,2), (1,3), (2,3) can be
split off the expansion as a closed-form univariate factor in its own
deviation X_p:

  * bulk pairs (both endpoints ordinary, or ghost pairs beyond site 3):
        (1 + X/r)**3
  * the three field pairs (0,1), (0,2), (0,3):
        1 + (1 + 2/r) X + (2/r + 1/r**2) X**2 + (1/r**2) X**3

What remains is the reduced core polynomial in the three core deviations,
whose coefficients are the 64 aggregated table entries.  The factorization
is checked two ways: exhaustively at n_sites = 3 against the full symbolic
expansion, and by exact evaluation on random instances against the direct
curvature sum.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .constraints import ConstraintMatrix, matrix_coefficient
from .derivatives import ghs_sum
from .expansion import expand_full
from .laurent import LaurentPoly
from .model import GhostWeightVector, instance_digest, pair_order
from .modelfile import rational_str
from .sampling import random_weights, trial_rng
from .xpoly import XPoly, xpoly_eval

# Coefficients of the bulk factor (1 + X/r)**3 by power of X.
BULK_COEFFS: tuple[LaurentPoly, ...] = (
    LaurentPoly({0: 1}),
    LaurentPoly({-1: 3}),
    LaurentPoly({-2: 3}),
    LaurentPoly({-3: 1}),
)

# Coefficients of the field factor 1 + (1+2/r)X + (2/r+1/r^2)X^2 + (1/r^2)X^3.
FIELD_COEFFS: tuple[LaurentPoly, ...] = (
    LaurentPoly({0: 1}),
    LaurentPoly({0: 1, -1: 2}),
    LaurentPoly({-1: 2, -2: 1}),
    LaurentPoly({-2: 1}),
)


@dataclass(frozen=True)
class SeparatedForm:
    """Factored shape of the expansion: per-pair factors times a core.

    ``separation_factors`` builds the factor skeleton with an empty core;
    ``separated_form`` fills in the reduced core polynomial.
    """

    n_sites: int
    field_pairs: tuple[int, ...]
    bulk_pairs: tuple[int, ...]
    factors: dict[int, XPoly]
    core: XPoly


def factor_poly(coeffs: tuple[LaurentPoly, ...], p: int) -> XPoly:
    """Univariate factor in X_p from a coefficient tuple indexed by power."""
    return XPoly({((p, e),) if e else (): c for e, c in enumerate(coeffs)})


@lru_cache(maxsize=None)
def reduced_expansion(n_sites: int) -> XPoly:
    """The core polynomial: monomials in the three core deviations only.

    Aggregates the signed coefficients of all 512 constraint matrices
    supported on the core pairs, each matrix contributing its coefficient to
    the monomial X_{p1}**n(p1) X_{p2}**n(p2) X_{p3}**n(p3).
    """
    order = pair_order(n_sites)
    p1, p2, p3 = order.core_indices
    rows = list(product((0, 1), repeat=3))
    terms: dict = {}
    for row1 in rows:
        for row2 in rows:
            for row3 in rows:
                matrix = ConstraintMatrix(
                    n_sites, ((p1, row1), (p2, row2), (p3, row3))
                )
                coeff = matrix_coefficient(matrix)
                mono = tuple(
                    (p, sum(row))
                    for p, row in ((p1, row1), (p2, row2), (p3, row3))
                    if sum(row)
                )
                terms[mono] = terms.get(mono, LaurentPoly.zero()) + coeff
    return XPoly(terms)


@lru_cache(maxsize=None)
def separation_factors(n_sites: int) -> SeparatedForm:
    """The factor skeleton at a given size: per-pair factors, core empty."""
    order = pair_order(n_sites)
    field = order.field_indices
    bulk = order.bulk_indices
    factors = {p: factor_poly(FIELD_COEFFS, p) for p in field}
    factors.update({p: factor_poly(BULK_COEFFS, p) for p in bulk})
    return SeparatedForm(
        n_sites=n_sites,
        field_pairs=field,
        bulk_pairs=bulk,
        factors=factors,
        core=XPoly.zero(),
    )


@lru_cache(maxsize=None)
def separated_form(n_sites: int) -> SeparatedForm:
    """The complete separated form: factors plus the reduced core."""
    return replace(separation_factors(n_sites), core=reduced_expansion(n_sites))


def assemble_separated(form: SeparatedForm) -> XPoly:
    """Multiply all factors into the core, recovering the full expansion."""
    if not form.core:
        raise ValueError("form has an empty core; build it with separated_form")
    total = form.core
    for p in sorted(form.factors):
        total = total * form.factors[p]
    return total


def evaluate_separated(form: SeparatedForm, weights: GhostWeightVector) -> Fraction:
    """Exact value of the separated form at an instance."""
    if weights.n_sites != form.n_sites:
        raise ValueError("instance size does not match the separated form")
    if not form.core:
        raise ValueError("form has an empty core; build it with separated_form")
    x = weights.x_values()
    r = weights.n_states
    total = xpoly_eval(form.core, x, r)
    for p, factor in form.factors.items():
        total *= xpoly_eval(factor, x, r)
    return total


def separation_check(
    n_sites: int,
    mode: str,
    trials: int = 50,
    seed: int = 0,
    n_states: int | None = None,
) -> dict:
    """Verify the factorization, exhaustively or on random instances.

    Exhaustive mode (n_sites = 3 only) compares the assembled separated form
    against the full symbolic expansion monomial by monomial.  Random-eval
    mode draws seeded exact instances and compares the evaluated separated
    form against the direct curvature sum.
    """
    if mode == "exhaustive":
        if n_sites != 3:
            raise ValueError("exhaustive mode is supported at n_sites=3 only")
        form = separated_form(n_sites)
        assembled = assemble_separated(form)
        full = expand_full(n_sites)
        mismatches = _poly_mismatches(assembled, full)
        return {
            "mode": mode,
            "n_sites": n_sites,
            "monomials_compared": max(len(assembled), len(full)),
            "mismatch_count": len(mismatches),
            "first_mismatch": mismatches[0] if mismatches else None,
            "passed": not mismatches,
        }
    if mode == "random-eval":
        if n_states is None or n_states < 2:
            raise ValueError("random-eval mode needs n_states >= 2")
        if trials < 1:
            raise ValueError("trials must be >= 1")
        form = separated_form(n_sites)
        failures = []
        for k in range(trials):
            weights = random_weights(n_sites, n_states, trial_rng(seed, k))
            lhs = evaluate_separated(form, weights)
            rhs = ghs_sum(weights)
            if lhs != rhs:
                failures.append(
                    {
                        "trial": k,
                        "instance": instance_digest(weights),
                        "weights": [rational_str(t) for t in weights.weights],
                        "separated": rational_str(lhs),
                        "direct": rational_str(rhs),
                    }
                )
        return {
            "mode": mode,
            "n_sites": n_sites,
            "n_states": n_states,
            "trials": trials,
            "seed": seed,
            "failures": failures,
            "passed": not failures,
        }
    raise ValueError(f"unknown mode {mode!r} (want 'exhaustive' or 'random-eval')")


def _poly_mismatches(lhs: XPoly, rhs: XPoly) -> list[dict]:
    keys = set(dict(lhs.items())) | set(dict(rhs.items()))
    out = []
    for mono in sorted(keys, key=lambda m: (sum(e for _, e in m), m)):
        a = lhs.coefficient(dict(mono))
        b = rhs.coefficient(dict(mono))
        if a != b:
            out.append(
                {
                    "monomial": [[v, e] for v, e in mono],
                    "assembled": str(a),
                    "full": str(b),
                }
            )
    return out
