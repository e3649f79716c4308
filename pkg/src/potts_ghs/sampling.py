"""Seeded random instances with reproducible per-trial substreams.

Every randomized check derives one private generator per trial from the pair
(seed, trial index), so trial k of a run is reproducible in isolation and
adding trials never disturbs earlier ones.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .model import GhostWeightVector, ModelSpec, pair_order


def trial_rng(seed: int, trial: int) -> random.Random:
    """Independent generator for one trial of a seeded run."""
    return random.Random(f"{seed}:{trial}")


def random_excess(rng: random.Random) -> Fraction:
    """A random nonnegative rational deviation X = t - 1.

    Numerators are uniform on [0, 2**16], denominators on [1, 2**8]; the
    resulting weights t = 1 + X cover several orders of magnitude while
    staying exactly representable.
    """
    return Fraction(rng.randint(0, 2**16), rng.randint(1, 2**8))


def random_weights(
    n_sites: int, n_states: int, rng: random.Random
) -> GhostWeightVector:
    """Exact random instance: every pair weight drawn as t = 1 + X."""
    n_pairs = len(pair_order(n_sites))
    weights = tuple(1 + random_excess(rng) for _ in range(n_pairs))
    return GhostWeightVector(n_sites, n_states, weights)


def random_model(
    n_sites: int, n_states: int, rng: random.Random, scale: float = 1.5
) -> ModelSpec:
    """Physical random instance: couplings and fields uniform on [0, scale]."""
    couplings = {
        (i, j): rng.uniform(0.0, scale)
        for i in range(1, n_sites + 1)
        for j in range(i + 1, n_sites + 1)
    }
    fields = tuple(rng.uniform(0.0, scale) for _ in range(n_sites))
    return ModelSpec(
        n_sites=n_sites, n_states=n_states, couplings=couplings, fields=fields
    )
