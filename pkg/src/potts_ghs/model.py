"""Ferromagnetic Potts instances with a ghost site encoding external fields.

A model has N ordinary sites 1..N carrying spins in {1, ..., r} and a ghost
site 0 pinned to state 1, whose couplings to the ordinary sites play the role
of the external fields.  All interactions live on the C(N+1, 2) unordered
site pairs, listed in a fixed lexicographic order.  In the exact domain each
pair carries a rational weight t = e**J >= 1; correlations are computed by
exact enumeration over spin configurations.
"""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping, Sequence


class PairOrder:
    """The lexicographic list of unordered pairs over {0, ..., n_sites}."""

    __slots__ = ("n_sites", "pairs", "index_of")

    def __init__(self, n_sites: int):
        if n_sites < 1:
            raise ValueError("n_sites must be >= 1")
        self.n_sites = n_sites
        self.pairs = tuple(
            (i, j) for i in range(n_sites + 1) for j in range(i + 1, n_sites + 1)
        )
        self.index_of = {pair: p for p, pair in enumerate(self.pairs)}

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def core_indices(self) -> tuple[int, int, int]:
        """Indices of the distinguished site pairs (1,2), (1,3), (2,3)."""
        self._require_triple()
        return (self.index_of[(1, 2)], self.index_of[(1, 3)], self.index_of[(2, 3)])

    @property
    def field_indices(self) -> tuple[int, int, int]:
        """Indices of the ghost pairs (0,1), (0,2), (0,3)."""
        self._require_triple()
        return (self.index_of[(0, 1)], self.index_of[(0, 2)], self.index_of[(0, 3)])

    @property
    def bulk_indices(self) -> tuple[int, ...]:
        """All pair indices outside the core and field pairs."""
        special = set(self.core_indices) | set(self.field_indices)
        return tuple(p for p in range(len(self.pairs)) if p not in special)

    def _require_triple(self) -> None:
        if self.n_sites < 3:
            raise ValueError("the distinguished site triple (1,2,3) needs n_sites >= 3")

    def __repr__(self) -> str:
        return f"PairOrder(n_sites={self.n_sites}, n_pairs={len(self.pairs)})"


@lru_cache(maxsize=None)
def pair_order(n_sites: int) -> PairOrder:
    return PairOrder(n_sites)


@dataclass(frozen=True)
class SpinConfig:
    """An assignment of spins; the ghost spin, when present, comes first."""

    spins: tuple[int, ...]
    ghost_included: bool = False

    def site_spin(self, i: int) -> int:
        if self.ghost_included:
            return self.spins[i]
        if i == 0:
            return 1
        return self.spins[i - 1]


@dataclass(frozen=True)
class ModelSpec:
    """Physical parameters: real couplings J and fields B (both >= 0)."""

    n_sites: int
    n_states: int
    couplings: Mapping[tuple[int, int], float] = field(default_factory=dict)
    fields: tuple[float, ...] = ()

    def __post_init__(self):
        if self.n_sites < 1:
            raise ValueError("n_sites must be >= 1")
        if self.n_states < 2:
            raise ValueError("n_states must be >= 2")
        fields = tuple(self.fields) if self.fields else (0.0,) * self.n_sites
        if len(fields) != self.n_sites:
            raise ValueError("fields must have one entry per site")
        clean: dict[tuple[int, int], float] = {}
        for (i, j), val in dict(self.couplings).items():
            if not (1 <= i < j <= self.n_sites):
                raise ValueError(f"coupling pair ({i}, {j}) out of range")
            if val < 0:
                raise ValueError("ferromagnetic couplings must be >= 0")
            clean[(i, j)] = float(val)
        if any(b < 0 for b in fields):
            raise ValueError("fields must be >= 0")
        object.__setattr__(self, "couplings", clean)
        object.__setattr__(self, "fields", tuple(float(b) for b in fields))

    def coupling(self, i: int, j: int) -> float:
        if i > j:
            i, j = j, i
        return self.couplings.get((i, j), 0.0)


@dataclass(frozen=True)
class GhostWeightVector:
    """Exact rational pair weights t_p >= 1 aligned with pair_order(n_sites)."""

    n_sites: int
    n_states: int
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        order = pair_order(self.n_sites)
        if self.n_states < 2:
            raise ValueError("n_states must be >= 2")
        weights = tuple(Fraction(t) for t in self.weights)
        if len(weights) != len(order):
            raise ValueError(
                f"expected {len(order)} weights for n_sites={self.n_sites}, "
                f"got {len(weights)}"
            )
        if any(t < 1 for t in weights):
            raise ValueError("ferromagnetic weights require t >= 1")
        object.__setattr__(self, "weights", weights)

    @classmethod
    def from_pair_map(
        cls,
        n_sites: int,
        n_states: int,
        values: Mapping[tuple[int, int], Fraction | int | str],
        default: Fraction | int = 1,
    ) -> "GhostWeightVector":
        order = pair_order(n_sites)
        table = {}
        for (i, j), val in values.items():
            key = (i, j) if i < j else (j, i)
            if key not in order.index_of:
                raise ValueError(f"pair ({i}, {j}) out of range for n_sites={n_sites}")
            table[key] = Fraction(val)
        weights = tuple(table.get(pair, Fraction(default)) for pair in order.pairs)
        return cls(n_sites=n_sites, n_states=n_states, weights=weights)

    @classmethod
    def uniform(
        cls, n_sites: int, n_states: int, t: Fraction | int = 1
    ) -> "GhostWeightVector":
        n_pairs = len(pair_order(n_sites))
        return cls(n_sites, n_states, (Fraction(t),) * n_pairs)

    def weight_of(self, i: int, j: int) -> Fraction:
        if i > j:
            i, j = j, i
        return self.weights[pair_order(self.n_sites).index_of[(i, j)]]

    def x_values(self) -> dict[int, Fraction]:
        """Deviations X_p = t_p - 1 keyed by pair index."""
        return {p: t - 1 for p, t in enumerate(self.weights)}


def energy(model: ModelSpec, config: SpinConfig | Sequence[int]) -> float:
    """Interaction energy of a spin configuration (ghost pinned to state 1)."""
    if isinstance(config, SpinConfig):
        if config.ghost_included:
            spins = config.spins
            if spins[0] != 1:
                raise ValueError("the ghost spin must be in state 1")
        else:
            spins = (1,) + tuple(config.spins)
    else:
        spins = (1,) + tuple(config)
    if len(spins) != model.n_sites + 1:
        raise ValueError("configuration length does not match n_sites")
    if any(not 1 <= s <= model.n_states for s in spins):
        raise ValueError("spin out of range")
    total = 0.0
    for i in range(1, model.n_sites + 1):
        if spins[i] == 1:
            total += model.fields[i - 1]
        for j in range(i + 1, model.n_sites + 1):
            if spins[i] == spins[j]:
                total += model.coupling(i, j)
    return total


def weighted_sums(
    weight_seq: Sequence,
    n_sites: int,
    n_states: int,
    site_sets: Sequence[Iterable[int]],
    one,
):
    """One enumeration pass over configurations with the ghost fixed at 1.

    Returns, for each requested set of sites, the sum of the configuration
    weight prod_p t_p**[sigma_i = sigma_j] over configurations where every
    site of the set is in state 1.  Works for any weight type that supports
    multiplication and addition (Fraction, float, mpf); ``one`` is the
    multiplicative unit of that type.
    """
    order = pair_order(n_sites)
    pair_data = [
        (i, j, weight_seq[p])
        for p, (i, j) in enumerate(order.pairs)
        if weight_seq[p] != one
    ]
    targets = [tuple(sorted(set(s))) for s in site_sets]
    for tset in targets:
        if any(not 1 <= i <= n_sites for i in tset):
            raise ValueError("site index out of range")
    zero = one - one
    totals = [zero] * len(targets)
    states = range(1, n_states + 1)
    for tail in product(states, repeat=n_sites):
        sigma = (1,) + tail
        w = one
        for i, j, t in pair_data:
            if sigma[i] == sigma[j]:
                w = w * t
        totals = [
            tot if any(sigma[i] != 1 for i in tset) else tot + w
            for tot, tset in zip(totals, targets)
        ]
    return totals


def pinned_sum(weights: GhostWeightVector, sites: Iterable[int]) -> Fraction:
    """Partition sum restricted to configurations with the given sites at 1."""
    return weighted_sums(
        weights.weights, weights.n_sites, weights.n_states, [sites], Fraction(1)
    )[0]


def partition_function(weights: GhostWeightVector, ghost_mode: str = "fixed") -> Fraction:
    """Exact partition function, with the ghost spin fixed at 1 or summed."""
    if ghost_mode == "fixed":
        return pinned_sum(weights, ())
    if ghost_mode == "summed":
        # Summing the ghost over all r states multiplies the fixed-ghost sum
        # by r: relabelling states maps the ghost-at-s slice onto ghost-at-1.
        from .constraints import constrained_sum

        return constrained_sum(weights, (), pair_order(weights.n_sites).pairs)
    raise ValueError("ghost_mode must be 'fixed' or 'summed'")


def correlator(weights: GhostWeightVector, sites: Iterable[int]) -> Fraction:
    """Probability that all listed sites are in state 1."""
    z, top = weighted_sums(
        weights.weights, weights.n_sites, weights.n_states, [(), sites], Fraction(1)
    )
    return top / z


def magnetization(weights: GhostWeightVector, i: int) -> Fraction:
    """Probability that site i is in state 1."""
    return correlator(weights, (i,))


def relabel_sites(weights: GhostWeightVector, perm: Mapping[int, int]) -> GhostWeightVector:
    """Transport weights along a permutation of ordinary sites.

    ``perm`` maps old site labels to new ones (ghost fixed); the returned
    instance satisfies magnetization(new, perm[i]) == magnetization(old, i).
    """
    n = weights.n_sites
    mapping = dict(perm)
    for i in range(1, n + 1):
        mapping.setdefault(i, i)
    if sorted(mapping.keys()) != list(range(1, n + 1)) or sorted(
        mapping.values()
    ) != list(range(1, n + 1)):
        raise ValueError("perm must be a bijection on {1, ..., n_sites}")
    mapping[0] = 0
    order = pair_order(n)
    table = {}
    for (i, j), t in zip(order.pairs, weights.weights):
        a, b = mapping[i], mapping[j]
        table[(min(a, b), max(a, b))] = t
    return GhostWeightVector(
        n, weights.n_states, tuple(table[pair] for pair in order.pairs)
    )


def model_weights_float(model: ModelSpec) -> list[float]:
    """Pair weights e**J (and e**B on ghost pairs) aligned with pair_order."""
    order = pair_order(model.n_sites)
    out = []
    for i, j in order.pairs:
        if i == 0:
            out.append(math.exp(model.fields[j - 1]))
        else:
            out.append(math.exp(model.coupling(i, j)))
    return out


def instance_digest(weights: GhostWeightVector) -> str:
    """Short stable digest identifying an exact instance."""
    body = f"{weights.n_sites};{weights.n_states};" + ",".join(
        f"{t.numerator}/{t.denominator}" for t in weights.weights
    )
    return hashlib.sha256(body.encode()).hexdigest()[:12]
