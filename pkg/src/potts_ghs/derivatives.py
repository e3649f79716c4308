"""Derivatives of the local magnetization, exact and numerical.

The first derivative of m_i with respect to the field at site k is the
truncated pair correlation; the second derivative with respect to the fields
at j and k is the five-term truncated triple correlation

    <d_i d_j d_k> - <d_i d_k><d_j> - <d_i d_j><d_k> - <d_k d_j><d_i>
        + 2 <d_i><d_j><d_k>

where d_i indicates site i being in state 1 and repeated indices merge.
``ghs_sum`` computes the same quantity for the triple (1, 2, 3) scaled by
r**3 Z**3, directly as a signed combination of ghost-summed constrained
partition sums — an independent route used to cross-check the correlator
formula.  A high-precision finite-difference oracle backs the analytic
values numerically.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .constraints import GHS_TERMS, constrained_sum
from .model import (
    GhostWeightVector,
    ModelSpec,
    instance_digest,
    model_weights_float,
    pair_order,
    relabel_sites,
    weighted_sums,
)

FD_PRECISION_DPS = 40


@dataclass(frozen=True)
class DerivativeResult:
    """A computed second derivative with its method and provenance."""

    value: Fraction | float
    method: str  # "analytic" | "finite-difference" | "via-curvature-sum"
    site_triple: tuple[int, int, int]
    instance: str


def _check_sites(n_sites: int, *sites: int) -> None:
    for s in sites:
        if not 1 <= s <= n_sites:
            raise ValueError(f"site {s} out of range for n_sites={n_sites}")


def first_derivative(weights: GhostWeightVector, i: int, k: int) -> Fraction:
    """d m_i / d B_k: the truncated pair correlation <d_i d_k> - <d_i><d_k>."""
    _check_sites(weights.n_sites, i, k)
    z, cik, ci, ck = weighted_sums(
        weights.weights,
        weights.n_sites,
        weights.n_states,
        [(), {i, k}, {i}, {k}],
        Fraction(1),
    )
    return cik / z - (ci / z) * (ck / z)


def second_derivative_analytic(
    weights: GhostWeightVector, i: int, j: int, k: int
) -> Fraction:
    """d^2 m_i / (d B_j d B_k), exactly, via truncated triple correlations."""
    _check_sites(weights.n_sites, i, j, k)
    sums = weighted_sums(
        weights.weights,
        weights.n_sites,
        weights.n_states,
        [(), {i, j, k}, {i, k}, {i, j}, {j, k}, {i}, {j}, {k}],
        Fraction(1),
    )
    z, cijk, cik, cij, cjk, ci, cj, ck = sums
    return (
        cijk / z
        - (cik / z) * (cj / z)
        - (cij / z) * (ck / z)
        - (cjk / z) * (ci / z)
        + 2 * (ci / z) * (cj / z) * (ck / z)
    )


def second_derivative_float(model: ModelSpec, i: int, j: int, k: int) -> float:
    """The analytic second derivative in double precision, from a physical
    model (weights e**J); used for float-domain spot checks."""
    _check_sites(model.n_sites, i, j, k)
    tw = model_weights_float(model)
    sums = weighted_sums(
        tw,
        model.n_sites,
        model.n_states,
        [(), {i, j, k}, {i, k}, {i, j}, {j, k}, {i}, {j}, {k}],
        1.0,
    )
    z, cijk, cik, cij, cjk, ci, cj, ck = sums
    return (
        cijk / z
        - (cik / z) * (cj / z)
        - (cij / z) * (ck / z)
        - (cjk / z) * (ci / z)
        + 2.0 * (ci / z) * (cj / z) * (ck / z)
    )


def _mp_magnetization(model: ModelSpec, i: int, shifts: dict[int, mp.mpf]):
    """Magnetization of site i with the fields shifted, in working precision."""
    order = pair_order(model.n_sites)
    tw = []
    for a, b in order.pairs:
        if a == 0:
            tw.append(mp.exp(mp.mpf(model.fields[b - 1]) + shifts.get(b, mp.mpf(0))))
        else:
            tw.append(mp.exp(mp.mpf(model.coupling(a, b))))
    z, top = weighted_sums(tw, model.n_sites, model.n_states, [(), {i}], mp.mpf(1))
    return top / z


def second_derivative_fd(
    model: ModelSpec, i: int, j: int, k: int, h: float = 1e-4
) -> float:
    """Central finite differences of the magnetization in the fields.

    Differences are formed in extended precision so the quadratic truncation
    error of the stencil dominates rounding even at small steps; the
    returned value is a float.
    """
    _check_sites(model.n_sites, i, j, k)
    if h <= 0:
        raise ValueError("step h must be positive")
    with mp.workdps(FD_PRECISION_DPS):
        step = mp.mpf(h)
        if j == k:
            plus = _mp_magnetization(model, i, {j: step})
            mid = _mp_magnetization(model, i, {})
            minus = _mp_magnetization(model, i, {j: -step})
            value = (plus - 2 * mid + minus) / step**2
        else:
            pp = _mp_magnetization(model, i, {j: step, k: step})
            pm = _mp_magnetization(model, i, {j: step, k: -step})
            mp_ = _mp_magnetization(model, i, {j: -step, k: step})
            mm = _mp_magnetization(model, i, {j: -step, k: -step})
            value = (pp - pm - mp_ + mm) / (4 * step**2)
        return float(value)


def ghs_sum(weights: GhostWeightVector) -> Fraction:
    """The scaled curvature sum for the site triple (1, 2, 3).

    Signed combination of products of ghost-summed constrained partition
    sums with every pair weight active; equals r**3 Z**3 times the analytic
    second derivative of m_1 in the fields at sites 2 and 3.
    """
    if weights.n_sites < 3:
        raise ValueError("the curvature sum needs n_sites >= 3")
    all_pairs = pair_order(weights.n_sites).pairs
    cache: dict[tuple, Fraction] = {}

    def factor(eqs: tuple[tuple[int, int], ...]) -> Fraction:
        if eqs not in cache:
            cache[eqs] = constrained_sum(weights, eqs, all_pairs)
        return cache[eqs]

    total = Fraction(0)
    for sign, builtins in GHS_TERMS:
        prod = Fraction(1)
        for eqs in builtins:
            prod *= factor(eqs)
        total += sign * prod
    return total


def second_derivative_via_sum(
    weights: GhostWeightVector, i: int, j: int, k: int
) -> Fraction:
    """Second derivative recovered from the curvature sum by relabeling.

    Only defined for distinct sites: the triple (i, j, k) is moved onto
    (1, 2, 3) and the scaled sum is divided back by r**3 Z**3.
    """
    _check_sites(weights.n_sites, i, j, k)
    if len({i, j, k}) != 3:
        raise ValueError("the curvature-sum route needs three distinct sites")
    perm = {i: 1, j: 2, k: 3}
    rest = sorted(set(range(1, weights.n_sites + 1)) - {i, j, k})
    for slot, site in enumerate(rest, start=4):
        perm[site] = slot
    moved = relabel_sites(weights, perm)
    r = weights.n_states
    z = weighted_sums(moved.weights, moved.n_sites, r, [()], Fraction(1))[0]
    return ghs_sum(moved) / (Fraction(r) ** 3 * z**3)


def analytic_result(
    weights: GhostWeightVector, i: int, j: int, k: int
) -> DerivativeResult:
    return DerivativeResult(
        value=second_derivative_analytic(weights, i, j, k),
        method="analytic",
        site_triple=(i, j, k),
        instance=instance_digest(weights),
    )
