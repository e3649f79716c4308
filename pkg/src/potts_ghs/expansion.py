"""Polynomial expansion of the scaled curvature sum in the deviations X_p.

Writing each pair weight as t_p = 1 + X_p and distributing, the five-term
signed combination of constrained sums becomes a polynomial in the X_p whose
monomial coefficients are signed r-powers aggregated over constraint
matrices.  The expansion factorizes column by column: for each of the five
terms and each of its three factors, summing r**(block count) over the
subsets of expanded pairs yields a univariate-in-each-X polynomial, and the
term is the product of its three factor polynomials.

``expand_full`` keeps the full pair window symbolically (supported at
n_sites = 3, where the window has 6 pairs and 2**6 subsets per factor);
``expand_partial`` expands only the last s pairs of the order, carrying the
remaining pairs exactly inside numeric constrained sums.
"""
from __future__ import annotations

from functools import lru_cache

from .constraints import GHS_TERMS, constrained_sum
from .laurent import LaurentPoly
from .model import GhostWeightVector, pair_order
from .partitions import block_count
from .xpoly import XPoly, monomial_key


class CapacityError(Exception):
    """A request exceeds the supported exact-enumeration size."""


def _distinct_builtins():
    """The distinct built-in equality sets across the five terms, plus the
    term structure re-indexed into that list."""
    builtins: list[tuple[tuple[int, int], ...]] = []
    index: dict[tuple[tuple[int, int], ...], int] = {}
    terms = []
    for sign, triple in GHS_TERMS:
        idxs = []
        for eqs in triple:
            if eqs not in index:
                index[eqs] = len(builtins)
                builtins.append(eqs)
            idxs.append(index[eqs])
        terms.append((sign, tuple(idxs)))
    return tuple(builtins), tuple(terms)


_BUILTINS, _TERMS = _distinct_builtins()


@lru_cache(maxsize=None)
def expand_full(n_sites: int) -> XPoly:
    """Full symbolic expansion over all pairs, with LaurentPoly coefficients.

    Only n_sites = 3 is supported: the coefficient table is dense in 2**C
    subsets per factor and the exact aggregation is meant for the desk-scale
    window.  Larger sites raise CapacityError.
    """
    if n_sites != 3:
        raise CapacityError(
            f"full expansion is supported at n_sites=3 only (got {n_sites})"
        )
    order = pair_order(n_sites)
    n_pairs = len(order)
    subset_pairs = [
        tuple(order.pairs[p] for p in range(n_pairs) if mask >> p & 1)
        for mask in range(1 << n_pairs)
    ]
    factor_polys = []
    for eqs in _BUILTINS:
        terms = {}
        for mask in range(1 << n_pairs):
            s = block_count(n_sites, eqs + subset_pairs[mask])
            mono = monomial_key(
                {p: 1 for p in range(n_pairs) if mask >> p & 1}
            )
            terms[mono] = LaurentPoly({s: 1})
        factor_polys.append(XPoly(terms))
    total = XPoly.zero()
    for sign, (b1, b2, b3) in _TERMS:
        term_poly = factor_polys[b1] * factor_polys[b2] * factor_polys[b3]
        total = total + sign * term_poly
    return total


MAX_DENSE_WINDOW = 6


def expand_partial(weights: GhostWeightVector, s: int) -> XPoly:
    """Expand the last s pairs of the order, keeping the rest numeric.

    The result has exact rational coefficients specific to the instance; its
    value at X_p = t_p - 1 for the expanded pairs equals the full curvature
    sum of the instance.  The enumeration is dense in 2**s subsets per
    factor, so the window is capped at MAX_DENSE_WINDOW pairs — the same
    desk-scale bound that limits the full expansion to three sites.
    """
    order = pair_order(weights.n_sites)
    n_pairs = len(order)
    if not 1 <= s <= n_pairs:
        raise ValueError(f"window size s must be in [1, {n_pairs}]")
    if s > MAX_DENSE_WINDOW:
        raise CapacityError(
            f"dense window of {s} pairs exceeds the supported size "
            f"({MAX_DENSE_WINDOW}); pick a smaller window"
        )
    window = list(range(n_pairs - s, n_pairs))
    carried = order.pairs[: n_pairs - s]
    factor_polys = []
    for eqs in _BUILTINS:
        terms = {}
        for mask in range(1 << s):
            chosen = tuple(order.pairs[window[b]] for b in range(s) if mask >> b & 1)
            value = constrained_sum(weights, eqs + chosen, carried)
            mono = monomial_key(
                {window[b]: 1 for b in range(s) if mask >> b & 1}
            )
            terms[mono] = value
        factor_polys.append(XPoly(terms))
    total = XPoly.zero()
    for sign, (b1, b2, b3) in _TERMS:
        term_poly = factor_polys[b1] * factor_polys[b2] * factor_polys[b3]
        total = total + sign * term_poly
    return total
