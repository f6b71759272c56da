"""Exact fractional matchings, fractional F-tilings, fractional covers,
and the cover-transfer reduction between them.

Every optimum is an exact rational verified against its dual; strong duality
is asserted on each solve (no tolerance anywhere).  Column order is
canonicalized (sorted placements) before solving so results are deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .core import ArityError, Hypergraph, Pattern, copies_of, vset
from .constructions import y_pattern
from .simplex import solve_packing_lp


@dataclass(frozen=True)
class RationalWeighting:
    """A fractional tiling: weights on placement vertex-sets, per-vertex load <= 1."""

    weights: Mapping[tuple[int, ...], Fraction]
    size: Fraction

    def support(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted((e, w) for e, w in self.weights.items() if w != 0)


@dataclass(frozen=True)
class CoverWeighting:
    """A fractional vertex cover: nonnegative vertex weights, >= 1 on every edge."""

    weights: Mapping[int, Fraction]
    total: Fraction

    def support(self) -> list[tuple[int, Fraction]]:
        return sorted((v, w) for v, w in self.weights.items() if w != 0)


def _solve_on_sets(sets: list[tuple[int, ...]], n: int,
                   max_columns: int) -> tuple[Fraction, RationalWeighting, CoverWeighting]:
    value, x, y = solve_packing_lp(sets, n, max_columns)
    prim = RationalWeighting({s: w for s, w in zip(sets, x)}, value)
    dual = CoverWeighting({v: y[v] for v in range(n)}, sum(y, Fraction(0)))
    return value, prim, dual


def max_fractional_matching(h: Hypergraph, max_columns: int = 200_000
                            ) -> tuple[Fraction, RationalWeighting]:
    """nu*(H): the largest fractional matching, exact, dual-verified."""
    value, prim, _ = _solve_on_sets(list(h.edges), h.n, max_columns)
    return value, prim


def min_fractional_cover(h: Hypergraph, max_columns: int = 200_000
                         ) -> tuple[Fraction, CoverWeighting]:
    """tau*(H): the minimum fractional vertex cover; equals nu*(H) exactly."""
    value, _, dual = _solve_on_sets(list(h.edges), h.n, max_columns)
    assert dual.total == value
    return value, dual


def max_fractional_f_tiling(h: Hypergraph, f: Pattern, max_columns: int = 200_000
                            ) -> tuple[Fraction, RationalWeighting]:
    """Largest fractional F-tiling: nu* of the auxiliary copy hypergraph."""
    if f.k != h.k:
        raise ArityError(f"pattern uniformity {f.k} != host uniformity {h.k}")
    sets = copies_of(h, f)
    value, prim, _ = _solve_on_sets(sets, h.n, max_columns)
    return value, prim


def auxiliary_copy_hypergraph(h: Hypergraph, f: Pattern) -> Hypergraph:
    """The p-graph on V(H) whose edges are the F-copy vertex sets."""
    if f.k != h.k:
        raise ArityError(f"pattern uniformity {f.k} != host uniformity {h.k}")
    return Hypergraph(f.p, h.n, tuple(copies_of(h, f)))


@dataclass(frozen=True)
class PerfectTilingCertificate:
    exists: bool
    value: Fraction
    target: Fraction
    weighting: RationalWeighting | None
    dual_cover: CoverWeighting | None


def perfect_fractional_tiling_exists(h: Hypergraph, f: Pattern,
                                     max_columns: int = 200_000) -> PerfectTilingCertificate:
    """True iff the fractional F-tiling optimum reaches n/p, with a certificate.

    A perfect weighting certifies yes; a dual cover of total < n/p certifies no.
    """
    if f.k != h.k:
        raise ArityError(f"pattern uniformity {f.k} != host uniformity {h.k}")
    sets = copies_of(h, f)
    value, prim, dual = _solve_on_sets(sets, h.n, max_columns)
    target = Fraction(h.n, f.p)
    if value == target:
        return PerfectTilingCertificate(True, value, target, prim, None)
    return PerfectTilingCertificate(False, value, target, None, dual)


# ---------------------------------------------------------------------------
# Cover transfer
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoverTransfer:
    """Result of pushing a copy-hypergraph cover into the link of its d lightest vertices."""

    link_set: tuple[int, ...]                 # L: the d vertices of smallest weight
    weights: Mapping[int, Fraction]           # omega' on V \ L
    total: Fraction
    base_weight: Fraction                     # x: the (averaged) minimum weight


def cover_transfer(h: Hypergraph, k: int, b: int, d: int,
                   omega: Mapping[int, Fraction]) -> CoverTransfer:
    """Average the d smallest weights, pick those vertices as L, shift-rescale.

    The input is a fractional cover omega of the copy hypergraph H' of
    Y_{k,b}-copies in H with total below n/(2k-b).  The map
    omega' = (omega - x) / (1 - (2k-b) x), with x the common smallest weight,
    zeroes L and restricts to a fractional cover of the link of L in the
    threshold hypergraph of omega, with total still below n/(2k-b).

    Ties at the d-th smallest weight break toward lower vertex index.
    """
    if not (0 < b < k):
        raise ValueError(f"need 0 < b < k, got b={b}, k={k}")
    if not (1 <= d < b):
        raise ValueError(f"need 1 <= d < b, got d={d}")
    p = 2 * k - b
    n = h.n
    w = {v: Fraction(omega.get(v, 0)) for v in range(n)}
    if any(x < 0 for x in w.values()):
        raise ValueError("cover weights must be nonnegative")
    total = sum(w.values(), Fraction(0))
    if total >= Fraction(n, p):
        raise ValueError(f"total weight {total} is not below n/(2k-b) = {Fraction(n, p)}")

    order = sorted(range(n), key=lambda v: (w[v], v))
    l_set = tuple(sorted(order[:d]))
    avg = sum(w[v] for v in l_set) / d
    for v in l_set:
        w[v] = avg
    x = avg
    # total < n/p forces min <= mean < 1/p
    assert x < Fraction(1, p), "averaged minimum must stay below 1/(2k-b)"
    denom = 1 - p * x
    assert denom > 0
    wp = {v: (w[v] - x) / denom for v in range(n) if v not in l_set}
    return CoverTransfer(l_set, wp, sum(wp.values(), Fraction(0)), x)


def threshold_link_edges(h: Hypergraph, k: int, b: int,
                         omega: Mapping[int, Fraction],
                         l_set: Iterable[int]):
    """Lazily yield the edges of the link of L in the threshold hypergraph of omega.

    The threshold hypergraph holds every (2k-b)-set whose omega-sum is >= 1;
    its link at L consists of the (2k-b-d)-sets S of V \\ L with
    omega(S) + omega(L) >= 1.  Materialized edge by edge: the full set system
    can be large even at desk scale.
    """
    p = 2 * k - b
    lv = vset(l_set, h.n)
    l_weight = sum(Fraction(omega.get(v, 0)) for v in lv)
    rest = [v for v in range(h.n) if v not in set(lv)]
    for s in itertools.combinations(rest, p - len(lv)):
        if sum(Fraction(omega.get(v, 0)) for v in s) + l_weight >= 1:
            yield s


def verify_transfer_cover(h: Hypergraph, k: int, b: int,
                          omega: Mapping[int, Fraction],
                          transfer: CoverTransfer) -> int:
    """Per-edge check that the transferred weights cover the threshold link of L.

    omega must be the input cover with the d smallest weights already averaged
    (the transfer result's base_weight makes that reconstructible: pass the
    original omega; averaging is re-applied here).  Returns the number of link
    edges checked; raises AssertionError on the first uncovered edge.
    """
    w = {v: Fraction(omega.get(v, 0)) for v in range(h.n)}
    for v in transfer.link_set:
        w[v] = transfer.base_weight
    checked = 0
    for s in threshold_link_edges(h, k, b, w, transfer.link_set):
        load = sum(transfer.weights[v] for v in s)
        if load < 1:
            raise AssertionError(f"link edge {s} uncovered: load {load}")
        checked += 1
    return checked
