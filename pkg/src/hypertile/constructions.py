"""Extremal constructions and exact threshold formulas.

All threshold values are exact rationals (`fractions.Fraction`); nothing here
is ever compared by float tolerance.  Distinguished vertex sets (the covered
set of the covering construction, the blocking set of the space barrier) are
placed on the lowest indices so output is canonical.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, ceil

from .core import Hypergraph, Pattern


class ParameterError(ValueError):
    """Construction parameters outside their valid range."""


class OutOfRangeError(ValueError):
    """Threshold query outside the hypotheses of every known formula."""


def y_pattern(k: int, b: int) -> Pattern:
    """The k-graph with exactly two edges sharing exactly b vertices (2k-b vertices)."""
    if not 0 <= b < k:
        raise ParameterError(f"need 0 <= b < k, got b={b}, k={k}")
    e1 = tuple(range(k))
    e2 = tuple(range(k - b, 2 * k - b))
    return Pattern(k, 2 * k - b, tuple(sorted((e1, e2))), label=f"y:{k},{b}")


def covering_construction(n: int, k: int, s: int) -> Hypergraph:
    """All k-sets meeting the fixed s-set {0..s-1}; e = C(n,k) - C(n-s,k)."""
    if not (0 <= s <= n and 1 <= k <= n):
        raise ParameterError(f"need 0 <= s <= n and k <= n, got n={n}, k={k}, s={s}")
    edges = [e for e in itertools.combinations(range(n), k) if e[0] < s]
    return Hypergraph(k, n, tuple(edges))


def clique_construction(k: int, s: int) -> Hypergraph:
    """Complete k-graph on k(s+1)-1 vertices (largest host with no (s+1)-matching)."""
    if k < 2 or s < 0:
        raise ParameterError(f"need k >= 2 and s >= 0, got k={k}, s={s}")
    n = k * (s + 1) - 1
    return Hypergraph(k, n, tuple(itertools.combinations(range(n), k)))


@dataclass(frozen=True)
class SpaceBarrier:
    """Space-barrier host: every edge meets the blocking set A = {0..|A|-1}."""

    hypergraph: Hypergraph
    barrier: tuple[int, ...]
    ell: int

    @property
    def barrier_size(self) -> int:
        return len(self.barrier)


def space_barrier(n: int, k: int, ell: int) -> SpaceBarrier:
    """Host with no Hamilton ell-cycle: edges are the k-sets meeting A, |A| = ceil(t/2)-1, t = n/(k-ell)."""
    if not 1 <= ell < k:
        raise ParameterError(f"need 1 <= ell < k, got ell={ell}, k={k}")
    if n % (k - ell) != 0:
        raise ParameterError(f"(k-ell)={k - ell} must divide n={n}")
    t = n // (k - ell)
    a = ceil(t / 2) - 1
    edges = [e for e in itertools.combinations(range(n), k) if e[0] < a]
    return SpaceBarrier(Hypergraph(k, n, tuple(edges)), tuple(range(a)), ell)


# ---------------------------------------------------------------------------
# Dirac-type thresholds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ThresholdQuery:
    k: int
    d: int
    ell: int
    family: str = "auto"


@dataclass(frozen=True)
class ThresholdResult:
    value: Fraction
    formula_id: str


def _check(cond: bool, hypothesis: str):
    if not cond:
        raise OutOfRangeError(f"violated hypothesis: {hypothesis}")


def dirac_threshold(q: ThresholdQuery) -> ThresholdResult:
    """Asymptotic minimum d-degree density forcing a Hamilton ell-cycle.

    Families:
      codegree        d = k-1, any 1 <= ell < k
      subcodegree     d = k-2, ell < k/2
      low-degree      k-ell <= d < 2*ell <= k-1 under the width hypothesis
                      2k-2l >= (2(2k-2l-d)^2+1)(k-d-1)+1, or the odd-k case
                      l=(k-1)/2, d=k-3, k >= 7
      tiling          conjectured threshold density for near-perfect
                      Y_{k,2l}-tilings, k-ell <= d <= k-1, ell < k/2
    family="auto" picks the first applicable family in the order above.
    """
    k, d, ell = q.k, q.d, q.ell
    _check(1 <= ell < k, "1 <= ell < k")
    _check(0 <= d <= k - 1, "0 <= d <= k-1")
    fam = q.family

    def codegree() -> ThresholdResult:
        _check(d == k - 1, "codegree family needs d = k-1")
        if k % (k - ell) == 0:
            return ThresholdResult(Fraction(1, 2), "codegree-half")
        denom = ceil(Fraction(k, k - ell)) * (k - ell)
        return ThresholdResult(Fraction(1, denom), "codegree-reciprocal")

    def subcodegree() -> ThresholdResult:
        _check(d == k - 2, "subcodegree family needs d = k-2")
        _check(2 * ell < k, "subcodegree family needs ell < k/2")
        return ThresholdResult(1 - (1 - Fraction(1, 2 * (k - ell))) ** 2, "one-minus-square")

    def low_degree() -> ThresholdResult:
        _check(2 * ell < k, "low-degree family needs ell < k/2")
        wide = (k - ell <= d < 2 * ell <= k - 1
                and 2 * k - 2 * ell >= (2 * (2 * k - 2 * ell - d) ** 2 + 1) * (k - d - 1) + 1)
        odd = (k % 2 == 1 and k >= 7 and 2 * ell == k - 1 and d == k - 3)
        _check(wide or odd,
               "k-ell <= d < 2ell with 2k-2l >= (2(2k-2l-d)^2+1)(k-d-1)+1, "
               "or odd k >= 7 with ell=(k-1)/2 and d=k-3")
        return ThresholdResult(1 - (1 - Fraction(1, 2 * (k - ell))) ** (k - d), "one-minus-power")

    def tiling() -> ThresholdResult:
        _check(2 * ell < k, "tiling family needs ell < k/2")
        _check(k - ell <= d <= k - 1, "tiling family needs k-ell <= d <= k-1")
        return ThresholdResult(1 - (1 - Fraction(1, 2 * (k - ell))) ** (k - d),
                               "one-minus-power-conjectured")

    table = {"codegree": codegree, "subcodegree": subcodegree,
             "low-degree": low_degree, "tiling": tiling}
    if fam in table:
        return table[fam]()
    if fam != "auto":
        raise OutOfRangeError(f"unknown family {fam!r}; choose from {sorted(table)} or 'auto'")
    last_err: OutOfRangeError | None = None
    for name in ("codegree", "subcodegree", "low-degree", "tiling"):
        try:
            return table[name]()
        except OutOfRangeError as err:
            last_err = err
    raise last_err  # type: ignore[misc]


def y_tiling_edge_threshold(n: int, k: int, b: int, s: int, force: bool = False) -> int:
    """Edge count guaranteeing a Y_{k,b}-tiling of size s (small-s induction regime).

    Value: C(n,k) - C(n-s+1,k) + C(n-1,k-1) + C(n-1,k-2)(2k-b)s, valid for
    n >= (2(2k-b)^2+1)(k-1)s + s.  Below that range the value is still
    computable with force=True but carries no guarantee.
    """
    if not (0 < b < k) or s < 0 or n < k:
        raise ParameterError(f"need 0 < b < k <= n and s >= 0, got n={n}, k={k}, b={b}, s={s}")
    n_min = (2 * (2 * k - b) ** 2 + 1) * (k - 1) * s + s
    if n < n_min and not force:
        raise OutOfRangeError(f"n={n} below validity floor {n_min}; pass force=True to evaluate anyway")
    return comb(n, k) - comb(n - s + 1, k) + comb(n - 1, k - 1) + comb(n - 1, k - 2) * (2 * k - b) * s


def extremal_bound(n: int, k: int, s: int, p: int | None = None) -> int:
    """max{C(p(s+1)-1, k), C(n,k) - C(n-s,k)}: the two-construction edge bound.

    p is the tile order: p=k gives the matching bound, p=2k-b the Y_{k,b} bound.
    """
    if p is None:
        p = k
    if p < k or s < 0 or n < 0:
        raise ParameterError(f"need p >= k, s >= 0, n >= 0, got n={n}, k={k}, s={s}, p={p}")
    return max(comb(p * (s + 1) - 1, k), comb(n, k) - comb(n - s, k))


def construction_meta(kind: str, h: Hypergraph, distinguished: tuple[int, ...],
                      **params) -> dict:
    """JSON side record emitted next to .hg output."""
    return {
        "construction": kind,
        "parameters": params,
        "distinguished_set": list(distinguished),
        "edge_count": len(h.edges),
    }
