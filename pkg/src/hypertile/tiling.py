"""Exact maximum-tiling solvers and the tiling-context derived graphs.

The solvers are exact: a memoized search over vertex-availability bitmasks
branches on the lowest undecided vertex (use a placement through it, or leave
it uncovered forever).  The memo makes the search a dynamic program on
subsets, so the reported optimum carries an exhaustion certificate and is
deterministic regardless of call order.

Reported tilings are canonical: maximize covered vertices, then the number of
pattern (non-edge) placements, then the lexicographically smallest sorted
placement-image list.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import ArityError, Hypergraph, Pattern, spanning_witness
from .constructions import y_pattern


class GuardError(RuntimeError):
    """Instance exceeds the desk-scale guard; pass an explicit override."""


@dataclass(frozen=True)
class Placement:
    """One tile: a pattern placed on an image vertex set, with witness edges."""

    kind: str                     # "Y" or "E" for mixed tilings; pattern label otherwise
    image: tuple[int, ...]
    edge_witness: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class TilingReport:
    placements: tuple[Placement, ...]
    m1: int                        # pattern (Y) placements
    m2: int                        # single-edge placements
    covered: int
    uncovered: tuple[int, ...]
    nodes_expanded: int
    optimal: bool

    @property
    def size(self) -> int:
        return len(self.placements)


def _check_disjoint_witnessed(h: Hypergraph, placements: Sequence[Placement]):
    seen: set[int] = set()
    for p in placements:
        s = set(p.image)
        if seen & s:
            raise ValueError(f"placements overlap at {sorted(seen & s)}")
        seen |= s
        for e in p.edge_witness:
            if not h.has_edge(e):
                raise ValueError(f"witness edge {e} not in host")
            if not s.issuperset(e):
                raise ValueError(f"witness edge {e} leaves image {p.image}")


# ---------------------------------------------------------------------------
# Exact packing engine
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Tile:
    mask: int
    image: tuple[int, ...]
    kind: str
    weight: tuple[int, int]       # objective contribution: (covered, pattern-count)


class _PackingSolver:
    """Lexicographic (covered, patterns) maximizer over disjoint tiles."""

    def __init__(self, n: int, tiles: Sequence[_Tile]):
        self.n = n
        by_min: list[list[_Tile]] = [[] for _ in range(n)]
        for t in sorted(tiles, key=lambda t: t.image):
            by_min[t.image[0]].append(t)
        self.by_min = by_min
        self.memo: dict[int, tuple[int, int]] = {}
        self.nodes = 0

    def value(self, avail: int) -> tuple[int, int]:
        """Best (covered, patterns) achievable inside the avail mask."""
        if avail == 0:
            return (0, 0)
        cached = self.memo.get(avail)
        if cached is not None:
            return cached
        self.nodes += 1
        v = (avail & -avail).bit_length() - 1
        rest = avail & ~(1 << v)
        best = self.value(rest)  # v stays uncovered
        for t in self.by_min[v]:
            if t.mask & avail == t.mask:
                sub = self.value(avail & ~t.mask)
                cand = (t.weight[0] + sub[0], t.weight[1] + sub[1])
                if cand > best:
                    best = cand
        self.memo[avail] = best
        return best

    def reconstruct(self, avail: int) -> list[_Tile]:
        """Canonical optimal tile list: image-lex greedy along the DP."""
        out: list[_Tile] = []
        target = self.value(avail)
        while avail and target != (0, 0):
            v = (avail & -avail).bit_length() - 1
            chosen = None
            for t in self.by_min[v]:
                if t.mask & avail == t.mask:
                    sub = self.value(avail & ~t.mask)
                    if (t.weight[0] + sub[0], t.weight[1] + sub[1]) == target:
                        chosen = t
                        break
            if chosen is None:
                avail &= ~(1 << v)       # v uncovered in every optimum from here
                continue
            out.append(chosen)
            avail &= ~chosen.mask
            target = (target[0] - chosen.weight[0], target[1] - chosen.weight[1])
        return out


def _solve(h: Hypergraph, tiles: list[_Tile], max_n: int, override: bool) -> TilingReport:
    if h.n > max_n and not override:
        raise GuardError(f"n={h.n} exceeds guard {max_n}; pass override to force")
    solver = _PackingSolver(h.n, tiles)
    full = (1 << h.n) - 1
    covered, m1 = solver.value(full)
    chosen = solver.reconstruct(full)
    placements = tuple(
        Placement(t.kind, t.image,
                  spanning_witness(h, _pattern_for(h, t.kind), t.image)
                  if t.kind != "E" else (t.image,))
        for t in chosen
    )
    cov_set = set(itertools.chain.from_iterable(t.image for t in chosen))
    report = TilingReport(
        placements=placements,
        m1=sum(1 for t in chosen if t.kind != "E"),
        m2=sum(1 for t in chosen if t.kind == "E"),
        covered=covered,
        uncovered=tuple(v for v in range(h.n) if v not in cov_set),
        nodes_expanded=solver.nodes,
        optimal=True,
    )
    _check_disjoint_witnessed(h, report.placements)
    assert report.covered + len(report.uncovered) == h.n
    return report


_PATTERNS: dict[str, Pattern] = {}


def _pattern_for(h: Hypergraph, kind: str) -> Pattern:
    if kind == "E":
        return Pattern.single_edge(h.k)
    return _PATTERNS[kind]


def _register(f: Pattern) -> str:
    kind = f.label or f"pat:{f.k},{f.p},{len(f.edges)}"
    _PATTERNS[kind] = f
    return kind


def max_matching(h: Hypergraph, max_n: int = 30, override: bool = False) -> TilingReport:
    """Maximum matching (tiling by single edges), exact."""
    tiles = [_Tile(_edge_mask(e), e, "E", (h.k, 0)) for e in h.edges]
    return _solve(h, tiles, max_n, override)


def _edge_mask(e: Iterable[int]) -> int:
    m = 0
    for v in e:
        m |= 1 << v
    return m


def max_f_tiling(h: Hypergraph, f: Pattern, max_n: int = 30, override: bool = False) -> TilingReport:
    """Maximum F-tiling size, exact, with optimality certificate."""
    if f.k != h.k:
        raise ArityError(f"pattern uniformity {f.k} != host uniformity {h.k}")
    from .core import copies_of
    kind = _register(f)
    tiles = [_Tile(_edge_mask(img), img, kind, (f.p, 1)) for img in copies_of(h, f)]
    report = _solve(h, tiles, max_n, override)
    # for a pure F-tiling the size is m1; covered = p*m1
    return report


def y_copies(h: Hypergraph) -> list[tuple[int, ...]]:
    """4-sets of a 3-graph spanning two edges (any two triples of a 4-set share 2 vertices)."""
    if h.k != 3:
        raise ArityError("y_copies requires a 3-uniform host")
    out = []
    for quad in itertools.combinations(range(h.n), 4):
        cnt = sum(1 for tri in itertools.combinations(quad, 3) if tri in h.edge_set)
        if cnt >= 2:
            out.append(quad)
    return out


def max_ye_tiling(h: Hypergraph, max_n: int = 24, override: bool = False) -> TilingReport:
    """Maximum {Y,E}-tiling of a 3-graph: maximize covered vertices 4*m1 + 3*m2.

    Ties break toward more Y-copies, then the lexicographically smallest
    placement list.  Guarded at n <= 24 by default.
    """
    if h.k != 3:
        raise ArityError("mixed {Y,E}-tilings are defined for 3-uniform hosts")
    kind = _register(y_pattern(3, 2))
    tiles = [_Tile(_edge_mask(img), img, kind, (4, 1)) for img in y_copies(h)]
    tiles += [_Tile(_edge_mask(e), e, "E", (3, 0)) for e in h.edges]
    report = _solve(h, tiles, max_n, override)
    return report


# ---------------------------------------------------------------------------
# Derived graphs and edge classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DerivedGraph:
    """Multipartite 2-graph on tiling members: cross pairs with many uncovered extensions.

    A pair {i, j} with i, j in different member images is an edge iff at least
    `threshold` uncovered vertices u give an edge u i j of the host.
    """

    parts: tuple[tuple[int, ...], ...]
    kinds: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]
    threshold: int

    def part_of(self, v: int) -> int:
        for i, part in enumerate(self.parts):
            if v in part:
                return i
        raise KeyError(v)

    def label(self, e: tuple[int, int]) -> str:
        a, b = sorted(self.kinds[self.part_of(e[0])] + self.kinds[self.part_of(e[1])])
        return a + b

    def pair_edges(self, i: int, j: int) -> list[tuple[int, int]]:
        pi, pj = set(self.parts[i]), set(self.parts[j])
        return [e for e in self.edges if (e[0] in pi and e[1] in pj) or (e[0] in pj and e[1] in pi)]

    def count(self) -> int:
        return len(self.edges)


def derived_link_graph(h: Hypergraph, t: TilingReport, members: Sequence[int],
                       threshold: int = 8) -> DerivedGraph:
    """G_T restricted to the given members (a pair or triple of indices into t.placements)."""
    if threshold < 1:
        raise ValueError("threshold must be >= 1")
    if len(set(members)) != len(members):
        raise ValueError("members must be distinct")
    parts = tuple(t.placements[i].image for i in members)
    flat = list(itertools.chain.from_iterable(parts))
    if len(set(flat)) != len(flat):
        raise ValueError("member images overlap")
    kinds = tuple("E" if t.placements[i].kind == "E" else "Y" for i in members)
    u_set = t.uncovered
    edges = []
    for (pi, a), (pj, b) in itertools.combinations(
            ((i, v) for i, part in enumerate(parts) for v in part), 2):
        if pi == pj:
            continue
        lo, hi = min(a, b), max(a, b)
        cnt = 0
        for u in u_set:
            if u != lo and u != hi and tuple(sorted((u, lo, hi))) in h.edge_set:
                cnt += 1
                if cnt >= threshold:
                    break
        if cnt >= threshold:
            edges.append((lo, hi))
    return DerivedGraph(parts, kinds, tuple(sorted(edges)), threshold)


@dataclass(frozen=True)
class EdgeClassCounts:
    """Exact per-class edge counts of a 3-graph relative to a {Y,E}-tiling."""

    d1: int
    d2: int
    d3: int
    yyu: int
    eyu: int
    eeu: int
    eee: int
    eey: int
    eyy: int
    yyy: int
    d2_same: int      # (2,1) edges whose covered pair lies inside one member
    d3_rem: int       # (3,0) edges with at least two vertices in one member

    @property
    def remainder(self) -> int:
        return 2 * (self.d2_same + self.d3_rem)

    def ledger(self) -> tuple[int, int, int, int]:
        y1 = 2 * self.eee + self.eeu
        y2 = 2 * self.eey + self.eeu + self.eyu
        y3 = 2 * self.eyy + self.eyu
        y4 = 2 * self.yyy + 2 * self.yyu
        return (y1, y2, y3, y4)


def classify_edges(h: Hypergraph, t: TilingReport) -> EdgeClassCounts:
    """Count every edge class: split by |e ∩ U|, then by the member types met."""
    if h.k != 3:
        raise ArityError("edge classification is defined for 3-uniform hosts")
    member_of: dict[int, int] = {}
    kind_of: dict[int, str] = {}
    for idx, p in enumerate(t.placements):
        for v in p.image:
            member_of[v] = idx
            kind_of[v] = "E" if p.kind == "E" else "Y"
    u_set = set(t.uncovered)
    c = dict(d1=0, d2=0, d3=0, yyu=0, eyu=0, eeu=0,
             eee=0, eey=0, eyy=0, yyy=0, d2_same=0, d3_rem=0)
    for e in h.edges:
        inside = [v for v in e if v not in u_set]
        j = len(e) - len(inside)
        if j == 3:
            raise ValueError(f"edge {e} lies inside U: tiling is not maximal")
        if j == 2:
            c["d1"] += 1
        elif j == 1:
            c["d2"] += 1
            m1, m2 = member_of[inside[0]], member_of[inside[1]]
            if m1 == m2:
                c["d2_same"] += 1
            else:
                key = "".join(sorted(kind_of[v] for v in inside)).lower() + "u"
                c[key] += 1
        else:
            c["d3"] += 1
            ms = {member_of[v] for v in inside}
            if len(ms) < 3:
                c["d3_rem"] += 1
            else:
                key = "".join(sorted(kind_of[v] for v in inside)).lower()
                c[key] += 1
    counts = EdgeClassCounts(**c)
    assert counts.d1 + counts.d2 + counts.d3 == len(h.edges)
    return counts


# ---------------------------------------------------------------------------
# Triple-bound audit
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TripleRecord:
    members: tuple[int, int, int]
    triple_type: str              # EEE / EEY / EYY / YYY (sorted kinds)
    g_edges: int
    case: str
    q_edges: int
    cap: int
    ok: bool


@dataclass(frozen=True)
class TripleAudit:
    records: tuple[TripleRecord, ...]
    violations: tuple[TripleRecord, ...]


def _transversal_count(h: Hypergraph, parts: Sequence[tuple[int, ...]]) -> int:
    cnt = 0
    for combo in itertools.product(*parts):
        if tuple(sorted(combo)) in h.edge_set:
            cnt += 1
    return cnt


def _has_matching(edges: Sequence[tuple[int, int]], size: int) -> bool:
    """True iff the 2-graph given by `edges` has `size` pairwise disjoint edges."""
    if size == 0:
        return True

    def rec(start: int, used: set[int], need: int) -> bool:
        if need == 0:
            return True
        for i in range(start, len(edges)):
            a, b = edges[i]
            if a not in used and b not in used:
                if rec(i + 1, used | {a, b}, need - 1):
                    return True
        return False

    return rec(0, set(), size)


def _classify_triple(kinds: tuple[str, str, str], g: DerivedGraph) -> tuple[str, int]:
    """Return (case name, e(Q_T) cap) from the member types and G_T structure."""
    ttype = "".join(sorted(kinds))
    eg = g.count()
    ey_edges = [e for e in g.edges if g.label(e) == "EY"]
    if ttype == "EEE":
        if eg == 0:
            return "no-derived-edges", 27
        if not _has_matching(g.edges, 2):
            return "star", 21
        return "two-matching", 19
    if ttype == "EEY":
        if not ey_edges:
            return "no-ey-edges", 36
        if not _has_matching(ey_edges, 2):
            return "ey-star", 30
        return "ey-two-matching", 24
    if ttype == "EYY":
        if eg == 0:
            return "no-derived-edges", 48
        if len(ey_edges) <= 6:
            return "few-ey-edges", 39
        if len(ey_edges) <= 8:
            return "many-ey-edges", 36
        return "ey-star-bound-violated", -1
    # YYY
    if eg == 0:
        return "no-derived-edges", 64
    if eg <= 16:
        return "sparse", 52
    if eg == 17:
        return "seventeen", 48
    if eg <= 20:
        return "cover-three", 40
    if eg == 21:
        return "maximal", 37
    return "edge-cap-violated", -1


def audit_triple_bounds(h: Hypergraph, t: TilingReport, threshold: int = 8) -> TripleAudit:
    """Check, for every member triple of a maximum {Y,E}-tiling, the e(Q_T) cap
    matching the triple's derived-graph case; failures would contradict maximality."""
    if not t.optimal:
        raise ValueError("triple bounds require a solver-certified maximum tiling")
    records = []
    for trip in itertools.combinations(range(len(t.placements)), 3):
        g = derived_link_graph(h, t, trip, threshold)
        parts = tuple(t.placements[i].image for i in trip)
        kinds = tuple("E" if t.placements[i].kind == "E" else "Y" for i in trip)
        case, cap = _classify_triple(kinds, g)  # type: ignore[arg-type]
        q = _transversal_count(h, parts)
        ok = cap >= 0 and q <= cap
        records.append(TripleRecord(trip, "".join(sorted(kinds)), g.count(), case, q, cap, ok))
    recs = tuple(records)
    return TripleAudit(recs, tuple(r for r in recs if not r.ok))
