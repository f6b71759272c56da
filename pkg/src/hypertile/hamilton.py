"""l-paths, l-cycles, exact Hamilton search, and a desk-scale absorbing pipeline.

An l-path is an ordered vertex sequence whose edges are the k-windows taken
at stride k-l; consecutive edges share exactly l vertices and the first/last
l vertices are the ordered ends.  An l-cycle is the cyclic analogue; a
Hamilton l-cycle spans the host, which forces (k-l) | n and gives exactly
n/(k-l) edges.

The asymptotic connecting/covering machinery behind these objects is replaced
here by exhaustive bounded search (short_connect), greedy covering, and
explicit absorber gadgets, all seed-deterministic.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .core import Hypergraph
from .constructions import ParameterError


@dataclass(frozen=True)
class EllPath:
    k: int
    ell: int
    vertices: tuple[int, ...]

    @property
    def num_edges(self) -> int:
        return (len(self.vertices) - self.ell) // (self.k - self.ell)

    def windows(self) -> list[tuple[int, ...]]:
        k, l, vs = self.k, self.ell, self.vertices
        return [tuple(sorted(vs[i * (k - l): i * (k - l) + k])) for i in range(self.num_edges)]

    @property
    def beg(self) -> tuple[int, ...]:
        return self.vertices[: self.ell]

    @property
    def end(self) -> tuple[int, ...]:
        return self.vertices[-self.ell:]

    def reversed(self) -> "EllPath":
        return EllPath(self.k, self.ell, tuple(reversed(self.vertices)))


@dataclass(frozen=True)
class EllCycle:
    k: int
    ell: int
    vertices: tuple[int, ...]

    @property
    def num_edges(self) -> int:
        return len(self.vertices) // (self.k - self.ell)

    def windows(self) -> list[tuple[int, ...]]:
        k, l, vs = self.k, self.ell, self.vertices
        n = len(vs)
        return [tuple(sorted(vs[(i * (k - l) + j) % n] for j in range(k)))
                for i in range(self.num_edges)]


def validate_ell_path(h: Hypergraph, p: EllPath) -> list[str]:
    """Violation list (empty iff p is a valid l-path of h)."""
    out = []
    k, l, vs = p.k, p.ell, p.vertices
    if k != h.k:
        out.append(f"uniformity {k} != host {h.k}")
        return out
    if not 1 <= l < k:
        out.append(f"overlap ell={l} outside 1..k-1")
        return out
    if len(set(vs)) != len(vs):
        out.append("repeated vertex")
    if any(v < 0 or v >= h.n for v in vs):
        out.append("vertex out of range")
    if (len(vs) - l) % (k - l) != 0 or len(vs) < k:
        out.append(f"order {len(vs)} != ell + r(k-ell) for r >= 1")
        return out
    for i, w in enumerate(p.windows()):
        if w not in h.edge_set:
            out.append(f"window {i} = {w} not a host edge")
    return out


def validate_ell_cycle(h: Hypergraph, c: EllCycle) -> list[str]:
    """Violation list (empty iff c is a valid l-cycle of h)."""
    out = []
    k, l, vs = c.k, c.ell, c.vertices
    if k != h.k:
        out.append(f"uniformity {k} != host {h.k}")
        return out
    if not 1 <= l < k:
        out.append(f"overlap ell={l} outside 1..k-1")
        return out
    if len(vs) % (k - l) != 0 or len(vs) < k:
        out.append(f"order {len(vs)} not a positive multiple of k-ell={k - l}")
        return out
    if len(set(vs)) != len(vs):
        out.append("repeated vertex")
    if any(v < 0 or v >= h.n for v in vs):
        out.append("vertex out of range")
    if out:
        return out
    windows = c.windows()
    if len(windows) != len(vs) // (k - l):
        out.append("edge count != n/(k-ell)")
    for i, w in enumerate(windows):
        if w not in h.edge_set:
            out.append(f"window {i} = {w} not a host edge")
    if 2 * l < k:
        per_vertex = [0] * h.n
        for w in windows:
            for v in w:
                per_vertex[v] += 1
        if any(cnt > 2 for cnt in per_vertex):
            out.append("a vertex lies in more than two edges")
    return out


# ---------------------------------------------------------------------------
# Exact Hamilton search
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HamiltonSearch:
    cycle: EllCycle | None
    nodes: int
    exhaustive: bool

    @property
    def found(self) -> bool:
        return self.cycle is not None


def exact_hamilton_ell_cycle(h: Hypergraph, ell: int) -> HamiltonSearch:
    """Backtracking search for a Hamilton ell-cycle, or an exhaustion certificate.

    Cyclic sequences are canonicalized by requiring position 0 to carry the
    smallest vertex among the window-start positions, so each cycle is
    explored once per direction.
    """
    k, n = h.k, h.n
    if not 1 <= ell < k:
        raise ParameterError(f"need 1 <= ell < k, got ell={ell}")
    if n % (k - ell) != 0 or n < k:
        raise ParameterError(f"(k-ell)={k - ell} must divide n={n} and n >= k")
    if any(inc == 0 for inc in h.incidence):
        return HamiltonSearch(None, 0, True)

    stride = k - ell
    r = n // stride
    nodes = 0
    seq: list[int] = [-1] * n
    inc = h.incidence
    edges = h.edges

    def fill_window(i: int, v0: int, used: int):
        """Place window i (positions i*stride .. i*stride+k-1 mod n); yields used-masks."""
        nonlocal nodes
        nodes += 1
        pos = [(i * stride + j) % n for j in range(k)]
        fixed = [seq[p] for p in pos if seq[p] >= 0]
        free_pos = [p for p in pos if seq[p] < 0]
        # candidate edges must contain every already-placed vertex of the window
        if fixed:
            m = inc[fixed[0]]
            for v in fixed[1:]:
                m &= inc[v]
        else:
            m = (1 << len(edges)) - 1
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            e = edges[j]
            new = [v for v in e if not (used >> v) & 1]
            if len(new) != len(free_pos) or len(set(e) - set(new)) != len(fixed):
                continue
            for perm in itertools.permutations(new):
                # canonical: window-start positions never drop below v0
                ok = True
                for p, v in zip(free_pos, perm):
                    if p % stride == 0 and v < v0:
                        ok = False
                        break
                if not ok:
                    continue
                for p, v in zip(free_pos, perm):
                    seq[p] = v
                used2 = used
                for v in perm:
                    used2 |= 1 << v
                yield used2
                for p in free_pos:
                    seq[p] = -1

    def search(i: int, v0: int, used: int) -> bool:
        if i == r:
            return used == (1 << n) - 1
        for used2 in fill_window(i, v0, used):
            if search(i + 1, v0, used2):
                return True
        return False

    for v0 in range(n):
        if n - v0 < r:
            break  # not enough vertices above v0 for the other window starts
        seq[0] = v0
        if search(0, v0, 1 << v0):
            cyc = EllCycle(k, ell, tuple(seq))
            assert not validate_ell_cycle(h, cyc)
            return HamiltonSearch(cyc, nodes, False)
        seq[0] = -1
    return HamiltonSearch(None, nodes, True)


# ---------------------------------------------------------------------------
# Coloring partition and greedy partite path
# ---------------------------------------------------------------------------

def color_partition(p: EllPath, k: int, ell: int) -> list[tuple[int, ...]]:
    """Partition V(P) into k classes, each met exactly once by every edge.

    Requires 2*ell < k and an odd edge count t; the first k-2l classes get t
    vertices each, the remaining 2l classes (t+1)/2 each.  The coloring walks
    the path: the first edge receives colors 0..k-1 in order, after which the
    repeating block (0..k-2l-1, k-2l..k-l-1, 0..k-2l-1, k-l..k-1) colors each
    successive stretch of 2(k-l) vertices.
    """
    if 2 * ell >= k:
        raise ParameterError(f"need ell < k/2, got ell={ell}, k={k}")
    t = p.num_edges
    if t % 2 == 0:
        raise ParameterError(f"edge count t={t} must be odd")
    block = (list(range(0, k - 2 * ell))
             + list(range(k - 2 * ell, k - ell))
             + list(range(0, k - 2 * ell))
             + list(range(k - ell, k)))
    colors = list(range(k))
    while len(colors) < len(p.vertices):
        colors.extend(block)
    colors = colors[: len(p.vertices)]
    classes = [tuple(v for v, c in zip(p.vertices, colors) if c == i) for i in range(k)]
    for w in [p.vertices[i * (k - ell): i * (k - ell) + k] for i in range(t)]:
        met = sorted(colors[p.vertices.index(v)] for v in w)
        assert met == list(range(k)), "an edge misses a class"
    sizes = [len(c) for c in classes]
    assert sizes[: k - 2 * ell] == [t] * (k - 2 * ell)
    assert sizes[k - 2 * ell:] == [(t + 1) // 2] * (2 * ell)
    return classes


class DensityError(ValueError):
    """k-partite host below the required edge density; carries the measured value."""

    def __init__(self, measured: Fraction, required: Fraction):
        super().__init__(f"density {measured} below required {required}")
        self.measured = measured
        self.required = required


def greedy_kpartite_path(h: Hypergraph, parts: Sequence[tuple[int, ...]],
                         ell: int, eps: Fraction) -> EllPath:
    """Greedy l-path in a k-partite host with parts of equal size m.

    Low-degree crossing l-sets are pruned first (every l-set keeps degree 0 or
    at least eps*m^(k-l)/(2*C(k,l))), then the path grows from a lexicographic
    first edge, alternately appending blocks that return the moving end to one
    of the two end-class groups.  Stops at the first odd edge count
    >= ceil(eps*m/2), so the class-incidence partition applies exactly.
    """
    k = h.k
    if 2 * ell >= k:
        raise ParameterError(f"need ell < k/2, got ell={ell}, k={k}")
    if len(parts) != k or len({len(pt) for pt in parts}) != 1:
        raise ParameterError("need k parts of equal size")
    m = len(parts[0])
    part_of = {}
    for i, pt in enumerate(parts):
        for v in pt:
            part_of[v] = i
    for e in h.edges:
        if sorted(part_of[v] for v in e) != list(range(k)):
            raise ParameterError(f"edge {e} is not transversal to the parts")
    eps = Fraction(eps)
    required = eps * m ** k
    if len(h.edges) < required:
        raise DensityError(Fraction(len(h.edges), m ** k), eps)

    cutoff = eps * m ** (k - ell) / (2 * math.comb(k, ell))
    edges = set(h.edges)
    while True:
        counts: dict[tuple[int, ...], int] = {}
        for e in edges:
            for s in itertools.combinations(e, ell):
                counts[s] = counts.get(s, 0) + 1
        bad = {s for s, c in counts.items() if c < cutoff}
        if not bad:
            break
        drop = {e for e in edges if any(s in bad for s in itertools.combinations(e, ell))}
        if not drop:
            break
        edges -= drop
    if not edges:
        raise DensityError(Fraction(0), eps)

    target = math.ceil(eps * m / 2)
    if target % 2 == 0:
        target += 1
    first = min(edges)
    seq = sorted(first, key=lambda v: part_of[v])
    used = set(seq)
    chunks = (list(range(0, k - 2 * ell)) + list(range(k - 2 * ell, k - ell)),
              list(range(0, k - 2 * ell)) + list(range(k - ell, k)))
    t = 1
    while t < target:
        chunk = chunks[(t - 1) % 2]
        tail = tuple(seq[-ell:])
        found = None
        for combo in itertools.product(*[sorted(set(parts[c]) - used) for c in chunk]):
            if len(set(combo)) != len(combo):
                continue
            if tuple(sorted(tail + combo)) in edges:
                found = combo
                break
        if found is None:
            raise RuntimeError(f"greedy extension stalled at t={t} of {target}")
        seq.extend(found)
        used.update(found)
        t += 1
    path = EllPath(k, ell, tuple(seq))
    assert not validate_ell_path(h, path)
    return path


def complete_partite_host(k: int, m: int) -> tuple[Hypergraph, tuple[tuple[int, ...], ...]]:
    parts = tuple(tuple(range(i * m, (i + 1) * m)) for i in range(k))
    edges = [tuple(sorted(c)) for c in itertools.product(*parts)]
    return Hypergraph.from_edges(k, k * m, edges), parts


def random_partite_host(k: int, m: int, p: float, seed
                        ) -> tuple[Hypergraph, tuple[tuple[int, ...], ...]]:
    """Binomial k-partite k-graph with parts of size m (transversal edges only)."""
    rng = random.Random(str(seed))
    parts = tuple(tuple(range(i * m, (i + 1) * m)) for i in range(k))
    edges = [tuple(sorted(c)) for c in itertools.product(*parts) if rng.random() < p]
    return Hypergraph.from_edges(k, k * m, edges), parts


# ---------------------------------------------------------------------------
# Bounded connection search
# ---------------------------------------------------------------------------

def short_connect(h: Hypergraph, s_end: Sequence[int], t_end: Sequence[int],
                  vertex_budget: int, allowed: Iterable[int] | None = None,
                  ell: int | None = None) -> EllPath | None:
    """Shortest l-path with ordered ends S and T within the vertex budget.

    Interior vertices are drawn from `allowed` (default: all other vertices).
    Returns None if no connecting path of order <= vertex_budget exists; the
    search is exhaustive within the budget.
    """
    k = h.k
    l = len(s_end) if ell is None else ell
    if len(s_end) != l or len(t_end) != l:
        raise ParameterError("end arities differ from ell")
    if set(s_end) & set(t_end):
        raise ParameterError("ends overlap")
    if vertex_budget < 2 * l:
        return None
    pool = set(range(h.n)) if allowed is None else set(allowed)
    pool -= set(s_end) | set(t_end)

    r_min = max(1, -(-l // (k - l)))
    r = r_min
    while l + r * (k - l) <= vertex_budget:
        order = l + r * (k - l)
        seq = [-1] * order
        seq[:l] = list(s_end)
        seq[order - l:] = list(t_end)
        if _connect_dfs(h, seq, k, l, 0, sorted(pool), set(s_end) | set(t_end)):
            path = EllPath(k, l, tuple(seq))
            if not validate_ell_path(h, path):
                return path
        r += 1
    return None


def _connect_dfs(h: Hypergraph, seq: list[int], k: int, l: int,
                 win: int, pool: list[int], used: set[int]) -> bool:
    r = (len(seq) - l) // (k - l)
    if win == r:
        return True
    lo = win * (k - l)
    free = [p for p in range(lo, lo + k) if seq[p] < 0]
    if not free:
        if tuple(sorted(seq[lo: lo + k])) in h.edge_set:
            return _connect_dfs(h, seq, k, l, win + 1, pool, used)
        return False
    for combo in itertools.permutations([v for v in pool if v not in used], len(free)):
        for p, v in zip(free, combo):
            seq[p] = v
        if tuple(sorted(seq[lo: lo + k])) in h.edge_set:
            used2 = used | set(combo)
            if _connect_dfs(h, seq, k, l, win + 1, pool, used2):
                return True
        for p in free:
            seq[p] = -1
    return False


# ---------------------------------------------------------------------------
# Absorber gadgets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AbsorberGadget:
    """A k-partite absorber: paths P (on X) and Q (on S u X) share ordered ends.

    The six defining properties: order at most k^4; V = S u X with
    |S| = k - ell; P spans X; Q spans S u X with the same ordered ends; no
    edge holds two S-vertices; no vertex class holds two S-vertices.
    """

    k: int
    ell: int
    s_vertices: tuple[int, ...]
    x_vertices: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, ...], ...]
    p_path: EllPath
    q_path: EllPath

    @property
    def order(self) -> int:
        return len(self.s_vertices) + len(self.x_vertices)

    @property
    def absorbing_order(self) -> int:
        """b(k,ell): the order of the inner path P."""
        return len(self.x_vertices)


def verify_gadget_properties(g: AbsorberGadget) -> list[str]:
    """Independent checker for the six absorber properties (search-agnostic)."""
    out = []
    k, l = g.k, g.ell
    s, x = set(g.s_vertices), set(g.x_vertices)
    if g.order > k ** 4:
        out.append(f"(1) order {g.order} exceeds k^4 = {k ** 4}")
    if s & x or len(g.s_vertices) != k - l:
        out.append("(2) S and X must be disjoint with |S| = k - ell")
    host = Hypergraph.from_edges(k, g.order, g.edges)
    if set(g.p_path.vertices) != x or validate_ell_path(host, g.p_path):
        out.append("(3) P must be an ell-path spanning X")
    if set(g.q_path.vertices) != s | x or validate_ell_path(host, g.q_path):
        out.append("(4) Q must be an ell-path spanning S u X")
    if g.q_path.beg != g.p_path.beg or g.q_path.end != g.p_path.end:
        out.append("(4) Q must share P's ordered ends")
    for e in g.edges:
        if len(s.intersection(e)) > 1:
            out.append(f"(5) edge {e} holds two S-vertices")
            break
    flat = [v for cls in g.classes for v in cls]
    if sorted(flat) != sorted(s | x) or len(g.classes) != k:
        out.append("(6) classes must partition V into k parts")
    else:
        cls_of = {v: i for i, cls in enumerate(g.classes) for v in cls}
        for e in g.edges:
            if sorted(cls_of[v] for v in e) != list(range(k)):
                out.append(f"(6) edge {e} is not transversal to the classes")
                break
        for cls in g.classes:
            if len(s.intersection(cls)) > 1:
                out.append(f"(6) class {cls} holds two S-vertices")
                break
    return out


def _rainbow_classes(order: int, edges: Sequence[tuple[int, ...]], k: int,
                     s_set: set[int]) -> tuple[tuple[int, ...], ...] | None:
    """k-coloring with every edge transversal and no color on two S-vertices."""
    color = [-1] * order
    degree_order = sorted(range(order), key=lambda v: -sum(v in e for e in edges))

    def ok(v: int, c: int) -> bool:
        for e in edges:
            if v in e and any(u != v and color[u] == c for u in e):
                return False
        if v in s_set and any(u != v and u in s_set and color[u] == c for u in range(order)):
            return False
        return True

    def rec(i: int) -> bool:
        if i == order:
            return True
        v = degree_order[i]
        for c in range(k):
            if ok(v, c):
                color[v] = c
                if rec(i + 1):
                    return True
                color[v] = -1
        return False

    if not rec(0):
        return None
    return tuple(tuple(v for v in range(order) if color[v] == c) for c in range(k))


def search_absorber_gadget(k: int, ell: int, size_cap: int) -> AbsorberGadget | None:
    """Incremental search for an absorber gadget, smallest order first.

    P is fixed as the identity sequence on X; Q ranges over all sequences on
    S u X with P's ordered ends.  Each candidate is screened property by
    property and the winner re-verified by the independent checker.
    Raises for (k-ell) | k, where no such gadget exists to search for.
    """
    if not 1 <= ell < k:
        raise ParameterError(f"need 1 <= ell < k, got ell={ell}")
    if k % (k - ell) == 0:
        raise ParameterError(f"(k-ell)={k - ell} divides k={k}: unsupported parameters")
    r = 1
    while True:
        bx = ell + r * (k - ell)
        order = bx + (k - ell)
        if order > min(size_cap, k ** 4):
            return None
        if bx < 2 * ell:
            r += 1  # P's ordered ends overlap: Q cannot share them on distinct runs
            continue
        x = tuple(range(bx))
        s = tuple(range(bx, order))
        p_path = EllPath(k, ell, x)
        beg, end = x[:ell], x[-ell:]
        middle = sorted(set(range(order)) - set(beg) - set(end))
        for perm in itertools.permutations(middle):
            q_seq = beg + perm + end
            q_path = EllPath(k, ell, q_seq)
            q_windows = q_path.windows()
            if any(len(set(s).intersection(w)) > 1 for w in q_windows):
                continue
            edges = sorted(set(p_path.windows()) | set(q_windows))
            classes = _rainbow_classes(order, edges, k, set(s))
            if classes is None:
                continue
            gadget = AbsorberGadget(k, ell, s, x, classes, tuple(edges), p_path, q_path)
            if not verify_gadget_properties(gadget):
                return gadget
        r += 1


def _find_q(h: Hypergraph, k: int, ell: int, seg: Sequence[int],
            extra: Iterable[int]) -> tuple[int, ...] | None:
    """An l-path on set(seg) u extra with seg's ordered ends, by exhaustive search."""
    vs = list(seg) + list(extra)
    order = len(vs)
    if (order - ell) % (k - ell) != 0:
        return None
    beg, end = tuple(seg[:ell]), tuple(seg[-ell:])
    middle = sorted(set(vs) - set(beg) - set(end))
    for perm in itertools.permutations(middle):
        seq = beg + perm + end
        path = EllPath(k, ell, seq)
        if not validate_ell_path(h, path):
            return seq
    return None


def count_absorbing_paths(h: Hypergraph, s_set: Sequence[int], b: int,
                          ell: int, at_least: int | None = None) -> int:
    """Exact count of b-vertex l-paths P avoiding S that can absorb S.

    P absorbs S when some l-path Q on V(P) u S shares P's ordered ends.  Paths
    are counted once per direction (a sequence and its reversal are the same
    path).  With `at_least`, counting stops early at that many.
    """
    k = h.k
    if len(set(s_set)) != k - ell:
        raise ParameterError(f"S must have k-ell = {k - ell} distinct vertices")
    if (b - ell) % (k - ell) != 0 or b < k:
        return 0
    s_l = list(s_set)
    avoid = set(s_l)
    count = 0
    seq: list[int] = []

    def rec(used: set[int]) -> bool:
        nonlocal count
        if len(seq) == b:
            if seq[0] < seq[-1] and _find_q(h, k, ell, seq, s_l) is not None:
                count += 1
                if at_least is not None and count >= at_least:
                    return True
            return False
        pos = len(seq)
        for v in range(h.n):
            if v in used or v in avoid:
                continue
            seq.append(v)
            win_end = pos + 1
            ok = True
            if win_end >= k and (win_end - k) % (k - ell) == 0:
                if tuple(sorted(seq[win_end - k:])) not in h.edge_set:
                    ok = False
            if ok and rec(used | {v}):
                return True
            seq.pop()
        return False

    rec(set())
    return count


# ---------------------------------------------------------------------------
# Absorbing pipeline
# ---------------------------------------------------------------------------

@dataclass
class PipelineResult:
    found: bool
    cycle: EllCycle | None
    failed_stage: str | None
    stage_log: list[dict] = field(default_factory=list)
    counts: dict = field(default_factory=dict)


class _StageFailure(Exception):
    def __init__(self, stage: str, detail: str):
        super().__init__(f"{stage}: {detail}")
        self.stage = stage
        self.detail = detail


def absorb_pipeline(h: Hypergraph, ell: int, reservoir_frac: float = 0.25,
                    good_threshold: int = 1, seed=0, num_absorbers: int | None = None,
                    restarts: int = 20, connect_budget: int | None = None) -> PipelineResult:
    """Build a Hamilton l-cycle by the absorbing strategy, or report the failed stage.

    Stages per attempt: build an absorbing path from disjoint single-edge
    absorber segments; choose a seeded random reservoir; cover the rest by
    greedy disjoint l-paths; connect everything into a cycle through the
    reservoir; absorb the leftover into the segments via a perfect matching of
    the good-set auxiliary (k-ell)-graph.  Every returned cycle is validated;
    failures are structured reports, never invalid cycles.
    """
    k, n = h.k, h.n
    if not 1 <= ell < k:
        raise ParameterError(f"need 1 <= ell < k, got ell={ell}")
    if n % (k - ell) != 0:
        raise ParameterError(f"(k-ell)={k - ell} must divide n={n}")
    if k % (k - ell) == 0:
        raise ParameterError(f"(k-ell) divides k: no absorber gadget family to draw from")
    if num_absorbers is None:
        num_absorbers = max(1, round(reservoir_frac * n / (k - ell)))
    if connect_budget is None:
        connect_budget = 2 * ell + 3 * (k - ell)

    log: list[dict] = []
    last_fail: _StageFailure | None = None
    for attempt in range(restarts):
        rng = random.Random(f"{seed}:{attempt}")
        try:
            cycle, info = _pipeline_attempt(h, ell, reservoir_frac, good_threshold,
                                            num_absorbers, connect_budget, rng)
            log.append({"attempt": attempt, "stages": info, "outcome": "success"})
            bad = validate_ell_cycle(h, cycle)
            if bad:
                raise AssertionError(f"pipeline produced an invalid cycle: {bad}")
            return PipelineResult(True, cycle, None, log,
                                  {"attempts": attempt + 1, "absorbers": num_absorbers})
        except _StageFailure as sf:
            last_fail = sf
            log.append({"attempt": attempt, "outcome": "failure",
                        "stage": sf.stage, "detail": sf.detail})
    assert last_fail is not None
    return PipelineResult(False, None, last_fail.stage, log,
                          {"attempts": restarts, "absorbers": num_absorbers})


def _greedy_path_from(h: Hypergraph, start_edge: tuple[int, ...], pool: set[int],
                      ell: int, rng: random.Random) -> list[int]:
    """Extend an l-path greedily at the tail inside the pool."""
    k = h.k
    seq = list(start_edge)
    rng.shuffle(seq)
    used = set(seq)
    while True:
        tail = seq[-ell:]
        cands = [v for v in pool - used]
        rng.shuffle(cands)
        placed = None
        for combo in itertools.permutations(cands, k - ell):
            if tuple(sorted(tail + list(combo))) in h.edge_set:
                placed = combo
                break
        if placed is None:
            return seq
        seq.extend(placed)
        used.update(placed)


def _pipeline_attempt(h: Hypergraph, ell: int, reservoir_frac: float,
                      good_threshold: int, num_absorbers: int,
                      connect_budget: int, rng: random.Random
                      ) -> tuple[EllCycle, list[str]]:
    k, n = h.k, h.n
    b_seg = k  # single-edge absorber segments: the minimal gadget inner path
    info: list[str] = []

    # --- stage 1: absorbing path -----------------------------------------
    segments: list[list[int]] = []
    used: set[int] = set()
    edge_pool = list(h.edges)
    rng.shuffle(edge_pool)
    for e in edge_pool:
        if used.isdisjoint(e):
            seg = list(e)
            rng.shuffle(seg)
            segments.append(seg)
            used.update(e)
            if len(segments) == num_absorbers:
                break
    if len(segments) < num_absorbers:
        raise _StageFailure("absorbing-path", f"only {len(segments)} disjoint segments found")
    p0: list[int] = list(segments[0])
    for seg in segments[1:]:
        free = set(range(n)) - used - set(p0)
        conn = short_connect(h, tuple(p0[-ell:]), tuple(seg[:ell]),
                             connect_budget, allowed=free)
        if conn is None:
            raise _StageFailure("absorbing-path", "could not connect absorber segments")
        interior = list(conn.vertices[ell:-ell])
        used.update(interior)
        p0.extend(interior)
        p0.extend(seg)
    info.append(f"absorbing path on {len(p0)} vertices with {num_absorbers} segments")

    # --- stage 2: reservoir ----------------------------------------------
    free = sorted(set(range(n)) - set(p0))
    r_size = min(len(free), max(1, round(reservoir_frac * n)))
    reservoir = set(rng.sample(free, r_size))
    info.append(f"reservoir of {r_size} vertices")

    # --- stage 3: cover --------------------------------------------------
    remaining = set(free) - reservoir
    paths: list[list[int]] = [p0]
    while True:
        start = None
        cands = [e for e in h.edges if set(e) <= remaining]
        if not cands:
            break
        start = cands[rng.randrange(len(cands))]
        seq = _greedy_path_from(h, start, remaining, ell, rng)
        paths.append(seq)
        remaining -= set(seq)
    leftover_x = set(remaining)
    info.append(f"cover: {len(paths) - 1} paths, {len(leftover_x)} uncovered")

    # --- stage 4: connect ------------------------------------------------
    cycle_seq: list[int] = []
    res_pool = set(reservoir)
    q = len(paths)
    for i in range(q):
        cycle_seq.extend(paths[i])
        nxt = paths[(i + 1) % q]
        conn = short_connect(h, tuple(paths[i][-ell:]), tuple(nxt[:ell]),
                             connect_budget, allowed=res_pool)
        if conn is None:
            raise _StageFailure("connect", f"no connection from path {i} to path {(i + 1) % q}")
        interior = list(conn.vertices[ell:-ell])
        res_pool -= set(interior)
        cycle_seq.extend(interior)
    info.append(f"connected {q} paths, reservoir left {len(res_pool)}")

    # --- stage 5: absorb -------------------------------------------------
    leftovers = sorted(leftover_x | res_pool)
    if leftovers:
        sets = list(itertools.combinations(leftovers, k - ell))
        good = [s for s in sets
                if count_absorbing_paths(h, s, b_seg, ell, at_least=good_threshold)
                >= good_threshold]
        dh_floor = Fraction(k - ell - 1, k - ell) * math.comb(len(leftovers) - 1, k - ell - 1)
        deg = {v: sum(1 for s in good if v in s) for v in leftovers}
        info.append("good-graph degree condition "
                    + ("satisfied" if all(Fraction(d) >= dh_floor for d in deg.values())
                       else "unsatisfied"))
        matching = _perfect_set_matching(leftovers, good)
        if matching is None:
            raise _StageFailure("absorb", "good-set graph has no perfect matching")
        if len(matching) > len(segments):
            raise _StageFailure("absorb", f"{len(matching)} leftover sets exceed "
                                          f"{len(segments)} absorber segments")
        free_segments = list(segments)
        for s in matching:
            spliced = False
            for seg in list(free_segments):
                qseq = _find_q(h, k, ell, seg, s)
                if qseq is not None:
                    idx = cycle_seq.index(seg[0])
                    assert cycle_seq[idx: idx + len(seg)] == seg
                    cycle_seq[idx: idx + len(seg)] = list(qseq)
                    free_segments.remove(seg)
                    spliced = True
                    break
            if not spliced:
                raise _StageFailure("absorb", f"no segment absorbs {s}")
        info.append(f"absorbed {len(matching)} leftover sets")
    else:
        info.append("no leftover to absorb")

    if len(cycle_seq) != n:
        raise _StageFailure("absorb", f"cycle covers {len(cycle_seq)} of {n} vertices")
    cycle = EllCycle(k, ell, tuple(cycle_seq))
    if validate_ell_cycle(h, cycle):
        raise _StageFailure("connect", "assembled sequence fails validation")
    return cycle, info


def _perfect_set_matching(universe: Sequence[int], sets: Sequence[tuple[int, ...]]
                          ) -> list[tuple[int, ...]] | None:
    """Exact search for a partition of the universe into the given sets."""
    todo = sorted(universe)
    if not todo:
        return []
    by_min: dict[int, list[tuple[int, ...]]] = {}
    for s in sets:
        by_min.setdefault(s[0], []).append(s)

    def rec(rem: frozenset[int]) -> list[tuple[int, ...]] | None:
        if not rem:
            return []
        v = min(rem)
        for s in by_min.get(v, []):
            if rem.issuperset(s):
                sub = rec(rem - frozenset(s))
                if sub is not None:
                    return [s] + sub
        return None

    return rec(frozenset(todo))
