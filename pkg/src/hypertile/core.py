"""Immutable k-uniform hypergraphs with degree, link and induced-subgraph queries.

Vertices are dense integers 0..n-1 (isolated vertices allowed).  Edges are
stored as ascending k-tuples, globally sorted and duplicate-free, backed by
per-vertex incidence bitsets so that degree and link queries are word-parallel
scans.  Everything here is read-only after construction and safe to share.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable


class ArityError(ValueError):
    """A vertex-set argument has an arity the operation does not accept."""


class HgParseError(ValueError):
    """Malformed .hg input; carries the 1-based offending line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def vset(vertices: Iterable[int], n: int | None = None) -> tuple[int, ...]:
    """Normalize a vertex collection to an ascending duplicate-free tuple.

    If `n` is given, membership in 0..n-1 is enforced.
    """
    vs = tuple(sorted(vertices))
    for i, v in enumerate(vs):
        if i > 0 and vs[i - 1] == v:
            raise ValueError(f"duplicate vertex {v}")
        if v < 0 or (n is not None and v >= n):
            raise ValueError(f"vertex {v} out of range 0..{(n or 0) - 1}")
    return vs


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Hypergraph:
    """A k-uniform hypergraph on vertices 0..n-1.

    Invariants (checked on construction): every edge has exactly k distinct
    vertices all below n; the edge list is sorted and duplicate-free.
    """

    k: int
    n: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("uniformity k must be >= 1")
        if self.n < 0:
            raise ValueError("vertex count n must be >= 0")
        prev = None
        for e in self.edges:
            if len(e) != self.k or len(set(e)) != self.k:
                raise ValueError(f"edge {e} does not have {self.k} distinct vertices")
            if tuple(sorted(e)) != e:
                raise ValueError(f"edge {e} is not ascending")
            if e[0] < 0 or e[-1] >= self.n:
                raise ValueError(f"edge {e} out of range for n={self.n}")
            if prev is not None and e <= prev:
                raise ValueError("edge list is not sorted and duplicate-free")
            prev = e

    @staticmethod
    def from_edges(k: int, n: int, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        """Build from arbitrary-order edges, sorting and rejecting duplicates."""
        norm = sorted(tuple(sorted(e)) for e in edges)
        for a, b in zip(norm, norm[1:]):
            if a == b:
                raise ValueError(f"duplicate edge {a}")
        return Hypergraph(k, n, tuple(norm))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def edge_set(self) -> frozenset[tuple[int, ...]]:
        try:
            return self._edge_set  # type: ignore[attr-defined]
        except AttributeError:
            es = frozenset(self.edges)
            object.__setattr__(self, "_edge_set", es)
            return es

    @property
    def incidence(self) -> tuple[int, ...]:
        """Per-vertex bitset over edge indices: bit j of incidence[v] set iff v in edges[j]."""
        try:
            return self._incidence  # type: ignore[attr-defined]
        except AttributeError:
            inc = [0] * self.n
            for j, e in enumerate(self.edges):
                bit = 1 << j
                for v in e:
                    inc[v] |= bit
            t = tuple(inc)
            object.__setattr__(self, "_incidence", t)
            return t

    @property
    def neighbor_masks(self) -> tuple[int, ...]:
        """Per-vertex bitset of vertices sharing at least one edge with it."""
        try:
            return self._neighbor_masks  # type: ignore[attr-defined]
        except AttributeError:
            nm = [0] * self.n
            for e in self.edges:
                em = _mask(e)
                for v in e:
                    nm[v] |= em & ~(1 << v)
            t = tuple(nm)
            object.__setattr__(self, "_neighbor_masks", t)
            return t

    def has_edge(self, e: Iterable[int]) -> bool:
        return tuple(sorted(e)) in self.edge_set

    def __repr__(self):
        return f"Hypergraph(k={self.k}, n={self.n}, m={len(self.edges)})"


@dataclass(frozen=True)
class Pattern:
    """A small k-uniform hypergraph used as a tiling unit (at most 2k vertices)."""

    k: int
    p: int
    edges: tuple[tuple[int, ...], ...]
    label: str = ""

    def __post_init__(self):
        for e in self.edges:
            if len(e) != self.k or len(set(e)) != self.k:
                raise ValueError(f"pattern edge {e} must have {self.k} distinct vertices")
            if e[-1] >= self.p:
                raise ValueError(f"pattern edge {e} out of range for p={self.p}")
        if self.p > 2 * self.k:
            raise ValueError("pattern has more than 2k vertices")

    @staticmethod
    def single_edge(k: int) -> "Pattern":
        return Pattern(k, k, (tuple(range(k)),), label="edge")


# ---------------------------------------------------------------------------
# Queries
# ---------------------------------------------------------------------------

def degree(h: Hypergraph, s: Iterable[int]) -> int:
    """Number of (k-|S|)-sets T with T union S an edge; e(H) for S empty."""
    sv = vset(s, h.n)
    if len(sv) > h.k:
        raise ArityError(f"|S|={len(sv)} exceeds uniformity k={h.k}")
    if not sv:
        return len(h.edges)
    inc = h.incidence
    m = inc[sv[0]]
    for v in sv[1:]:
        m &= inc[v]
    return bin(m).count("1")


def min_d_degree(h: Hypergraph, d: int) -> int:
    """Minimum of degree(H, S) over all d-subsets S of V(H)."""
    if d < 0 or d > h.k:
        raise ArityError(f"d={d} outside 0..k={h.k}")
    if d == 0:
        return len(h.edges)
    return min(degree(h, s) for s in itertools.combinations(range(h.n), d))


def link(h: Hypergraph, l: Iterable[int]) -> tuple[Hypergraph, tuple[int, ...]]:
    """Link H(L): the (k-|L|)-graph of edge completions of L, densely re-indexed.

    Returns (link graph, index map new->old).
    """
    lv = vset(l, h.n)
    if len(lv) >= h.k:
        raise ArityError(f"|L|={len(lv)} must be < k={h.k}")
    lset = set(lv)
    keep = [v for v in range(h.n) if v not in lset]
    old_to_new = {v: i for i, v in enumerate(keep)}
    edges = []
    for e in h.edges:
        if lset.issubset(e):
            edges.append(tuple(old_to_new[v] for v in e if v not in lset))
    sub = Hypergraph.from_edges(h.k - len(lv), len(keep), edges)
    return sub, tuple(keep)


def induced(h: Hypergraph, w: Iterable[int]) -> tuple[Hypergraph, tuple[int, ...]]:
    """Sub-hypergraph on W with all edges of H inside W, densely re-indexed."""
    wv = vset(w, h.n)
    wset = set(wv)
    old_to_new = {v: i for i, v in enumerate(wv)}
    edges = [tuple(old_to_new[v] for v in e) for e in h.edges if wset.issuperset(e)]
    sub = Hypergraph.from_edges(h.k, len(wv), edges)
    return sub, wv


def _pattern_order(f: Pattern) -> list[int]:
    """Greedy connectivity-first ordering of pattern vertices (densest first)."""
    deg = [0] * f.p
    for e in f.edges:
        for v in e:
            deg[v] += 1
    order: list[int] = []
    placed: set[int] = set()
    while len(order) < f.p:
        best, best_key = -1, (-1, -1, 0)
        for v in range(f.p):
            if v in placed:
                continue
            adj = sum(1 for e in f.edges if v in e and any(u in placed for u in e))
            key = (adj, deg[v], -v)
            if key > best_key:
                best, best_key = v, key
        order.append(best)
        placed.add(best)
    return order


def _embed(h: Hypergraph, f: Pattern, order: list[int],
           allowed_mask: int, first_only: bool,
           sink: set[frozenset[int]] | None) -> tuple[int, ...] | None:
    """Backtracking embedding of pattern f into h over the given vertex order.

    With first_only, returns the lexicographically first embedding (as the
    tuple of images in `order` position); otherwise records every distinct
    image vertex-set into `sink` and returns None.
    """
    pos_of = {v: i for i, v in enumerate(order)}
    # pattern edges checkable once position i is filled
    check_at: list[list[tuple[int, ...]]] = [[] for _ in range(f.p)]
    for e in f.edges:
        last = max(pos_of[v] for v in e)
        check_at[last].append(e)
    nbr = h.neighbor_masks
    image = [-1] * f.p  # indexed by pattern vertex
    used = 0

    def candidates(i: int) -> int:
        cand = allowed_mask & ~used
        pv = order[i]
        for e in f.edges:
            if pv in e:
                for u in e:
                    if image[u] >= 0:
                        cand &= nbr[image[u]]
        return cand

    def rec(i: int):
        nonlocal used
        if i == f.p:
            if first_only:
                return tuple(image[v] for v in order)
            sink.add(frozenset(image))  # type: ignore[arg-type]
            return None
        cand = candidates(i)
        while cand:
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            image[order[i]] = v
            used |= 1 << v
            ok = True
            for e in check_at[i]:
                if tuple(sorted(image[u] for u in e)) not in h.edge_set:
                    ok = False
                    break
            if ok:
                r = rec(i + 1)
                if r is not None:
                    return r
            used &= ~(1 << v)
            image[order[i]] = -1
        return None

    return rec(0)


def copies_of(h: Hypergraph, f: Pattern) -> list[tuple[int, ...]]:
    """All p-sets of V(H) spanning a copy of f (subgraph containment).

    Each unordered vertex set is reported once, ascending, sorted globally.
    """
    if f.k != h.k:
        raise ArityError(f"pattern uniformity {f.k} != host uniformity {h.k}")
    if not f.edges:
        return [tuple(c) for c in itertools.combinations(range(h.n), f.p)]
    found: set[frozenset[int]] = set()
    _embed(h, f, _pattern_order(f), (1 << h.n) - 1, first_only=False, sink=found)
    return sorted(tuple(sorted(s)) for s in found)


def spanning_witness(h: Hypergraph, f: Pattern, image: Iterable[int]) -> tuple[tuple[int, ...], ...]:
    """Host edges realizing f inside the given image set (first embedding found)."""
    iv = vset(image, h.n)
    if len(iv) != f.p:
        raise ValueError(f"image size {len(iv)} != pattern order {f.p}")
    emb = _embed(h, f, _pattern_order(f), _mask(iv), first_only=True, sink=None)
    if emb is None:
        raise ValueError(f"image {iv} does not span pattern {f.label or f.edges}")
    order = _pattern_order(f)
    img = {order[i]: emb[i] for i in range(f.p)}
    return tuple(sorted(tuple(sorted(img[u] for u in e)) for e in f.edges))


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

def complete_hypergraph(n: int, k: int) -> Hypergraph:
    return Hypergraph(k, n, tuple(itertools.combinations(range(n), k)))


def empty_hypergraph(n: int, k: int) -> Hypergraph:
    return Hypergraph(k, n, ())


def random_hypergraph(n: int, k: int, p: float, seed) -> Hypergraph:
    """Binomial random k-graph: each k-set kept with probability p (seeded)."""
    rng = random.Random(str(seed))
    edges = [e for e in itertools.combinations(range(n), k) if rng.random() < p]
    return Hypergraph(k, n, tuple(edges))


# ---------------------------------------------------------------------------
# .hg text format
# ---------------------------------------------------------------------------

def parse_hg(text: str) -> Hypergraph:
    """Parse the .hg format: header `k n m`, then m ascending edges, `#` comments."""
    header: tuple[int, int, int] | None = None
    edges: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            nums = [int(x) for x in parts]
        except ValueError:
            raise HgParseError(lineno, f"non-integer token in {line!r}")
        if header is None:
            if len(nums) != 3:
                raise HgParseError(lineno, "header must be `k n m`")
            header = (nums[0], nums[1], nums[2])
            if header[0] < 1 or header[1] < 0 or header[2] < 0:
                raise HgParseError(lineno, f"bad header values {header}")
            continue
        k, n, m = header
        if len(nums) != k:
            raise HgParseError(lineno, f"expected {k} vertices, got {len(nums)}")
        e = tuple(nums)
        if list(e) != sorted(set(e)):
            raise HgParseError(lineno, f"edge {e} not strictly ascending")
        if e[0] < 0 or e[-1] >= n:
            raise HgParseError(lineno, f"edge {e} out of range 0..{n - 1}")
        if e in seen:
            raise HgParseError(lineno, f"duplicate edge {e}")
        seen.add(e)
        edges.append(e)
    if header is None:
        raise HgParseError(1, "empty input")
    k, n, m = header
    if len(edges) != m:
        raise HgParseError(1, f"header announces {m} edges, found {len(edges)}")
    return Hypergraph(k, n, tuple(sorted(edges)))


def format_hg(h: Hypergraph, comment: str = "") -> str:
    lines = []
    if comment:
        for c in comment.splitlines():
            lines.append(f"# {c}")
    lines.append(f"{h.k} {h.n} {len(h.edges)}")
    for e in h.edges:
        lines.append(" ".join(str(v) for v in e))
    return "\n".join(lines) + "\n"


def load_hg(path) -> Hypergraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_hg(fh.read())


def save_hg(h: Hypergraph, path, comment: str = "") -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_hg(h, comment))
