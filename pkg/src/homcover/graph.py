"""Finite multigraphs with array-backed adjacency.

Vertices are dense integers ``0..n-1`` and edges are dense integers
``0..|E|-1``.  Each edge stores a fixed orientation (tail -> head) chosen
at load time; the orientation only fixes the sign convention for
edge-traversal counts, traversal itself is always bidirectional.  Loops
and parallel edges are allowed.

Graphs are immutable after construction and safe to share between
concurrent workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .errors import ParseError, PathMismatch, SizeCapExceeded

#: Sentinel stored in distance arrays for unreachable vertices.
UNREACHABLE = 1 << 62

#: Default cap on the number of vertices of any constructed graph.
DEFAULT_SIZE_CAP = 1 << 23


class MultiGraph:
    """Finite oriented multigraph backed by numpy edge arrays."""

    __slots__ = ("vertex_count", "tails", "heads", "labels",
                 "_indptr", "_arc_edge", "_arc_sign", "_arc_head", "_spmat")

    def __init__(self, vertex_count: int, edges: Iterable[Sequence[int]] = (),
                 labels: Sequence | None = None):
        if vertex_count < 0:
            raise ParseError("vertex_count must be non-negative")
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                         dtype=np.int64)
        if arr.size == 0:
            arr = arr.reshape(0, 2)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ParseError("edges must be a sequence of (tail, head) pairs")
        self._init_arrays(vertex_count, arr[:, 0].copy(), arr[:, 1].copy(), labels)

    @classmethod
    def from_arrays(cls, vertex_count: int, tails: np.ndarray, heads: np.ndarray,
                    labels: Sequence | None = None) -> "MultiGraph":
        g = cls.__new__(cls)
        g._init_arrays(vertex_count,
                       np.ascontiguousarray(tails, dtype=np.int64),
                       np.ascontiguousarray(heads, dtype=np.int64), labels)
        return g

    def _init_arrays(self, vertex_count, tails, heads, labels):
        if tails.shape != heads.shape or tails.ndim != 1:
            raise ParseError("tails and heads must be 1-d arrays of equal length")
        if tails.size and (tails.min() < 0 or heads.min() < 0
                           or tails.max() >= vertex_count or heads.max() >= vertex_count):
            raise IndexError("edge endpoint out of range")
        if labels is not None and len(labels) != tails.size:
            raise ParseError("labels length must equal edge count")
        self.vertex_count = int(vertex_count)
        self.tails = tails
        self.heads = heads
        self.labels = tuple(labels) if labels is not None else None
        self._indptr = None
        self._arc_edge = None
        self._arc_sign = None
        self._arc_head = None
        self._spmat = None

    # -- basic accessors -------------------------------------------------

    @property
    def edge_count(self) -> int:
        return int(self.tails.size)

    def endpoints(self, e: int) -> tuple[int, int]:
        if not 0 <= e < self.edge_count:
            raise IndexError(f"edge {e} out of range")
        return int(self.tails[e]), int(self.heads[e])

    def is_loop(self, e: int) -> bool:
        t, h = self.endpoints(e)
        return t == h

    def arcs(self):
        """CSR arc arrays (indptr, arc_edge, arc_sign, arc_head).

        Every edge contributes two arcs (one per direction); a loop
        contributes two arcs at its vertex with opposite signs.  Arcs of a
        vertex are sorted by edge id.
        """
        if self._indptr is None:
            e = self.edge_count
            src = np.concatenate([self.tails, self.heads])
            dst = np.concatenate([self.heads, self.tails])
            eid = np.concatenate([np.arange(e), np.arange(e)])
            sgn = np.concatenate([np.ones(e, np.int8), -np.ones(e, np.int8)])
            order = np.lexsort((eid, src))
            counts = np.bincount(src, minlength=self.vertex_count)
            indptr = np.zeros(self.vertex_count + 1, dtype=np.int64)
            np.cumsum(counts, out=indptr[1:])
            self._indptr = indptr
            self._arc_edge = eid[order]
            self._arc_sign = sgn[order]
            self._arc_head = dst[order]
        return self._indptr, self._arc_edge, self._arc_sign, self._arc_head

    def adjacency_of(self, v: int) -> list[tuple[int, int, int]]:
        """Arcs at v as (edge_id, direction, neighbor), edge-id order."""
        if not 0 <= v < self.vertex_count:
            raise IndexError(f"vertex {v} out of range")
        indptr, ae, asg, ah = self.arcs()
        lo, hi = indptr[v], indptr[v + 1]
        return [(int(ae[i]), int(asg[i]), int(ah[i])) for i in range(lo, hi)]

    def degrees(self) -> np.ndarray:
        indptr = self.arcs()[0]
        return np.diff(indptr)

    def spmatrix(self) -> csr_matrix:
        """Unweighted adjacency as a scipy CSR matrix (multiplicity summed)."""
        if self._spmat is None:
            e = self.edge_count
            src = np.concatenate([self.tails, self.heads])
            dst = np.concatenate([self.heads, self.tails])
            data = np.ones(2 * e, dtype=np.int8)
            n = self.vertex_count
            self._spmat = csr_matrix((data, (src, dst)), shape=(n, n))
        return self._spmat

    def __repr__(self):
        return f"MultiGraph(|V|={self.vertex_count}, |E|={self.edge_count})"


@dataclass(frozen=True)
class Walk:
    """An edge walk: a start vertex and (edge_id, direction) steps.

    direction +1 traverses tail -> head, -1 traverses head -> tail.
    Edges and vertices may repeat.
    """

    start: int
    steps: tuple[tuple[int, int], ...] = ()

    def vertices(self, g: MultiGraph) -> list[int]:
        """All vertices visited, start first; raises PathMismatch if broken."""
        cur = self.start
        if not 0 <= cur < g.vertex_count:
            raise PathMismatch(f"start vertex {cur} out of range")
        out = [cur]
        for e, d in self.steps:
            t, h = g.endpoints(e)
            if d == 1:
                if cur != t:
                    raise PathMismatch(f"edge {e} does not start at {cur}")
                cur = h
            elif d == -1:
                if cur != h:
                    raise PathMismatch(f"edge {e} (reversed) does not start at {cur}")
                cur = t
            else:
                raise PathMismatch(f"bad direction {d}")
            out.append(cur)
        return out

    def end(self, g: MultiGraph) -> int:
        return self.vertices(g)[-1]

    def __len__(self):
        return len(self.steps)


def reverse_walk(g: MultiGraph, w: Walk) -> Walk:
    return Walk(w.end(g), tuple((e, -d) for e, d in reversed(w.steps)))


def concat_walks(g: MultiGraph, *walks: Walk) -> Walk:
    cur = walks[0]
    steps = list(cur.steps)
    end = cur.end(g)
    for w in walks[1:]:
        if w.start != end:
            raise PathMismatch("walks are not contiguous")
        steps.extend(w.steps)
        end = w.end(g)
    return Walk(walks[0].start, tuple(steps))


# -- documents ----------------------------------------------------------


def load_graph(doc: dict) -> MultiGraph:
    """Build a MultiGraph from a graph document.

    Document format: {"vertices": N, "edges": [[tail, head], ...],
    "labels": optional array}.  Indices are 0-based.
    """
    if not isinstance(doc, dict):
        raise ParseError("graph document must be a JSON object")
    try:
        n = doc["vertices"]
        edges = doc["edges"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"missing field in graph document: {exc}") from exc
    if not isinstance(n, int) or isinstance(n, bool):
        raise ParseError("'vertices' must be an integer")
    if not isinstance(edges, list):
        raise ParseError("'edges' must be a list of pairs")
    for pair in edges:
        if (not isinstance(pair, (list, tuple)) or len(pair) != 2
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in pair)):
            raise ParseError(f"bad edge entry: {pair!r}")
    labels = doc.get("labels")
    if labels is not None and not isinstance(labels, list):
        raise ParseError("'labels' must be a list")
    return MultiGraph(n, edges, labels)


def graph_document(g: MultiGraph) -> dict:
    doc = {
        "vertices": g.vertex_count,
        "edges": [[int(t), int(h)] for t, h in zip(g.tails, g.heads)],
    }
    if g.labels is not None:
        doc["labels"] = list(g.labels)
    return doc


# -- BFS metrics --------------------------------------------------------


@dataclass(frozen=True)
class DistanceTable:
    """Single-source shortest-path distances; UNREACHABLE marks no path."""

    source: int
    dist: np.ndarray

    def distance(self, v: int):
        d = int(self.dist[v])
        return math.inf if d >= UNREACHABLE else d

    def __len__(self):
        return len(self.dist)


def bfs_distance_matrix(g: MultiGraph, sources: Sequence[int]) -> np.ndarray:
    """Shortest-path distances from each source; shape (len(sources), |V|)."""
    sources = list(sources)
    for s in sources:
        if not 0 <= s < g.vertex_count:
            raise IndexError(f"source {s} out of range")
    out = np.empty((len(sources), g.vertex_count), dtype=np.int64)
    if not sources:
        return out
    mat = g.spmatrix()
    chunk = 32
    for lo in range(0, len(sources), chunk):
        idx = sources[lo:lo + chunk]
        d = shortest_path(mat, method="D", unweighted=True, indices=idx)
        d = np.atleast_2d(d)
        out[lo:lo + len(idx)] = np.where(np.isinf(d), UNREACHABLE, d).astype(np.int64)
    return out


def bfs_distances(g: MultiGraph, source: int) -> DistanceTable:
    """BFS distance table from one source; loops never shorten paths."""
    return DistanceTable(source, bfs_distance_matrix(g, [source])[0])


# -- girth --------------------------------------------------------------


def _has_loop(g: MultiGraph) -> bool:
    return bool(np.any(g.tails == g.heads))


def _has_parallel_pair(g: MultiGraph) -> bool:
    mask = g.tails != g.heads
    if not np.any(mask):
        return False
    lo = np.minimum(g.tails[mask], g.heads[mask])
    hi = np.maximum(g.tails[mask], g.heads[mask])
    code = lo * g.vertex_count + hi
    return len(np.unique(code)) < len(code)


def cycle_bound_from(g: MultiGraph, root: int, best=math.inf):
    """Truncated BFS from root; min over detected closed walks of their length.

    The returned bound never undercuts the girth, and is exactly the girth
    whenever root lies on a shortest cycle.
    """
    indptr, ae, _asg, ah = g.arcs()
    dist = np.full(g.vertex_count, -1, dtype=np.int64)
    via = np.full(g.vertex_count, -1, dtype=np.int64)
    dist[root] = 0
    frontier = [root]
    level = 0
    while frontier and 2 * level < best:
        nxt = []
        for u in frontier:
            for i in range(indptr[u], indptr[u + 1]):
                w = int(ah[i])
                e = int(ae[i])
                dw = dist[w]
                if dw < 0:
                    dist[w] = level + 1
                    via[w] = e
                    nxt.append(w)
                elif not (e == via[u] and dw == level - 1):
                    cand = level + int(dw) + 1
                    if cand < best:
                        best = cand
        level += 1
        frontier = nxt
    return best


def girth(g: MultiGraph):
    """Length of the shortest cycle: 1 for a loop, 2 for a parallel pair,
    math.inf for forests.  Per-source truncated BFS."""
    if _has_loop(g):
        return 1
    if _has_parallel_pair(g):
        return 2
    best = math.inf
    for root in range(g.vertex_count):
        best = cycle_bound_from(g, root, best)
        if best == 3:
            break
    return best if best is math.inf else int(best)


# -- connectivity -------------------------------------------------------


def is_connected(g: MultiGraph) -> bool:
    if g.vertex_count <= 1:
        return True
    indptr, _ae, _asg, ah = g.arcs()
    seen = np.zeros(g.vertex_count, dtype=bool)
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        u = stack.pop()
        for i in range(indptr[u], indptr[u + 1]):
            w = int(ah[i])
            if not seen[w]:
                seen[w] = True
                count += 1
                stack.append(w)
    return count == g.vertex_count


def is_two_edge_connected(g: MultiGraph) -> bool:
    """True iff g is connected and bridgeless.  Loops are never bridges."""
    n = g.vertex_count
    if n == 0:
        return False
    if n == 1:
        return True
    indptr, ae, _asg, ah = g.arcs()
    disc = np.full(n, -1, dtype=np.int64)
    low = np.zeros(n, dtype=np.int64)
    timer = 0
    # iterative DFS; each frame is (vertex, entry edge id, next arc index)
    disc[0] = low[0] = timer
    timer += 1
    stack = [(0, -1, int(indptr[0]))]
    visited = 1
    while stack:
        u, entry_edge, i = stack[-1]
        if i < indptr[u + 1]:
            stack[-1] = (u, entry_edge, i + 1)
            w = int(ah[i])
            e = int(ae[i])
            if e == entry_edge:
                continue  # do not reuse the arc we came in on
            if disc[w] < 0:
                disc[w] = low[w] = timer
                timer += 1
                visited += 1
                stack.append((w, e, int(indptr[w])))
            else:
                low[u] = min(low[u], disc[w])
        else:
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[u])
                if low[u] > disc[p]:
                    return False  # entry edge of u is a bridge
    return visited == n


# -- constructors -------------------------------------------------------


def cycle_graph(n: int) -> MultiGraph:
    """C_n; n=1 is a single loop, n=2 a doubled edge."""
    if n < 1:
        raise ValueError("cycle needs at least one vertex")
    return MultiGraph(n, [[i, (i + 1) % n] for i in range(n)])


def complete_graph(n: int) -> MultiGraph:
    return MultiGraph(n, [[i, j] for i in range(n) for j in range(i + 1, n)])


def path_graph(n: int) -> MultiGraph:
    return MultiGraph(n, [[i, i + 1] for i in range(n - 1)])


def doubled_edge() -> MultiGraph:
    """Two vertices joined by two parallel edges (fundamental group Z)."""
    return MultiGraph(2, [[0, 1], [0, 1]])


def petersen_graph() -> MultiGraph:
    outer = [[i, (i + 1) % 5] for i in range(5)]
    spokes = [[i, i + 5] for i in range(5)]
    inner = [[5 + i, 5 + (i + 2) % 5] for i in range(5)]
    return MultiGraph(10, outer + spokes + inner)


def cayley_zm_power(n: int, m: int, size_cap: int = DEFAULT_SIZE_CAP) -> MultiGraph:
    """Cayley graph of Z_m^n with one standard generator per factor.

    Vertices are tuples in Z_m^n in lexicographic order.  For m >= 3 every
    vertex emits one edge per generator (n * m^n edges, 2n-regular).  For
    m = 2 the generators are involutions and each unordered pair gets a
    single edge (n-regular).
    """
    if n < 1 or m < 2:
        raise ValueError("need n >= 1 and m >= 2")
    size = m ** n
    if size > size_cap:
        raise SizeCapExceeded(f"{m}^{n} = {size} exceeds cap {size_cap}")
    idx = np.arange(size, dtype=np.int64)
    # vertex-major, generator-minor edge order
    head_cols = np.empty((size, n), dtype=np.int64)
    keep_cols = np.ones((size, n), dtype=bool)
    for i in range(n):
        stride = m ** (n - 1 - i)  # lexicographic order: coordinate 0 is most significant
        digit = (idx // stride) % m
        head_cols[:, i] = idx + np.where(digit < m - 1, stride, -(m - 1) * stride)
        if m == 2:
            keep_cols[:, i] = digit == 0
    tails = np.repeat(idx, n)
    heads = head_cols.reshape(-1)
    labels_arr = np.tile(np.arange(n), size)
    keep = keep_cols.reshape(-1)
    return MultiGraph.from_arrays(size, tails[keep], heads[keep],
                                  labels=labels_arr[keep].tolist())


_NAMED = {
    "doubled_edge": doubled_edge,
    "k4": lambda: complete_graph(4),
    "c5": lambda: cycle_graph(5),
    "petersen": petersen_graph,
}


def named_graph(name: str) -> MultiGraph:
    """Look up a named test graph; supports cycle:<n> and complete:<n>."""
    if name in _NAMED:
        return _NAMED[name]()
    if ":" in name:
        kind, _, arg = name.partition(":")
        if kind == "cycle":
            return cycle_graph(int(arg))
        if kind == "complete":
            return complete_graph(int(arg))
        if kind == "path":
            return path_graph(int(arg))
    raise ParseError(f"unknown graph name: {name!r}")
