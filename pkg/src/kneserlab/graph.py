"""Immutable simple graphs with loop flags and structured vertex labels.

Vertices are the integers ``0..n-1``.  Adjacency is stored as one Python
int per vertex used as a bitset, which the solvers operate on directly.
Self-loops live in a separate set and never appear in the adjacency bitsets.
"""

from __future__ import annotations

import itertools
import math
import os
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

DEFAULT_MAX_VERTICES = 200_000


class GraphError(ValueError):
    """Invalid graph construction or an argument outside a graph's range."""


class LoopError(GraphError):
    """An operation that needs a loop-free graph was handed one with loops."""

    def __init__(self, message: str, loops: Iterable[int] = ()):
        super().__init__(message)
        self.loops = tuple(sorted(loops))


class SizeGuardError(GraphError):
    """A construction would exceed the configured vertex guard."""


def max_vertices() -> int:
    raw = os.environ.get("KNESERLAB_MAX_VERTICES")
    if raw is None or raw == "":
        return DEFAULT_MAX_VERTICES
    return int(raw)


def check_guard(count: int, what: str, limit: int | None = None) -> None:
    limit = max_vertices() if limit is None else limit
    if count > limit:
        raise SizeGuardError(f"{what} would have {count} vertices (guard {limit})")


# --------------------------------------------------------------------------
# Vertex labels
# --------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Index:
    i: int

    def __str__(self) -> str:
        return str(self.i)


@dataclass(frozen=True)
class Pair:
    left: "VertexLabel"
    right: "VertexLabel"

    def __str__(self) -> str:
        return f"({self.left},{self.right})"


@dataclass(frozen=True)
class FunctionTable:
    """A map V(H) -> {1..c}; ``values[v]`` is the color given to vertex v."""

    values: tuple[int, ...]

    @property
    def image(self) -> frozenset[int]:
        return frozenset(self.values)

    def __str__(self) -> str:
        return "f[" + ",".join(map(str, self.values)) + "]"


@dataclass(frozen=True)
class Subset:
    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(a >= b for a, b in zip(self.elements, self.elements[1:])):
            raise GraphError(f"subset elements must be strictly increasing: {self.elements}")

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"


VertexLabel = Union[Index, Pair, FunctionTable, Subset]


def label_to_json(label: VertexLabel):
    if isinstance(label, Index):
        return label.i
    if isinstance(label, Pair):
        return {"pair": [label_to_json(label.left), label_to_json(label.right)]}
    if isinstance(label, FunctionTable):
        return {"function": list(label.values)}
    if isinstance(label, Subset):
        return {"subset": list(label.elements)}
    raise TypeError(f"not a vertex label: {label!r}")


def label_from_json(obj) -> VertexLabel:
    if isinstance(obj, bool):
        raise GraphError(f"bad label {obj!r}")
    if isinstance(obj, int):
        return Index(obj)
    if isinstance(obj, dict) and len(obj) == 1:
        (key, value), = obj.items()
        if key == "pair":
            left, right = value
            return Pair(label_from_json(left), label_from_json(right))
        if key == "function":
            return FunctionTable(tuple(int(x) for x in value))
        if key == "subset":
            return Subset(tuple(int(x) for x in value))
    raise GraphError(f"bad label {obj!r}")


# --------------------------------------------------------------------------
# Graph
# --------------------------------------------------------------------------


_BYTE_BITS = tuple(tuple(j for j in range(8) if b >> j & 1) for b in range(256))
_WIDE = 256
_SPARSE = 8


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    if mask.bit_length() <= _WIDE or mask.bit_count() <= _SPARSE:
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low
        return
    # wide masks: one pass over the bytes beats repeated big-int arithmetic
    data = mask.to_bytes((mask.bit_length() + 7) // 8, "little")
    for i, byte in enumerate(data):
        if byte:
            base = i * 8
            for j in _BYTE_BITS[byte]:
                yield base + j


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


class Graph:
    """An immutable simple graph on ``0..n-1``.

    ``adj[v]`` is the bitset of neighbours of v.  ``loops`` is the set of
    vertices carrying a self-loop; those never show up in ``adj``.
    """

    __slots__ = ("_n", "_adj", "_loops", "_labels", "_edge_count")

    def __init__(
        self,
        n: int,
        adj: Sequence[int],
        loops: Iterable[int] = (),
        labels: Sequence[VertexLabel] | None = None,
        *,
        validate: bool = True,
    ):
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        adj = tuple(adj)
        loops = frozenset(loops)
        if len(adj) != n:
            raise GraphError(f"adjacency has {len(adj)} rows for {n} vertices")
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n:
                raise GraphError(f"{len(labels)} labels for {n} vertices")
        if validate:
            full = (1 << n) - 1
            for v, row in enumerate(adj):
                if row & ~full or row < 0:
                    raise GraphError(f"vertex {v} has a neighbour out of range")
                if row >> v & 1:
                    raise GraphError(f"vertex {v} is adjacent to itself; use loops")
                for u in iter_bits(row):
                    if not adj[u] >> v & 1:
                        raise GraphError(f"adjacency is not symmetric at ({v},{u})")
            for v in loops:
                if not 0 <= v < n:
                    raise GraphError(f"loop vertex {v} out of range")
            if labels is not None and len(set(labels)) != n:
                raise GraphError("vertex labels are not pairwise distinct")
        self._n = n
        self._adj = adj
        self._loops = loops
        self._labels = labels
        self._edge_count = sum(row.bit_count() for row in adj) // 2

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        loops: Iterable[int] = (),
        labels: Sequence[VertexLabel] | None = None,
    ) -> "Graph":
        adj = [0] * n
        loops = set(loops)
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) out of range")
            if u == v:
                loops.add(u)
                continue
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj, loops, labels)

    # -- accessors -----------------------------------------------------------

    @property
    def n(self) -> int:
        return self._n

    @property
    def adj(self) -> tuple[int, ...]:
        return self._adj

    @property
    def loops(self) -> frozenset[int]:
        return self._loops

    @property
    def labels(self) -> tuple[VertexLabel, ...] | None:
        return self._labels

    def __len__(self) -> int:
        return self._n

    def label(self, v: int) -> VertexLabel:
        if self._labels is None:
            return Index(v)
        return self._labels[v]

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self._adj[v]))

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return u in self._loops
        return bool(self._adj[u] >> v & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Non-loop edges as ``(u, v)`` with ``u < v``, in lexicographic order."""
        for u, row in enumerate(self._adj):
            for v in iter_bits(row >> (u + 1)):
                yield u, u + 1 + v

    @property
    def edge_count(self) -> int:
        return self._edge_count

    def has_loops(self) -> bool:
        return bool(self._loops)

    def require_loop_free(self, what: str = "operation") -> None:
        if self._loops:
            raise LoopError(
                f"{what} needs a loop-free graph; {len(self._loops)} vertices carry loops",
                self._loops,
            )

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges())

    def without_labels(self) -> "Graph":
        return Graph(self._n, self._adj, self._loops, None, validate=False)

    def loop_free_core(self) -> tuple["Graph", list[int]]:
        """Induced subgraph on the unlooped vertices, plus the kept vertex list."""
        keep = [v for v in range(self._n) if v not in self._loops]
        return induced_subgraph(self, keep), keep

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self._n == other._n
            and self._adj == other._adj
            and self._loops == other._loops
            and self._labels == other._labels
        )

    def __hash__(self) -> int:
        return hash((self._n, self._adj, self._loops))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, edges={self._edge_count}, loops={len(self._loops)})"


# --------------------------------------------------------------------------
# Colorings and homomorphisms
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Coloring:
    colors: tuple[int, ...]
    palette_size: int

    def __post_init__(self) -> None:
        for c in self.colors:
            if not 1 <= c <= self.palette_size:
                raise GraphError(f"color {c} outside palette 1..{self.palette_size}")

    @classmethod
    def of(cls, colors: Sequence[int], palette_size: int | None = None) -> "Coloring":
        colors = tuple(int(c) for c in colors)
        if palette_size is None:
            palette_size = max(colors, default=0)
        return cls(colors, palette_size)

    def used(self) -> int:
        return len(set(self.colors))


@dataclass(frozen=True)
class Homomorphism:
    map: tuple[int, ...]


def is_proper_coloring(g: Graph, col: Coloring | Sequence[int]) -> bool:
    colors = col.colors if isinstance(col, Coloring) else tuple(col)
    if len(colors) != g.n:
        raise GraphError(f"coloring has {len(colors)} entries for {g.n} vertices")
    if g.loops:
        return False
    # one bitset per colour class; a class is proper iff no member sees another
    classes: dict[int, int] = {}
    for v, c in enumerate(colors):
        classes[c] = classes.get(c, 0) | 1 << v
    adj = g.adj
    for members in classes.values():
        for v in iter_bits(members):
            if adj[v] & members:
                return False
    return True


def is_homomorphism(g: Graph, h: Graph, hom: Homomorphism | Sequence[int]) -> bool:
    image = hom.map if isinstance(hom, Homomorphism) else tuple(hom)
    if len(image) != g.n:
        raise GraphError(f"map has {len(image)} entries for {g.n} vertices")
    for x in image:
        if not 0 <= x < h.n:
            raise GraphError(f"map sends a vertex to {x}, outside 0..{h.n - 1}")
    for v in g.loops:
        if image[v] not in h.loops:
            return False
    for u, v in g.edges():
        if not h.has_edge(image[u], image[v]):
            return False
    return True


# --------------------------------------------------------------------------
# Constructors
# --------------------------------------------------------------------------


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    check_guard(n, f"K_{n}")
    full = (1 << n) - 1
    return Graph(n, [full ^ (1 << v) for v in range(n)], (), [Index(i) for i in range(n)], validate=False)


def edgeless(n: int) -> Graph:
    if n < 0:
        raise GraphError("vertex count must be nonnegative")
    check_guard(n, f"edgeless({n})")
    return Graph(n, [0] * n, (), [Index(i) for i in range(n)], validate=False)


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    check_guard(n, f"C_{n}")
    adj = [(1 << ((v + 1) % n)) | (1 << ((v - 1) % n)) for v in range(n)]
    return Graph(n, adj, (), [Index(i) for i in range(n)], validate=False)


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError("path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], (), [Index(i) for i in range(n)])


def mycielski(g: Graph) -> Graph:
    """Mycielski construction: triangle-free in, triangle-free out, chi up by one."""
    g.require_loop_free("mycielski")
    n = g.n
    edges = list(g.edges())
    for u, v in g.edges():
        edges.append((u, n + v))
        edges.append((v, n + u))
    edges.extend((n + v, 2 * n) for v in range(n))
    return Graph.from_edges(2 * n + 1, edges, (), [Index(i) for i in range(2 * n + 1)])


def kneser(m: int, n: int) -> Graph:
    """K(m,n): the n-subsets of {1..m}, adjacent when disjoint."""
    if n < 1 or m < 1 or n > m:
        raise GraphError(f"Kneser graph needs 1 <= n <= m, got K({m},{n})")
    count = math.comb(m, n)
    check_guard(count, f"K({m},{n})")
    subsets = list(itertools.combinations(range(1, m + 1), n))
    adj = [0] * count
    if m >= 2 * n:
        # containing[e]: bitset of the subsets holding element e
        containing = [0] * (m + 1)
        for i, s in enumerate(subsets):
            for e in s:
                containing[e] |= 1 << i
        full = (1 << count) - 1
        for i, s in enumerate(subsets):
            meets = 0
            for e in s:
                meets |= containing[e]
            adj[i] = full & ~meets
    return Graph(count, adj, (), [Subset(s) for s in subsets], validate=False)


def _factor_labels(g: Graph) -> list[VertexLabel]:
    return [g.label(v) for v in range(g.n)]


def categorical_product(g: Graph, h: Graph, *, allow_loops: bool = False) -> Graph:
    """G x H: (x,y) ~ (x',y') iff xx' in E(G) and yy' in E(H).  Vertex (x,y) is x*|H|+y.

    Factors must be loop-free unless ``allow_loops`` is set; then a looped
    vertex counts as its own neighbour and (x,y) is looped iff both x and y are.
    """
    if (g.loops or h.loops) and not allow_loops:
        raise LoopError("categorical product factors must be loop-free", g.loops | h.loops)
    check_guard(g.n * h.n, "categorical product")
    hn = h.n
    gnbr = [row | (1 << x if x in g.loops else 0) for x, row in enumerate(g.adj)]
    hnbr = [row | (1 << y if y in h.loops else 0) for y, row in enumerate(h.adj)]
    adj = []
    loops = []
    for x in range(g.n):
        gx = list(iter_bits(gnbr[x]))
        for y in range(hn):
            hy = hnbr[y]
            row = 0
            for x2 in gx:
                row |= hy << (x2 * hn)
            me = x * hn + y
            if row >> me & 1:
                loops.append(me)
                row ^= 1 << me
            adj.append(row)
    gl, hl = _factor_labels(g), _factor_labels(h)
    labels = [Pair(a, b) for a in gl for b in hl]
    return Graph(g.n * hn, adj, loops, labels, validate=False)


def lexicographic_product(g: Graph, h: Graph) -> Graph:
    """G[H]: (x,y) ~ (x',y') iff xx' in E(G), or x = x' and yy' in E(H)."""
    if g.loops or h.loops:
        raise LoopError("lexicographic product factors must be loop-free", g.loops | h.loops)
    check_guard(g.n * h.n, "lexicographic product")
    hn = h.n
    block = (1 << hn) - 1
    adj = []
    for x in range(g.n):
        outer = 0
        for x2 in iter_bits(g.adj[x]):
            outer |= block << (x2 * hn)
        for y in range(hn):
            adj.append(outer | (h.adj[y] << (x * hn)))
    gl, hl = _factor_labels(g), _factor_labels(h)
    labels = [Pair(a, b) for a in gl for b in hl]
    return Graph(g.n * hn, adj, (), labels, validate=False)


def _rows_to_bitsets(matrix: np.ndarray) -> list[int]:
    packed = np.packbits(matrix, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def function_tables(c: int, n: int) -> np.ndarray:
    """All maps {0..n-1} -> {1..c} as rows, in base-c numeral order (column 0 most significant)."""
    count = c**n
    idx = np.arange(count, dtype=np.int64)
    table = np.empty((count, n), dtype=np.int16)
    for v in range(n):
        table[:, v] = (idx // c ** (n - 1 - v)) % c + 1
    return table


def exponential_graph(c: int, h: Graph, *, guard: int | None = None) -> Graph:
    """K_c^H: maps f: V(H) -> {1..c}, with f ~ g iff f(u) != g(v) for every edge uv of H.

    A map f satisfying the condition against itself (a proper c-coloring of H)
    is recorded as a loop.
    """
    if c < 1:
        raise GraphError("exponential graph needs c >= 1")
    h.require_loop_free("exponential graph base")
    count = c**h.n
    check_guard(count, f"K_{c}^H", guard)
    table = function_tables(c, h.n)
    if not h.edge_count:
        # no constraints: every pair of maps is adjacent and every map is looped
        full = (1 << count) - 1
        adj = [full ^ (1 << f) for f in range(count)]
        labels = [FunctionTable(tuple(row)) for row in table.tolist()]
        return Graph(count, adj, range(count), labels, validate=False)
    arcs = [(u, v) for u, v in h.edges()] + [(v, u) for u, v in h.edges()]
    adj: list[int] = []
    # row blocks keep the boolean work matrix bounded
    step = max(1, min(count, 4_000_000 // max(count, 1)))
    for start in range(0, count, step):
        rows = table[start : start + step]
        ok = np.ones((rows.shape[0], count), dtype=bool)
        for u, v in arcs:
            ok &= rows[:, u][:, None] != table[:, v][None, :]
        diag = np.arange(rows.shape[0])
        ok[diag, start + diag] = False
        adj.extend(_rows_to_bitsets(ok))
    proper = np.ones(count, dtype=bool)
    for u, v in h.edges():
        proper &= table[:, u] != table[:, v]
    loops = np.flatnonzero(proper).tolist()
    labels = [FunctionTable(tuple(row)) for row in table.tolist()]
    return Graph(count, adj, loops, labels, validate=False)


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph induced on ``vertices``, renumbered in increasing vertex order."""
    keep = sorted(set(vertices))
    for v in keep:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range 0..{g.n - 1}")
    position = {v: i for i, v in enumerate(keep)}
    keep_mask = mask_of(keep)
    adj = []
    for v in keep:
        row = 0
        for u in iter_bits(g.adj[v] & keep_mask):
            row |= 1 << position[u]
        adj.append(row)
    loops = [position[v] for v in keep if v in g.loops]
    labels = None if g.labels is None else [g.labels[v] for v in keep]
    return Graph(len(keep), adj, loops, labels, validate=False)


def relabel(g: Graph, labels: Sequence[VertexLabel]) -> Graph:
    return Graph(g.n, g.adj, g.loops, labels)


# --------------------------------------------------------------------------
# Structure
# --------------------------------------------------------------------------


def girth(g: Graph) -> float:
    """Length of a shortest cycle, ``math.inf`` for forests."""
    g.require_loop_free("girth")
    best = math.inf
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in iter_bits(g.adj[u]):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def complement(g: Graph) -> Graph:
    g.require_loop_free("complement")
    full = (1 << g.n) - 1
    adj = [full & ~row & ~(1 << v) for v, row in enumerate(g.adj)]
    return Graph(g.n, adj, (), g.labels, validate=False)


def is_independent(g: Graph, vertices: Iterable[int]) -> bool:
    mask = mask_of(vertices)
    for v in iter_bits(mask):
        if v in g.loops or g.adj[v] & mask:
            return False
    return True


def is_clique(g: Graph, vertices: Iterable[int]) -> bool:
    vs = list(vertices)
    mask = mask_of(vs)
    for v in vs:
        if (g.adj[v] | (1 << v)) & mask != mask:
            return False
    return True
