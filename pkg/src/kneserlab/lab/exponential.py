"""Checks on exponential graphs K_c^H: the evaluation colouring, colour blocks, constant maps.

Chromatic numbers are always taken on the loop-free core (the maps that are
not proper colourings of H).  A looped vertex admits no proper colouring at
all, and removing the looped maps keeps every block and every constant map
intact whenever H has an edge, so the inequalities below carry over.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..graph import (
    Coloring,
    Graph,
    GraphError,
    categorical_product,
    check_guard,
    exponential_graph,
    function_tables,
    is_proper_coloring,
    iter_bits,
    mask_of,
)
from ..io import graph_key
from ..solvers.budget import Budget, BudgetExceeded
from ..solvers.coloring import ChromaticCertificate, chromatic_number
from .report import BUDGET, FAIL, PASS, Report


def function_index(values, colors: int) -> int:
    """Position of the map with the given values (1-based colours) in K_colors^H."""
    index = 0
    for x in values:
        index = index * colors + (x - 1)
    return index


def constant_index(j: int, colors: int, n: int) -> int:
    """Position of the constant map with value j among maps of n vertices into ``colors`` colours."""
    return function_index([j] * n, colors)


@dataclass(frozen=True)
class CanonicalColoring:
    """The product H x K_c^H and its colouring (v, f) -> f(v)."""

    product: Graph
    coloring: Coloring
    c: int

    @property
    def proper(self) -> bool:
        return is_proper_coloring(self.product, self.coloring)


def canonical_coloring(h: Graph, c: int) -> CanonicalColoring:
    """Colour vertex (v, f) of H x K_c^H by f(v).

    K_c^H carries loops once c reaches the chromatic number of H; those
    maps pair with H's vertices as ordinary self-adjacent vertices and the
    product stays loop-free.
    """
    if c < 1:
        raise GraphError("need c >= 1")
    h.require_loop_free("canonical colouring base")
    check_guard(c ** h.n * h.n, "H x K_c^H")
    exp = exponential_graph(c, h)
    product = categorical_product(h, exp, allow_loops=True)
    table = function_tables(c, h.n)
    colors = table.T.ravel().tolist()
    return CanonicalColoring(product, Coloring(tuple(colors), c), c)


@dataclass(frozen=True)
class BlockDecomposition:
    """Block i of K_{cd}^H holds the maps with every value in {ic+1, ..., ic+c}.

    ``blocks[i][p]`` is the vertex of K_{cd}^H that corresponds to vertex p
    of K_c^H after subtracting ic from every value.
    """

    c: int
    d: int
    base: Graph
    graph: Graph
    blocks: tuple[tuple[int, ...], ...]
    small: Graph

    def block_isomorphic(self, i: int) -> bool:
        """Whether the shift j -> j - ic carries block i onto K_c^H, edges and loops alike."""
        block = self.blocks[i]
        if len(block) != self.small.n:
            return False
        position = {v: p for p, v in enumerate(block)}
        mask = mask_of(block)
        for p, v in enumerate(block):
            row = 0
            for u in iter_bits(self.graph.adj[v] & mask):
                row |= 1 << position[u]
            if row != self.small.adj[p]:
                return False
            if (v in self.graph.loops) != (p in self.small.loops):
                return False
        return True

    def all_isomorphic(self) -> bool:
        return all(self.block_isomorphic(i) for i in range(self.d))

    def disjoint(self) -> bool:
        seen: set[int] = set()
        for block in self.blocks:
            if seen & set(block):
                return False
            seen |= set(block)
        return True


def block_decomposition(h: Graph, c: int, d: int) -> BlockDecomposition:
    if c < 1 or d < 1:
        raise GraphError("need c >= 1 and d >= 1")
    total = c * d
    big = exponential_graph(total, h)
    small = exponential_graph(c, h)
    table = function_tables(c, h.n)
    blocks = []
    for i in range(d):
        blocks.append(tuple(function_index([int(x) + i * c for x in row], total) for row in table))
    return BlockDecomposition(c, d, h, big, tuple(blocks), small)


def verify_blocks_totally_joined(dec: BlockDecomposition) -> bool:
    """Every vertex of each block is adjacent to every vertex of every other block."""
    adj = dec.graph.adj
    masks = [mask_of(b) for b in dec.blocks]
    for i, block in enumerate(dec.blocks):
        others = 0
        for j, m in enumerate(masks):
            if j != i:
                others |= m
        for v in block:
            if adj[v] & others != others:
                return False
    return True


def constant_clique_check(h: Graph, cd: int, i: int) -> bool:
    """In K_{cd+i}^H the constant maps cd+1..cd+i are pairwise adjacent and see every map into {1..cd}."""
    if not h.edge_count:
        raise GraphError("the constant-map argument needs a base graph with an edge")
    if i == 0:
        return True
    colors = cd + i
    g = exponential_graph(colors, h)
    table = function_tables(colors, h.n)
    low = mask_of(int(f) for f in (table.max(axis=1) <= cd).nonzero()[0])
    consts = [constant_index(j, colors, h.n) for j in range(cd + 1, colors + 1)]
    const_mask = mask_of(consts)
    for v in consts:
        if v in g.loops:
            return False
        if g.adj[v] & const_mask != const_mask & ~(1 << v):
            return False
        if g.adj[v] & low != low:
            return False
    return True


_CORE_CHI: dict[tuple[int, str], tuple[int, ChromaticCertificate]] = {}


def core_chromatic(h: Graph, c: int, budget: Budget | None = None) -> tuple[int, ChromaticCertificate]:
    """(number of looped maps, chromatic certificate of the loop-free core) for K_c^H.  Memoised."""
    key = (c, graph_key(h))
    if key not in _CORE_CHI:
        g = exponential_graph(c, h)
        core, _ = g.loop_free_core()
        _CORE_CHI[key] = (len(g.loops), chromatic_number(core, budget))
    return _CORE_CHI[key]


def chromatic_superadditivity_check(
    h: Graph, c: int, d: int, budget: Budget | None = None, *, name: str | None = None
) -> Report:
    """chi(core K_{cd}^H) >= d * chi(core K_c^H), asserted when H has an edge."""
    instance = f"{name or graph_key(h)[:12]} c={c} d={d}"
    try:
        loops_small, small = core_chromatic(h, c, budget)
        loops_big, big = core_chromatic(h, c * d, budget)
    except BudgetExceeded as exc:
        return Report("chromatic_superadditivity", instance, {"lower": exc.lower, "upper": exc.upper}, verdict=BUDGET, note=str(exc))
    holds = big.value >= d * small.value
    values = {
        "chi_small": small.value,
        "chi_large": big.value,
        "loops_small": loops_small,
        "loops_large": loops_big,
    }
    verdict = PASS if holds or not h.edge_count else FAIL
    return Report(
        "chromatic_superadditivity",
        instance,
        values,
        certificate=f"chromatic:{big.lower_bound_reason['kind']}",
        nodes=small.nodes + big.nodes,
        verdict=verdict,
        note="loop-free cores",
    )


def constant_clique_report(
    h: Graph, cd: int, i: int, budget: Budget | None = None, *, name: str | None = None
) -> Report:
    """Adjacency check plus chi(core K_{cd+i}^H) >= chi(core K_{cd}^H) + i."""
    instance = f"{name or graph_key(h)[:12]} cd={cd} i={i}"
    joined = constant_clique_check(h, cd, i)
    try:
        _, base = core_chromatic(h, cd, budget)
        _, more = core_chromatic(h, cd + i, budget)
    except BudgetExceeded as exc:
        return Report("constant_clique", instance, {"joined": joined}, verdict=BUDGET, note=str(exc))
    values = {"joined": joined, "chi_base": base.value, "chi_extended": more.value}
    verdict = PASS if joined and more.value >= base.value + i else FAIL
    return Report("constant_clique", instance, values, nodes=base.nodes + more.nodes, verdict=verdict, note="loop-free cores")
