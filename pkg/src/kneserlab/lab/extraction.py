"""Reading a Kneser homomorphism off a colouring of a block-structured graph.

Take c-subsets A of {1..cd} and a vertex set R_A for each.  If a proper
colouring uses at least c+1 colours on every R_A, send A to the c+1
smallest of those colours.  When R_A and R_B are totally joined for disjoint
A and B, their colour sets are disjoint, so the map is a homomorphism
K(cd, c) -> K(x, c+1) where x is the palette size.

Two sources of blocks are provided: the maps of K_{cd}^H with image inside
A, and a synthetic lexicographic product K(cd, c)[K_{c+1}] in which every
block is a (c+1)-clique, so the colour-count hypothesis holds for any proper
colouring.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Sequence

from ..graph import (
    Coloring,
    Graph,
    GraphError,
    Homomorphism,
    complete,
    exponential_graph,
    is_proper_coloring,
    kneser,
    lexicographic_product,
)
from ..solvers.coloring import greedy_coloring


class RegimeError(Exception):
    """Some block uses at most c colours, so the extraction hypothesis fails at this size."""

    def __init__(self, subset: tuple[int, ...], used: int, c: int):
        noun = "colour" if used == 1 else "colours"
        super().__init__(f"block of subset {{{','.join(map(str, subset))}}} uses {used} {noun}; need at least {c + 1}")
        self.subset = subset
        self.used = used
        self.c = c


@dataclass(frozen=True)
class KneserExtraction:
    c: int
    d: int
    palette: int
    subsets: tuple[tuple[int, ...], ...]
    images: tuple[tuple[int, ...], ...]
    hom: Homomorphism

    def to_obj(self) -> dict:
        return {
            "c": self.c,
            "d": self.d,
            "palette": self.palette,
            "images": [[list(a), list(b)] for a, b in zip(self.subsets, self.images)],
        }


def subset_rank(elements: Sequence[int], m: int) -> int:
    """Position of a sorted subset of {1..m} among the subsets of its size in lexicographic order."""
    size = len(elements)
    rank = 0
    prev = 0
    for i, e in enumerate(elements):
        for skipped in range(prev + 1, e):
            rank += math.comb(m - skipped, size - i - 1)
        prev = e
    return rank


def extract_from_blocks(
    subsets: Sequence[tuple[int, ...]],
    blocks: Sequence[Sequence[int]],
    colors: Sequence[int],
    c: int,
    d: int,
    palette: int,
) -> KneserExtraction:
    """Send each subset to the c+1 smallest colours on its block and check the result.

    ``subsets`` must list the vertices of K(cd, c) in its vertex order.
    """
    images = []
    for subset, block in zip(subsets, blocks):
        used = sorted({colors[v] for v in block})
        if len(used) < c + 1:
            raise RegimeError(tuple(subset), len(used), c)
        images.append(tuple(used[: c + 1]))
    source = kneser(c * d, c)
    for u, v in source.edges():
        if set(images[u]) & set(images[v]):
            raise GraphError("extracted map is not a homomorphism; are the blocks totally joined?")
    hom = Homomorphism(tuple(subset_rank(img, palette) for img in images))
    return KneserExtraction(c, d, palette, tuple(tuple(s) for s in subsets), tuple(images), hom)


def exponential_blocks(h: Graph, c: int, d: int) -> tuple[Graph, list[tuple[int, ...]], list[list[int]]]:
    """The loop-free core of K_{cd}^H and, per c-subset A, the core vertices with image inside A."""
    big = exponential_graph(c * d, h)
    core, keep = big.loop_free_core()
    source = kneser(c * d, c)
    subsets = [source.label(a).elements for a in range(source.n)]
    images = [big.label(v).image for v in keep]
    blocks = [[p for p, img in enumerate(images) if img <= set(a)] for a in subsets]
    return core, subsets, blocks


def extract_kneser_hom(h: Graph, c: int, d: int, coloring: Coloring) -> KneserExtraction:
    """Extraction over K_{cd}^H.  ``coloring`` colours its loop-free core (all of it when loop-free)."""
    core, subsets, blocks = exponential_blocks(h, c, d)
    if len(coloring.colors) != core.n:
        raise GraphError(f"colouring has {len(coloring.colors)} entries; the loop-free core has {core.n} vertices")
    if not is_proper_coloring(core, coloring):
        raise GraphError("colouring is not proper")
    return extract_from_blocks(subsets, blocks, coloring.colors, c, d, coloring.palette_size)


def synthetic_block_graph(c: int, d: int) -> tuple[Graph, list[tuple[int, ...]], list[list[int]]]:
    """K(cd, c)[K_{c+1}]: block A is a (c+1)-clique, fully joined to every block disjoint from A."""
    source = kneser(c * d, c)
    g = lexicographic_product(source, complete(c + 1))
    subsets = [source.label(a).elements for a in range(source.n)]
    blocks = [list(range(a * (c + 1), (a + 1) * (c + 1))) for a in range(source.n)]
    return g, subsets, blocks


def shuffled_coloring(g: Graph, seed: int) -> Coloring:
    """First-fit colouring along a seeded random vertex order."""
    order = list(range(g.n))
    random.Random(seed).shuffle(order)
    colors = greedy_coloring(g, order)
    return Coloring.of(colors)


def extract_synthetic(c: int, d: int, coloring: Coloring) -> KneserExtraction:
    g, subsets, blocks = synthetic_block_graph(c, d)
    if not is_proper_coloring(g, coloring):
        raise GraphError("colouring is not proper")
    return extract_from_blocks(subsets, blocks, coloring.colors, c, d, coloring.palette_size)
