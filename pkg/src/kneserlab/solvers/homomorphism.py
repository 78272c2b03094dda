"""Homomorphism existence by backtracking with arc consistency.

Domains are bitsets over the target's vertices.  A looped target vertex
counts as its own neighbour, so an edge may be mapped onto it.  The search
keeps every edge between unassigned source vertices arc consistent (MAC),
branches on the smallest domain (ties: lowest index) and tries values in
ascending order.

For Kneser targets the caller may pass the subset behind each target vertex.
The ground elements are interchangeable, so a value is only tried if its
elements outside those already used are the smallest unused ones; this is
the usual value-symmetry cut and never loses a solution.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from ..graph import Graph, GraphError, Homomorphism, is_homomorphism, iter_bits, kneser
from .budget import Budget, BudgetExceeded, resolve


@dataclass(frozen=True)
class NoHom:
    """Proof token: the search was exhausted without finding a homomorphism."""

    nodes: int = 0

    def __bool__(self) -> bool:
        return False


class _Search:
    def __init__(self, g: Graph, h: Graph, budget: Budget, subsets: Sequence[Sequence[int]] | None):
        self.g = g
        self.h = h
        self.budget = budget
        # closed neighbourhoods only for looped target vertices
        self.nbr = [row | (1 << a if a in h.loops else 0) for a, row in enumerate(h.adj)]
        self.subset_masks = None if subsets is None else [sum(1 << (e - 1) for e in s) for s in subsets]
        self.image = [-1] * g.n

    def initial_domains(self) -> list[int] | None:
        full = (1 << self.h.n) - 1
        has_nbr = 0
        for a, row in enumerate(self.nbr):
            if row:
                has_nbr |= 1 << a
        doms = [has_nbr if self.g.adj[v] else full for v in range(self.g.n)]
        return doms if self.propagate(doms, deque(range(self.g.n))) else None

    def support(self, dom_w: int) -> int:
        """Target vertices with at least one neighbour in ``dom_w``."""
        out = 0
        for b in iter_bits(dom_w):
            out |= self.nbr[b]
        return out

    def propagate(self, doms: list[int], queue: deque) -> bool:
        """Arc consistency over unassigned edges, restarting from the changed vertices."""
        adj = self.g.adj
        image = self.image
        queued = set(queue)
        while queue:
            w = queue.popleft()
            queued.discard(w)
            reach = self.support(doms[w])
            for u in iter_bits(adj[w]):
                if image[u] >= 0:
                    continue
                d = doms[u] & reach
                if d != doms[u]:
                    if not d:
                        return False
                    doms[u] = d
                    if u not in queued:
                        queued.add(u)
                        queue.append(u)
        return True

    def values(self, v: int, dom: int) -> list[int]:
        vals = list(iter_bits(dom))
        if self.subset_masks is None:
            return vals
        used = 0
        for a in self.image:
            if a >= 0:
                used |= self.subset_masks[a]
        out = []
        for a in vals:
            fresh = self.subset_masks[a] & ~used
            if fresh:
                # fresh elements must be the lowest unused ones
                free = ~used
                need = fresh.bit_count()
                lowest = 0
                while need:
                    low = free & -free
                    lowest |= low
                    free ^= low
                    need -= 1
                if fresh != lowest:
                    continue
            out.append(a)
        return out

    def run(self) -> list[int] | None:
        doms = self.initial_domains()
        if doms is None:
            return None
        return self.solve(doms)

    def solve(self, doms: list[int]) -> list[int] | None:
        self.budget.tick()
        image = self.image
        pick, size = -1, self.h.n + 1
        for v in range(self.g.n):
            if image[v] < 0:
                s = doms[v].bit_count()
                if s < size:
                    pick, size = v, s
        if pick < 0:
            return list(image)
        for a in self.values(pick, doms[pick]):
            child = list(doms)
            child[pick] = 1 << a
            image[pick] = a
            if self.propagate(child, deque([pick])):
                found = self.solve(child)
                if found is not None:
                    return found
            image[pick] = -1
        return None


def homomorphism_exists(
    g: Graph,
    h: Graph,
    budget: Budget | None = None,
    *,
    subsets: Sequence[Sequence[int]] | None = None,
) -> Homomorphism | NoHom:
    """A homomorphism G -> H, or a NoHom token once the search is exhausted.

    ``subsets`` (optional) names the ground-set subset behind each vertex of a
    Kneser target and switches on the value-symmetry cut.
    """
    g.require_loop_free("homomorphism source")
    if subsets is not None and len(subsets) != h.n:
        raise GraphError("need one subset per target vertex")
    budget = resolve(budget)
    start = budget.nodes
    if g.n == 0:
        return Homomorphism(())
    if h.n == 0:
        return NoHom(0)
    search = _Search(g, h, budget, subsets)
    found = search.run()
    if found is None:
        return NoHom(budget.nodes - start)
    hom = Homomorphism(tuple(found))
    assert is_homomorphism(g, h, hom)
    return hom


@dataclass(frozen=True)
class SetColoring:
    """Each vertex gets a k-subset of {1..m}; adjacent vertices get disjoint subsets."""

    sets: tuple[tuple[int, ...], ...]
    m: int
    k: int

    def __post_init__(self) -> None:
        for s in self.sets:
            if len(s) != self.k or len(set(s)) != self.k or any(not 1 <= e <= self.m for e in s):
                raise GraphError(f"{s} is not a {self.k}-subset of 1..{self.m}")

    def is_valid(self, g: Graph) -> bool:
        if len(self.sets) != g.n or g.loops:
            return False
        return all(not set(self.sets[u]) & set(self.sets[v]) for u, v in g.edges())

    def to_obj(self) -> dict:
        return {"m": self.m, "k": self.k, "sets": [list(s) for s in self.sets]}


@dataclass(frozen=True)
class MultichromaticResult:
    value: int
    witness: SetColoring
    start: int
    refuted: tuple[int, ...]
    nodes: int = 0

    def to_obj(self) -> dict:
        return {"value": self.value, "witness": self.witness.to_obj(), "start": self.start, "refuted": list(self.refuted)}


def multichromatic_start(g: Graph, k: int, budget: Budget | None = None) -> int:
    """max(k * clique number, ceil(k * fractional chromatic number)), and at least k."""
    from .clique import max_clique
    from .fractional import fractional_chromatic

    if g.n == 0:
        return k
    omega = len(max_clique(g, budget))
    frac = fractional_chromatic(g, budget).value
    return max(k, k * omega, math.ceil(k * frac))


def multichromatic_number(g: Graph, k: int, budget: Budget | None = None, *, max_palette: int | None = None) -> MultichromaticResult:
    """Least m with a homomorphism into K(m,k), scanning m upward from the clique and LP bounds.

    ``max_palette`` caps the scan; exceeding it raises BudgetExceeded with the
    bounds reached.
    """
    if k < 1:
        raise GraphError("k must be positive")
    g.require_loop_free("multichromatic number")
    budget = resolve(budget)
    start_nodes = budget.nodes
    m = multichromatic_start(g, k, budget)
    start = m
    refuted: list[int] = []
    while True:
        if max_palette is not None and m > max_palette:
            raise BudgetExceeded(f"no homomorphism into K(m,{k}) for m <= {max_palette}", lower=m, upper=None)
        target = kneser(m, k)
        subsets = [target.label(a).elements for a in range(target.n)]
        try:
            found = homomorphism_exists(g, target, budget, subsets=subsets)
        except BudgetExceeded as exc:
            raise exc.with_bounds(m, None)
        if found:
            sets = tuple(subsets[a] for a in found.map)
            return MultichromaticResult(m, SetColoring(sets, m, k), start, tuple(refuted), budget.nodes - start_nodes)
        refuted.append(m)
        m += 1
