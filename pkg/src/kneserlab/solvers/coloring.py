"""Exact chromatic number: clique-seeded DSATUR branch and bound.

The exact search decides k-colourability with forward checking.  The next
vertex is the lowest-index uncoloured vertex of maximum saturation; colours
are tried in ascending order and at most one fresh colour is opened per
node, which removes the palette symmetry.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Sequence

from ..graph import Coloring, Graph, iter_bits
from .budget import Budget, BudgetExceeded, resolve
from .clique import greedy_clique, max_clique

EXACT_CLIQUE_LIMIT = 400
CLIQUE_NODE_CAP = 200_000
HEAP_MIN_VERTICES = 512


@dataclass(frozen=True)
class ChromaticCertificate:
    value: int
    witness_coloring: Coloring
    lower_bound_reason: dict = field(compare=True)
    nodes: int = field(default=0, compare=False)

    def to_obj(self) -> dict:
        return {
            "value": self.value,
            "coloring": list(self.witness_coloring.colors),
            "lower_bound": self.lower_bound_reason,
        }


def normalize_colors(colors: Sequence[int]) -> tuple[int, ...]:
    """Renumber colours 1, 2, ... in order of first appearance."""
    remap: dict[int, int] = {}
    out = []
    for c in colors:
        if c not in remap:
            remap[c] = len(remap) + 1
        out.append(remap[c])
    return tuple(out)


def greedy_coloring(g: Graph, order: Sequence[int] | None = None) -> list[int]:
    """First-fit colouring along ``order`` (default: vertex order).  Colours start at 1."""
    g.require_loop_free("greedy colouring")
    if order is None:
        order = range(g.n)
    order = list(order)
    if sorted(order) != list(range(g.n)):
        raise ValueError("order must be a permutation of the vertices")
    colors = [0] * g.n
    classes: list[int] = []  # vertex bitset per colour
    for v in order:
        row = g.adj[v]
        for c, members in enumerate(classes):
            if not row & members:
                classes[c] = members | (1 << v)
                colors[v] = c + 1
                break
        else:
            classes.append(1 << v)
            colors[v] = len(classes)
    return colors


def greedy_upper_bound(g: Graph, order: Sequence[int] | None = None) -> int:
    """Number of colours first-fit uses along ``order``; never below the chromatic number."""
    return max(greedy_coloring(g, order), default=0)


def dsatur_coloring(g: Graph) -> list[int]:
    """Heuristic DSATUR (saturation, then degree, then index)."""
    g.require_loop_free("DSATUR")
    n = g.n
    adj = g.adj
    colors = [0] * n
    seen = [0] * n  # bitset of neighbour colours
    sat = [0] * n
    deg = [g.degree(v) for v in range(n)]
    heap = [(0, -deg[v], v) for v in range(n)]
    heapq.heapify(heap)
    while heap:
        neg_sat, _, v = heapq.heappop(heap)
        if colors[v] or -neg_sat != sat[v]:
            continue
        mask = seen[v] | 1
        c = (~mask & (mask + 1)).bit_length() - 1
        colors[v] = c
        bit = 1 << c
        for u in iter_bits(adj[v]):
            if not colors[u] and not seen[u] & bit:
                seen[u] |= bit
                sat[u] += 1
                heapq.heappush(heap, (-sat[u], -deg[u], u))
    return colors


def iterated_greedy(g: Graph, colors: list[int], rounds: int = 12) -> list[int]:
    """Culberson's iterated greedy: re-run first fit over colour classes; never adds colours."""
    best = list(colors)
    best_k = max(best, default=0)
    cur = best
    for r in range(rounds):
        classes: dict[int, list[int]] = {}
        for v, c in enumerate(cur):
            classes.setdefault(c, []).append(v)
        keys = sorted(classes)
        if r % 3 == 0:
            keys.reverse()
        elif r % 3 == 1:
            keys.sort(key=lambda c: (-len(classes[c]), c))
        else:
            keys.sort(key=lambda c: (len(classes[c]), c))
        order = [v for c in keys for v in classes[c]]
        cur = greedy_coloring(g, order)
        k = max(cur, default=0)
        if k < best_k:
            best, best_k = cur, k
    return best


def k_coloring(
    g: Graph,
    k: int,
    budget: Budget | None = None,
    seed_clique: Sequence[int] = (),
) -> list[int] | None:
    """A proper colouring with colours 1..k, or None if none exists (proved by exhaustion)."""
    g.require_loop_free("colouring search")
    budget = resolve(budget)
    n = g.n
    if n == 0:
        return []
    if k <= 0:
        return None
    adj = g.adj
    full = (1 << k) - 1
    dom = [full] * n
    color = [0] * n
    uncolored = (1 << n) - 1
    trail: list[tuple[int, int]] = []

    def assign(v: int, c: int) -> bool:
        nonlocal uncolored
        color[v] = c + 1
        uncolored &= ~(1 << v)
        bit = 1 << c
        ok = True
        for u in iter_bits(adj[v] & uncolored):
            d = dom[u]
            if d & bit:
                trail.append((u, d))
                d ^= bit
                dom[u] = d
                if not d:
                    ok = False
                    break
                if use_heap:
                    heapq.heappush(heap, (d.bit_count(), u))
        return ok

    def unassign(v: int, mark: int) -> None:
        nonlocal uncolored
        while len(trail) > mark:
            u, d = trail.pop()
            dom[u] = d
            if use_heap:
                heapq.heappush(heap, (d.bit_count(), u))
        color[v] = 0
        uncolored |= 1 << v
        if use_heap:
            heapq.heappush(heap, (dom[v].bit_count(), v))

    # large graphs keep a lazy heap of (domain size, vertex); small ones rescan
    use_heap = n > HEAP_MIN_VERTICES
    heap: list[tuple[int, int]] = []
    # the seed clique takes colours 1..|clique| outright
    if len(seed_clique) > k:
        return None
    top = 0
    for i, v in enumerate(seed_clique):
        if not dom[v] >> i & 1 or not assign(v, i):
            return None
        top = i + 1

    if use_heap:
        heap = [(dom[v].bit_count(), v) for v in iter_bits(uncolored)]
        heapq.heapify(heap)

    def select() -> int:
        if use_heap:
            while True:
                size, v = heap[0]
                if uncolored >> v & 1 and dom[v].bit_count() == size:
                    return v
                heapq.heappop(heap)
        best_v, best_size = -1, k + 1
        for v in iter_bits(uncolored):
            s = dom[v].bit_count()
            if s < best_size:
                best_v, best_size = v, s
                if s <= 1:
                    break
        return best_v

    # frame: [vertex, remaining candidate bits, trail mark, top before]
    stack: list[list[int]] = []
    while True:
        if not uncolored:
            return color[:]
        budget.tick()
        v = select()
        cands = dom[v] & ((1 << min(top + 1, k)) - 1)
        stack.append([v, cands, len(trail), top])
        while stack:
            frame = stack[-1]
            v, cands, mark, prev_top = frame
            if not cands:
                stack.pop()
                if stack:
                    # undo the parent's current choice and move on to its next candidate
                    pv, _, pmark, ptop = stack[-1]
                    unassign(pv, pmark)
                    top = ptop
                continue
            low = cands & -cands
            frame[1] = cands ^ low
            c = low.bit_length() - 1
            if assign(v, c):
                top = max(prev_top, c + 1)
                break
            unassign(v, mark)
            budget.tick()
        else:
            return None


def _lower_bound_clique(g: Graph, budget: Budget) -> list[int]:
    if g.n <= EXACT_CLIQUE_LIMIT:
        cap = Budget(nodes=CLIQUE_NODE_CAP, cancel=budget.cancel)
        try:
            clique = max_clique(g, cap)
            budget.tick(cap.nodes)
            return clique
        except BudgetExceeded:
            budget.tick(cap.nodes)
    return greedy_clique(g)


def chromatic_number(g: Graph, budget: Budget | None = None) -> ChromaticCertificate:
    """Exact chromatic number with a witness colouring and the reason no fewer colours work."""
    g.require_loop_free("chromatic number")
    budget = resolve(budget)
    start_nodes = budget.nodes
    if g.n == 0:
        return ChromaticCertificate(0, Coloring((), 0), {"kind": "empty"}, 0)
    clique = _lower_bound_clique(g, budget)
    lb = len(clique)
    colors = dsatur_coloring(g)
    if max(colors) > lb:
        colors = iterated_greedy(g, colors)
    ub = max(colors)
    reason: dict = {"kind": "clique", "clique": list(clique)}
    while ub > lb:
        try:
            found = k_coloring(g, ub - 1, budget, clique)
        except BudgetExceeded as exc:
            raise exc.with_bounds(lb, ub)
        if found is None:
            reason = {"kind": "exhaustion", "refuted_colors": ub - 1, "clique": list(clique)}
            break
        colors = found
        ub = len(set(found))
    witness = Coloring(normalize_colors(colors), ub)
    return ChromaticCertificate(ub, witness, reason, budget.nodes - start_nodes)
