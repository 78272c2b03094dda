"""Maximum clique by branch and bound on bitsets (greedy colour-class bound)."""

from __future__ import annotations

from ..graph import Graph, iter_bits
from .budget import Budget, BudgetExceeded, resolve


def _relabel_by_degree(g: Graph) -> tuple[list[int], list[int]]:
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    adj = []
    for v in order:
        row = 0
        for u in iter_bits(g.adj[v]):
            row |= 1 << pos[u]
        adj.append(row)
    return order, adj


def _color_bound(adj: list[int], cand: int) -> tuple[list[int], list[int]]:
    """Greedy colour classes of ``cand``; returns vertices and their class numbers, ascending."""
    verts: list[int] = []
    bounds: list[int] = []
    k = 0
    rest = cand
    while rest:
        k += 1
        q = rest
        while q:
            low = q & -q
            v = low.bit_length() - 1
            q &= ~adj[v] & ~low
            rest ^= low
            verts.append(v)
            bounds.append(k)
    return verts, bounds


def greedy_clique(g: Graph, starts: int = 32) -> list[int]:
    """Cheap clique for a lower bound: grow from high-degree starts, picking the best-connected candidate."""
    g.require_loop_free("clique search")
    if g.n == 0:
        return []
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    best: list[int] = [order[0]]
    adj = g.adj
    for s in order[:starts]:
        clique = [s]
        cand = adj[s]
        while cand:
            pick, pick_deg = -1, -1
            for u in iter_bits(cand):
                d = (adj[u] & cand).bit_count()
                if d > pick_deg:
                    pick, pick_deg = u, d
            clique.append(pick)
            cand &= adj[pick]
        if len(clique) > len(best):
            best = clique
    return sorted(best)


def max_clique(g: Graph, budget: Budget | None = None) -> list[int]:
    """A maximum clique (sorted vertex list).  Exact; raises BudgetExceeded with bounds."""
    g.require_loop_free("clique search")
    budget = resolve(budget)
    if g.n == 0:
        return []
    order, adj = _relabel_by_degree(g)
    best = [0]
    best_size = 1

    def expand(clique: list[int], cand: int) -> None:
        nonlocal best, best_size
        budget.tick()
        verts, bounds = _color_bound(adj, cand)
        for i in range(len(verts) - 1, -1, -1):
            if len(clique) + bounds[i] <= best_size:
                return
            v = verts[i]
            clique.append(v)
            sub = cand & adj[v]
            if sub:
                expand(clique, sub)
            elif len(clique) > best_size:
                best = list(clique)
                best_size = len(clique)
            clique.pop()
            cand &= ~(1 << v)

    try:
        expand([], (1 << g.n) - 1)
    except BudgetExceeded as exc:
        raise exc.with_bounds(best_size, None)
    return sorted(order[v] for v in best)


def max_clique_lower_bound(g: Graph, budget: Budget | None = None) -> int:
    """Clique number; a lower bound on the chromatic number."""
    return len(max_clique(g, budget))
