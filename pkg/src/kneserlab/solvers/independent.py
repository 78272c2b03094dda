"""Independent sets: maximal-set enumeration, independence number, heavy-set search."""

from __future__ import annotations

import functools
from typing import Sequence

from ..graph import Graph, complement, iter_bits
from .budget import Budget, BudgetExceeded, resolve
from .clique import max_clique


def enumerate_maximal_independent_sets(
    g: Graph, budget: Budget | None = None, limit: int | None = None
) -> list[tuple[int, ...]]:
    """Every maximal independent set once, as sorted tuples in lexicographic order.

    Bron-Kerbosch with Tomita pivoting, run on the complement.
    """
    g.require_loop_free("independent set enumeration")
    budget = resolve(budget)
    n = g.n
    full = (1 << n) - 1
    # non-neighbourhoods excluding the vertex itself
    co = [full & ~row & ~(1 << v) for v, row in enumerate(g.adj)]
    found: list[int] = []

    def expand(r: int, p: int, x: int) -> None:
        budget.tick()
        if not p:
            if not x:
                found.append(r)
                if limit is not None and len(found) > limit:
                    raise BudgetExceeded(f"more than {limit} maximal independent sets")
            return
        px = p | x
        pivot, best = -1, -1
        for u in iter_bits(px):
            k = (co[u] & p).bit_count()
            if k > best:
                pivot, best = u, k
        for v in iter_bits(p & ~co[pivot]):
            bit = 1 << v
            expand(r | bit, p & co[v], x & co[v])
            p &= ~bit
            x |= bit

    if n:
        expand(0, full, 0)
    else:
        found.append(0)
    return sorted(tuple(iter_bits(s)) for s in found)


def independence_number(g: Graph, budget: Budget | None = None) -> int:
    return len(max_independent_set(g, budget))


def max_independent_set(g: Graph, budget: Budget | None = None) -> list[int]:
    return max_clique(complement(g), budget)


def extend_to_maximal(g: Graph, vertices: Sequence[int], order: Sequence[int] | None = None) -> tuple[int, ...]:
    """Grow an independent set greedily (in ``order``) until it is maximal."""
    chosen = 0
    blocked = 0
    for v in vertices:
        chosen |= 1 << v
        blocked |= g.adj[v] | (1 << v)
    for v in order if order is not None else range(g.n):
        if not blocked >> v & 1:
            chosen |= 1 << v
            blocked |= g.adj[v] | (1 << v)
    return tuple(iter_bits(chosen))


def _improve_by_swaps(g: Graph, w: Sequence[int], chosen: int) -> int:
    """Weighted (omega,1)-swaps: bring in v, drop its chosen neighbours, while that gains weight."""
    adj = g.adj
    improved = True
    while improved:
        improved = False
        for v in range(g.n):
            if chosen >> v & 1 or w[v] <= 0:
                continue
            clash = adj[v] & chosen
            loss = sum(w[u] for u in iter_bits(clash))
            if w[v] > loss:
                chosen = (chosen & ~clash) | (1 << v)
                improved = True
    return chosen


def heavy_independent_sets(g: Graph, weights: Sequence[int], threshold: int) -> list[tuple[int, tuple[int, ...]]]:
    """Independent sets heavier than ``threshold`` found by greedy starts and local search.

    Heuristic: an empty result proves nothing.  Sets come back heaviest first.
    """
    w = list(weights)
    positive = [v for v in range(g.n) if w[v] > 0]
    nbr_weight = [sum(w[u] for u in iter_bits(g.adj[v]) if w[u] > 0) for v in range(g.n)]
    orders = [
        sorted(positive, key=lambda v: (-w[v] * (g.degree(v) + 1) ** -1, v)),
        sorted(positive, key=lambda v: (-w[v], v)),
        sorted(positive, key=lambda v: (nbr_weight[v] - w[v], v)),
        sorted(positive, key=lambda v: (-w[v] / (nbr_weight[v] + 1), v)),
    ]
    found: dict[int, int] = {}
    for order in orders:
        chosen, blocked = 0, 0
        for v in order:
            if not blocked >> v & 1:
                chosen |= 1 << v
                blocked |= g.adj[v] | (1 << v)
        chosen = _improve_by_swaps(g, w, chosen)
        total = sum(w[v] for v in iter_bits(chosen))
        if total > threshold:
            found[chosen] = total
    return sorted(((t, tuple(iter_bits(c))) for c, t in found.items()), key=lambda item: (-item[0], item[1]))


def _chain_dp(chain: list[int], w: list[int]) -> tuple[int, int]:
    """Heaviest independent set on a path given in order; returns (weight, bitset)."""
    take_w, take_s = 0, 0  # best ending with the previous vertex taken
    skip_w, skip_s = 0, 0  # best with the previous vertex not taken
    for v in chain:
        new_take = (skip_w + w[v], skip_s | (1 << v))
        if take_w >= skip_w:
            skip_w, skip_s = take_w, take_s
        take_w, take_s = new_take
    return (take_w, take_s) if take_w >= skip_w else (skip_w, skip_s)


def _component(adj: Sequence[int], cand: int, start: int) -> int:
    members = 1 << start
    frontier = members
    while frontier:
        grow = 0
        for v in iter_bits(frontier):
            grow |= adj[v]
        frontier = grow & cand & ~members
        members |= frontier
    return members


def _walk(adj: Sequence[int], members: int, start: int) -> list[int]:
    order = [start]
    prev = -1
    while True:
        nxt = [u for u in iter_bits(adj[order[-1]] & members) if u != prev and u != start]
        if not nxt:
            return order
        prev = order[-1]
        order.append(nxt[0])


def _paths_and_cycles(adj: Sequence[int], w: list[int], cand: int) -> tuple[int, int]:
    """Exact heaviest independent set when every candidate has at most two candidate neighbours."""
    total, chosen = 0, 0
    rest = cand
    while rest:
        members = _component(adj, cand, (rest & -rest).bit_length() - 1)
        rest &= ~members
        ends = [v for v in iter_bits(members) if (adj[v] & members).bit_count() < 2]
        if ends:
            best = _chain_dp(_walk(adj, members, ends[0]), w)
        else:
            ring = _walk(adj, members, (members & -members).bit_length() - 1)
            first = ring[0]
            skip_first = _chain_dp(ring[1:], w)
            with_first = _chain_dp(ring[2:-1], w)
            with_first = (with_first[0] + w[first], with_first[1] | (1 << first))
            best = skip_first if skip_first[0] >= with_first[0] else with_first
        total += best[0]
        chosen |= best[1]
    return total, chosen


KERNEL_CHUNK = 1 << 16
_INT64_ROOM = 1 << 62


def heaviest_independent_set(
    g: Graph, weights: Sequence[int], threshold: int, budget: Budget | None = None
) -> tuple[int, tuple[int, ...]] | None:
    """Maximum-weight independent set if its weight exceeds ``threshold``, else None.

    Weights are nonnegative integers.  Runs the compiled search when the
    weights fit in int64, the pure-Python one otherwise.  Returning None is a
    proof that no independent set is heavier than ``threshold``.
    """
    if g.n and 0 <= threshold and sum(x for x in weights if x > 0) < _INT64_ROOM:
        return _heaviest_compiled(g, weights, threshold, resolve(budget))
    return heaviest_independent_set_py(g, weights, threshold, budget)


@functools.lru_cache(maxsize=8)
def _dense(g: Graph):
    import numpy as np

    out = np.zeros((g.n, g.n), dtype=np.bool_)
    for v in range(g.n):
        for u in iter_bits(g.adj[v]):
            out[v, u] = True
    return out


def _heaviest_compiled(g: Graph, weights: Sequence[int], threshold: int, budget: Budget):
    import numpy as np

    from ._mwis_kernel import new_state, pack_adjacency, run_kernel

    n = g.n
    nw = (n + 63) // 64
    # heaviest first, so each clique of the bound opens on a heavy vertex
    order = sorted(range(n), key=lambda v: (-weights[v], v))
    adj = pack_adjacency(_dense(g), np.array(order, dtype=np.int64))
    w = np.array([max(weights[v], 0) for v in order], dtype=np.int64)
    state = new_state(n, nw, w, threshold)
    status = state[-1]
    while status[1] >= 0:
        chunk = KERNEL_CHUNK
        if budget.node_limit is not None:
            chunk = max(1, min(chunk, budget.node_limit - budget.nodes + 1))
        done = run_kernel(adj, w, *state, chunk)
        budget.tick(done)
    if status[0] == threshold:
        return None
    words = state[-2]
    chosen = sorted(order[i] for i in range(n) if int(words[i >> 6]) >> (i & 63) & 1)
    return int(status[0]), tuple(chosen)


def heaviest_independent_set_py(
    g: Graph, weights: Sequence[int], threshold: int, budget: Budget | None = None
) -> tuple[int, tuple[int, ...]] | None:
    """Pure-Python twin of :func:`heaviest_independent_set`, for any integer size.

    Weights are nonnegative integers.  Branches on the candidate of largest
    degree; the bound is a greedy clique cover taking the heaviest vertex of
    each clique.  Returning None is a proof that no independent set is heavier
    than ``threshold``.
    """
    budget = resolve(budget)
    adj = g.adj
    w = list(weights)
    best_weight = threshold
    best_set = -1
    start = 0
    for v in range(g.n):
        if w[v] > 0:
            start |= 1 << v

    def bound(cand: int) -> int:
        total = 0
        rest = cand
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            heavy = w[v]
            common = adj[v] & rest
            rest ^= low
            while common:
                lu = common & -common
                u = lu.bit_length() - 1
                common &= adj[u]
                rest ^= lu
                if w[u] > heavy:
                    heavy = w[u]
            total += heavy
        return total

    def search(chosen: int, weight: int, cand: int) -> None:
        nonlocal best_weight, best_set
        budget.tick()
        # isolated candidates are always taken; a pendant vertex at least as
        # heavy as its only neighbour is taken in place of that neighbour
        while True:
            take = 0
            drop = 0
            for v in iter_bits(cand):
                if (take | drop) >> v & 1:
                    continue
                nb = adj[v] & cand & ~drop
                if not nb:
                    take |= 1 << v
                elif nb & (nb - 1) == 0:
                    u = nb.bit_length() - 1
                    if w[v] >= w[u] and not take >> u & 1:
                        take |= 1 << v
                        drop |= nb
            if not take:
                break
            for v in iter_bits(take):
                weight += w[v]
            chosen |= take
            cand &= ~take & ~drop
        if not cand:
            if weight > best_weight:
                best_weight, best_set = weight, chosen
            return
        if weight + bound(cand) <= best_weight:
            return
        pick, deg = -1, -1
        for v in iter_bits(cand):
            d = (adj[v] & cand).bit_count()
            if d > deg:
                pick, deg = v, d
        if deg <= 2:
            extra, taken = _paths_and_cycles(adj, w, cand)
            if weight + extra > best_weight:
                best_weight, best_set = weight + extra, chosen | taken
            return
        bit = 1 << pick
        search(chosen | bit, weight + w[pick], cand & ~adj[pick] & ~bit)
        search(chosen, weight, cand & ~bit)

    search(0, 0, start)
    if best_set < 0:
        return None
    return best_weight, tuple(iter_bits(best_set))
