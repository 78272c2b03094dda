"""Compiled maximum-weight independent set search on multiword bitsets.

Same branch and bound as the pure-Python search (take isolated candidates,
greedy clique-cover bound, branch on the candidate of largest degree), run
with an explicit stack so numba can compile it.  Weights are int64; callers
must make sure sums cannot overflow.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _popcount(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return int((x * np.uint64(0x0101010101010101)) >> np.uint64(56))


@njit(cache=True)
def _lowest(words, nw):
    for i in range(nw):
        x = words[i]
        if x:
            low = x & (~x + np.uint64(1))
            return i * 64 + _popcount(low - np.uint64(1))
    return -1


@njit(cache=True)
def _bound(adj, w, cand, scratch, common, nw):
    for i in range(nw):
        scratch[i] = cand[i]
    total = 0
    while True:
        v = _lowest(scratch, nw)
        if v < 0:
            return total
        heavy = w[v]
        scratch[v >> 6] &= ~(np.uint64(1) << np.uint64(v & 63))
        for i in range(nw):
            common[i] = adj[v, i] & scratch[i]
        while True:
            u = _lowest(common, nw)
            if u < 0:
                break
            for i in range(nw):
                common[i] &= adj[u, i]
            scratch[u >> 6] &= ~(np.uint64(1) << np.uint64(u & 63))
            if w[u] > heavy:
                heavy = w[u]
        total += heavy


@njit(cache=True)
def pack_adjacency(dense, order):
    """Bitset rows of the graph renumbered so that new vertex i is old vertex order[i]."""
    n = dense.shape[0]
    nw = (n + 63) // 64
    pos = np.empty(n, dtype=np.int64)
    for i in range(n):
        pos[order[i]] = i
    adj = np.zeros((n, nw), dtype=np.uint64)
    for i in range(n):
        row = dense[order[i]]
        for u in range(n):
            if row[u]:
                j = pos[u]
                adj[i, j >> 6] |= np.uint64(1) << np.uint64(j & 63)
    return adj


@njit(cache=True)
def _first_level(w, nw):
    cand = np.zeros((w.shape[0] + 2, nw), dtype=np.uint64)
    for v in range(w.shape[0]):
        if w[v] > 0:
            cand[0, v >> 6] |= np.uint64(1) << np.uint64(v & 63)
    return cand


def new_state(n: int, nw: int, w: np.ndarray, threshold: int) -> tuple:
    """Search state: per-depth candidate and chosen words, weights, stages, picks, best, top."""
    cand = _first_level(w, nw)
    return (
        cand,
        np.zeros((n + 2, nw), dtype=np.uint64),
        np.zeros(n + 2, dtype=np.int64),
        np.zeros(n + 2, dtype=np.int64),
        np.zeros(n + 2, dtype=np.int64),
        np.zeros(nw, dtype=np.uint64),
        np.array([threshold, 0], dtype=np.int64),
    )


@njit(cache=True)
def run_kernel(adj, w, cand, chosen, weight, stage, pick, best_words, status, chunk):
    """Advance the search by at most ``chunk`` nodes; returns nodes expanded.

    ``status`` holds [best weight, stack top]; the search is finished once the
    top is negative.  Best weight still equal to the threshold means nothing heavier.
    """
    n = adj.shape[0]
    nw = adj.shape[1]
    scratch = np.zeros(nw, dtype=np.uint64)
    common = np.zeros(nw, dtype=np.uint64)
    best = status[0]
    top = status[1]
    nodes = 0
    while top >= 0:
        if stage[top] == 0:
            if nodes == chunk:
                break
            nodes += 1
            # take candidates with no candidate neighbour
            for v in range(n):
                if cand[top, v >> 6] >> np.uint64(v & 63) & np.uint64(1):
                    lonely = True
                    for i in range(nw):
                        if adj[v, i] & cand[top, i]:
                            lonely = False
                            break
                    if lonely:
                        bit = np.uint64(1) << np.uint64(v & 63)
                        cand[top, v >> 6] &= ~bit
                        chosen[top, v >> 6] |= bit
                        weight[top] += w[v]
            if _lowest(cand[top], nw) < 0:
                if weight[top] > best:
                    best = weight[top]
                    for i in range(nw):
                        best_words[i] = chosen[top, i]
                top -= 1
                continue
            if weight[top] + _bound(adj, w, cand[top], scratch, common, nw) <= best:
                top -= 1
                continue
            p, deg = -1, -1
            for v in range(n):
                if cand[top, v >> 6] >> np.uint64(v & 63) & np.uint64(1):
                    d = 0
                    for i in range(nw):
                        d += _popcount(adj[v, i] & cand[top, i])
                    if d > deg:
                        p, deg = v, d
            pick[top] = p
            stage[top] = 1
            bit = np.uint64(1) << np.uint64(p & 63)
            for i in range(nw):
                cand[top + 1, i] = cand[top, i] & ~adj[p, i]
                chosen[top + 1, i] = chosen[top, i]
            cand[top + 1, p >> 6] &= ~bit
            chosen[top + 1, p >> 6] |= bit
            weight[top + 1] = weight[top] + w[p]
            stage[top + 1] = 0
            top += 1
        elif stage[top] == 1:
            p = pick[top]
            stage[top] = 2
            for i in range(nw):
                cand[top + 1, i] = cand[top, i]
                chosen[top + 1, i] = chosen[top, i]
            cand[top + 1, p >> 6] &= ~(np.uint64(1) << np.uint64(p & 63))
            weight[top + 1] = weight[top]
            stage[top + 1] = 0
            top += 1
        else:
            top -= 1
    status[0] = best
    status[1] = top
    return nodes
