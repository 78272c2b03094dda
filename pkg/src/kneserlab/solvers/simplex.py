"""Exact revised simplex for vertex-covering LPs over independent sets.

Solves  min sum(x_S)  s.t.  for every vertex v: sum_{S containing v} x_S >= 1,  x >= 0,
with set columns supplied incrementally (column generation) and one surplus
column per vertex.  The basis inverse
is kept fraction-free: integer numerators over one common denominator ``D``,
updated with the Bareiss rule so every division is exact.  The leaving row is
chosen by the lexicographic ratio test, which rules out cycling whatever
entering column the caller picks.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .budget import Budget, resolve


class CoveringLP:
    """Basis starts as the singleton sets {v}, which is primal feasible (x = 1).

    Basis entries are set-column ids (>= 0) or ``-(v + 1)`` for the surplus
    variable of vertex v.
    """

    def __init__(self, n: int, budget: Budget | None = None):
        self.n = n
        self.budget = resolve(budget)
        self.columns: list[tuple[int, ...]] = [(v,) for v in range(n)]
        self.index: dict[tuple[int, ...], int] = {c: i for i, c in enumerate(self.columns)}
        self.basis: list[int] = list(range(n))
        self.binv: list[list[int]] = [[int(i == j) for j in range(n)] for i in range(n)]
        self.x: list[int] = [1] * n
        self.D = 1
        self.pivots = 0

    def add_column(self, s: Sequence[int]) -> int:
        key = tuple(sorted(s))
        if key not in self.index:
            self.index[key] = len(self.columns)
            self.columns.append(key)
        return self.index[key]

    # -- prices ----------------------------------------------------------------

    def dual_numerators(self) -> list[int]:
        """Vertex prices times ``D``."""
        rows = [row for row, col in zip(self.binv, self.basis) if col >= 0]
        return [sum(col) for col in zip(*rows)] if rows else [0] * self.n

    def reduced_cost(self, col: int, pi: Sequence[int]) -> int:
        """Reduced cost of a set column, times ``D``."""
        return self.D - sum(pi[v] for v in self.columns[col])

    def _direction(self, col: int) -> list[int]:
        if col < 0:
            v = -col - 1
            return [-row[v] for row in self.binv]
        members = self.columns[col]
        return [sum(row[v] for v in members) for row in self.binv]

    def enter(self, col: int) -> None:
        self.budget.tick()
        d = self._direction(col)
        r = None
        for i, di in enumerate(d):
            if di <= 0:
                continue
            if r is None or self._lex_less(i, di, r, d[r]):
                r = i
        if r is None:
            raise ArithmeticError("covering LP reported unbounded")
        p = d[r]
        D = self.D
        prow = self.binv[r]
        px = self.x[r]
        for i in range(self.n):
            if i == r:
                continue
            f = d[i]
            row = self.binv[i]
            if f:
                self.binv[i] = [(a * p - f * b) // D for a, b in zip(row, prow)]
                self.x[i] = (self.x[i] * p - f * px) // D
            elif p != D:
                self.binv[i] = [a * p // D for a in row]
                self.x[i] = self.x[i] * p // D
        self.basis[r] = col
        self.D = p
        self.pivots += 1

    def _lex_less(self, i: int, di: int, j: int, dj: int) -> bool:
        a, b = self.x[i] * dj, self.x[j] * di
        if a != b:
            return a < b
        for u, w in zip(self.binv[i], self.binv[j]):
            a, b = u * dj, w * di
            if a != b:
                return a < b
        return False

    # -- readout ---------------------------------------------------------------

    def value(self) -> Fraction:
        return Fraction(sum(x for x, col in zip(self.x, self.basis) if col >= 0), self.D)

    def solution(self) -> list[tuple[tuple[int, ...], Fraction]]:
        out = []
        for x, col in zip(self.x, self.basis):
            if col >= 0 and x:
                out.append((self.columns[col], Fraction(x, self.D)))
        return out
