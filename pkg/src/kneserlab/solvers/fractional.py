"""Exact fractional chromatic number.

Covering LP over maximal independent sets, solved by column generation.
A vertex with a negative price brings its surplus variable into the basis;
otherwise columns are priced from the pool already generated, then by an
exact maximum-weight independent set search.  When that search finds
nothing heavier than 1 the current vertex prices are a dual certificate and
the LP value is the fractional chromatic number.

Methods differ only in how the column pool starts:

* ``"guided"`` (default) first runs column generation with a floating-point
  master, then hands its support columns and a rounded dual to the exact
  loop.  The float numbers are never reported; the exact simplex and the
  exact search decide everything.
* ``"exact"`` starts from colour classes and never touches floating point.
* ``"enumerate"`` loads every maximal independent set up front and uses the
  exact search only as a final check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..graph import Graph, is_independent
from .budget import Budget, resolve
from .coloring import dsatur_coloring
from .independent import (
    enumerate_maximal_independent_sets,
    extend_to_maximal,
    heavy_independent_sets,
    heaviest_independent_set,
)
from .simplex import CoveringLP

# weight of the best dual point so far when pricing (Wentges smoothing)
SMOOTHING = Fraction(4, 5)
# integer resolution of smoothed price vectors
GRID = 1 << 30
# floating-point phase: stop at this relative gap, or when no set beats 1 + 1/FLOAT_SLACK
FLOAT_GAP = 1e-9
FLOAT_SLACK = 1 << 20
FLOAT_SMOOTHING = 0.8
# denominator limits (in bits) tried when rounding a float dual, and the cap on their lcm
HINT_DENOMINATOR_BITS = (8, 12, 16, 20, 24, 28)
HINT_SCALE_BITS = 40


@dataclass(frozen=True)
class FractionalResult:
    value: Fraction
    cover: tuple[tuple[tuple[int, ...], Fraction], ...]
    weights: tuple[Fraction, ...]
    rounds: int = 0

    def to_obj(self) -> dict:
        return {
            "value": str(self.value),
            "cover": [[list(s), str(x)] for s, x in self.cover],
            "weights": [str(y) for y in self.weights],
        }


def _seed_sets(g: Graph) -> list[tuple[int, ...]]:
    by_degree = sorted(range(g.n), key=lambda v: (g.degree(v), v))
    classes: dict[int, list[int]] = {}
    for v, c in enumerate(dsatur_coloring(g)):
        classes.setdefault(c, []).append(v)
    return [extend_to_maximal(g, classes[c], by_degree) for c in sorted(classes)]


def _price_pool(lp: CoveringLP, pi: list[int], in_basis: set[int]) -> int | None:
    best, best_rc = None, 0
    for col in range(len(lp.columns)):
        if col in in_basis:
            continue
        rc = lp.reduced_cost(col, pi)
        if rc < best_rc:
            best, best_rc = col, rc
    return best


def _float_phase(g: Graph, budget: Budget) -> tuple[list[tuple[int, ...]], list[list[float]]]:
    """Stabilised column generation with a floating-point master.

    Returns the support of the final primal, then the final dual and the best
    smoothed dual point as hints.
    Nothing here is trusted: the exact phase re-solves and certifies.
    """
    import highspy
    import numpy as np

    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    n = g.n
    h.addRows(n, np.ones(n), np.full(n, highspy.kHighsInf), 0, np.array([], dtype=np.int32),
              np.array([], dtype=np.int32), np.array([], dtype=np.float64))
    columns: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()

    def add(sets) -> bool:
        fresh = [s for s in dict.fromkeys(sets) if s not in seen]
        for s in fresh:
            seen.add(s)
            columns.append(s)
            h.addCol(1.0, 0.0, highspy.kHighsInf, len(s), np.array(s, dtype=np.int32), np.ones(len(s)))
        return bool(fresh)

    add(_seed_sets(g) + [extend_to_maximal(g, [v]) for v in range(n)])
    center: list[float] | None = None
    best_lower = 0.0
    smoothing = FLOAT_SMOOTHING
    while True:
        budget.tick()
        h.run()
        sol = h.getSolution()
        upper = h.getInfo().objective_function_value
        current = [max(y, 0.0) for y in sol.row_dual]
        if upper - best_lower <= FLOAT_GAP * upper:
            break
        if center is None or not smoothing:
            point = current
        else:
            point = [smoothing * c + (1 - smoothing) * y for c, y in zip(center, current)]
        weights = [int(y * GRID) for y in point]
        # cheap sets heavy at the smoothed point that also violate the current prices
        limit = 1 + 1 / FLOAT_SLACK
        cheap = [
            extend_to_maximal(g, t[1]) for t in heavy_independent_sets(g, weights, GRID)
            if sum(current[v] for v in t[1]) > limit
        ]
        if cheap and add(cheap):
            continue
        heavy = heaviest_independent_set(g, weights, GRID, budget)
        top = GRID if heavy is None else heavy[0]
        lower = sum(weights) / top
        if lower > best_lower:
            best_lower, center = lower, [x / top for x in weights]
        if heavy is not None and sum(current[v] for v in heavy[1]) > 1 + 1 / FLOAT_SLACK:
            if add([extend_to_maximal(g, heavy[1])]):
                smoothing = FLOAT_SMOOTHING
                continue
        if not smoothing:
            break
        smoothing = 0.0
    x = sol.col_value
    support = [s for s, xs in zip(columns, x) if xs > 1e-9]
    hints = [current] if center is None else [current, center]
    return support, hints


def _rational_dual(g: Graph, hints: list[list[float]], budget: Budget) -> tuple[Fraction, list[Fraction]] | None:
    """Round floating-point duals to rationals and certify the best resulting lower bound.

    A basic dual of the float master has small denominators, so one of the
    rounding levels usually reproduces it exactly.
    """
    best: tuple[Fraction, list[Fraction]] | None = None
    for hint in hints:
        target = sum(hint)
        for bits in HINT_DENOMINATOR_BITS:
            guess = [Fraction(max(y, 0.0)).limit_denominator(1 << bits) for y in hint]
            scale = math.lcm(*(y.denominator for y in guess))
            if scale.bit_length() > HINT_SCALE_BITS:
                continue
            heavy = heaviest_independent_set(g, [int(y * scale) for y in guess], scale, budget)
            factor = Fraction(1) if heavy is None else Fraction(scale, heavy[0])
            lower = sum(guess) * factor
            if best is None or lower > best[0]:
                best = (lower, [y * factor for y in guess])
            if heavy is None and abs(float(lower) - target) <= FLOAT_GAP * target:
                return best
    return best


def fractional_chromatic(g: Graph, budget: Budget | None = None, method: str = "guided") -> FractionalResult:
    """Exact fractional chromatic number with an optimal cover and matching vertex prices."""
    g.require_loop_free("fractional chromatic number")
    if g.n == 0:
        raise ValueError("fractional chromatic number needs at least one vertex")
    budget = resolve(budget)
    lp = CoveringLP(g.n, budget)
    center: list[Fraction] | None = None
    best_lower = Fraction(0)
    if method == "enumerate":
        for s in enumerate_maximal_independent_sets(g, budget):
            lp.add_column(s)
    elif method == "exact":
        for s in _seed_sets(g):
            lp.add_column(s)
    elif method == "guided":
        support, hints = _float_phase(g, budget)
        for s in support:
            lp.add_column(s)
        found = _rational_dual(g, hints, budget)
        if found is not None:
            best_lower, center = found
    else:
        raise ValueError(f"unknown method {method!r}")

    rounds = 0
    smoothing = SMOOTHING
    while True:
        rounds += 1
        pi = lp.dual_numerators()
        negative = min(range(g.n), key=lambda v: (pi[v], v))
        if pi[negative] < 0:
            lp.enter(-negative - 1)
            continue
        col = _price_pool(lp, pi, set(lp.basis))
        if col is not None:
            lp.enter(col)
            continue
        upper = lp.value()
        if center is not None and best_lower == upper:
            break
        current = [Fraction(p, lp.D) for p in pi]
        if center is None or not smoothing:
            point = current
        else:
            point = [smoothing * c + (1 - smoothing) * y for c, y in zip(center, current)]
        if method != "enumerate":
            cheap = [
                t for t in heavy_independent_sets(g, pi, lp.D)
                if sum(pi[v] for v in t[1]) > lp.D
            ]
            if cheap:
                cols = [lp.add_column(extend_to_maximal(g, t[1])) for t in cheap]
                lp.enter(cols[0])
                continue
        if point is current:
            scale, weights = lp.D, list(pi)
        else:
            # any nonnegative prices give a bound, so the smoothed point may be rounded down
            scale = GRID
            weights = [y.numerator * GRID // y.denominator for y in point]
            point = [Fraction(x, GRID) for x in weights]
        heavy = heaviest_independent_set(g, weights, scale, budget)
        # any nonnegative price vector, divided by its heaviest set weight, is dual feasible
        factor = Fraction(1) if heavy is None else Fraction(scale, heavy[0])
        lower = sum(point) * factor
        if lower > best_lower:
            best_lower, center = lower, [y * factor for y in point]
        if best_lower == upper:
            break
        if method == "enumerate":
            raise ArithmeticError("an independent set outside the enumeration prices out")
        if heavy is not None:
            s = extend_to_maximal(g, heavy[1])
            if sum(pi[v] for v in s) > lp.D:
                lp.enter(lp.add_column(s))
                smoothing = SMOOTHING
                continue
        # the smoothed point priced nothing useful; fall back to the current prices
        smoothing = 0

    merged: dict[tuple[int, ...], Fraction] = {}
    for s, x in lp.solution():
        key = extend_to_maximal(g, s)
        merged[key] = merged.get(key, Fraction(0)) + x
    return FractionalResult(lp.value(), tuple(sorted(merged.items())), tuple(center), rounds)


def verify_fractional(g: Graph, result: FractionalResult, budget: Budget | None = None) -> bool:
    """Re-check both halves of the optimality certificate from scratch."""
    covered = [Fraction(0)] * g.n
    total = Fraction(0)
    for s, x in result.cover:
        if x < 0 or not is_independent(g, s):
            return False
        for v in s:
            covered[v] += x
        total += x
    if total != result.value or any(c < 1 for c in covered):
        return False
    weights = result.weights
    if any(y < 0 for y in weights) or sum(weights) != result.value:
        return False
    den = math.lcm(*(y.denominator for y in weights))
    ints = [int(y * den) for y in weights]
    return heaviest_independent_set(g, ints, den, resolve(budget)) is None
