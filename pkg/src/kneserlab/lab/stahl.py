"""Multichromatic numbers of Kneser graphs against the closed-form prediction.

For k = a*n + b with 1 <= b <= n and a >= 0 the prediction is
(a+1)*m - 2*(n-b).  Two cases are theorems: k <= n gives m - 2(n-k), and
k a multiple of n gives (k/n)*m.  Everything else is conjectural and is
reported as such.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..graph import GraphError, kneser
from ..solvers.budget import Budget, BudgetExceeded
from ..solvers.homomorphism import MultichromaticResult, multichromatic_number
from .report import BUDGET, FAIL, PASS, Report

_RESULTS: dict[tuple[int, int, int], MultichromaticResult] = {}


def decompose(k: int, n: int) -> tuple[int, int]:
    """(a, b) with k = a*n + b, 1 <= b <= n."""
    if k < 1 or n < 1:
        raise GraphError("need k >= 1 and n >= 1")
    b = (k - 1) % n + 1
    return (k - b) // n, b


def predicted(m: int, n: int, k: int) -> int:
    a, b = decompose(k, n)
    return (a + 1) * m - 2 * (n - b)


@dataclass(frozen=True)
class StahlInstance:
    m: int
    n: int
    k: int
    a: int
    b: int
    conjectured: int
    computed: int | None = None
    lower: int | None = None
    nodes: int = 0

    @property
    def kind(self) -> str:
        """'small' when k <= n, 'multiple' when n divides k, else 'open'."""
        if self.k <= self.n:
            return "small"
        if self.k % self.n == 0:
            return "multiple"
        return "open"

    @property
    def proven(self) -> bool:
        return self.kind != "open"

    @property
    def agrees(self) -> bool | None:
        return None if self.computed is None else self.computed == self.conjectured

    def to_obj(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "k": self.k,
            "a": self.a,
            "b": self.b,
            "conjectured": self.conjectured,
            "computed": self.computed,
            "lower": self.lower,
            "kind": self.kind,
        }


def multichromatic(m: int, n: int, k: int, budget: Budget | None = None, max_palette: int | None = None) -> MultichromaticResult:
    """chi_k(K(m,n)), memoised for the life of the process."""
    key = (m, n, k)
    known = _RESULTS.get(key)
    if known is not None and (max_palette is None or known.value <= max_palette):
        return known
    # a memoised value above the cap must not leak past it; search again so the cap applies
    res = multichromatic_number(kneser(m, n), k, budget, max_palette=max_palette)
    _RESULTS[key] = res
    return res


def stahl_check(m: int, n: int, k: int, budget: Budget | None = None, *, max_palette: int | None = None) -> StahlInstance:
    if n < 1 or m < 2 * n or k < 1:
        raise GraphError(f"need m >= 2n >= 2 and k >= 1, got m={m} n={n} k={k}")
    a, b = decompose(k, n)
    conj = (a + 1) * m - 2 * (n - b)
    try:
        res = multichromatic(m, n, k, budget, max_palette)
    except BudgetExceeded as exc:
        return StahlInstance(m, n, k, a, b, conj, None, exc.lower, exc.nodes)
    return StahlInstance(m, n, k, a, b, conj, res.value, res.value, res.nodes)


def stahl_report(inst: StahlInstance) -> Report:
    name = f"K({inst.m},{inst.n}) k={inst.k}"
    values = inst.to_obj()
    if inst.computed is None:
        return Report("stahl", name, values, nodes=inst.nodes, verdict=BUDGET, note="palette cap reached")
    verdict = PASS if inst.agrees else FAIL
    note = "" if inst.proven else ("conjecture agrees" if inst.agrees else "conjecture disagrees")
    return Report("stahl", name, values, certificate="set-colouring", nodes=inst.nodes, verdict=verdict, note=note)


def subadditivity_reports(instances: list[StahlInstance]) -> list[Report]:
    """chi_{k1+k2} <= chi_{k1} + chi_{k2} wherever all three values were computed."""
    by_key = {(i.m, i.n, i.k): i.computed for i in instances if i.computed is not None}
    out = []
    for (m, n, k), total in sorted(by_key.items()):
        for k1 in range(1, k // 2 + 1):
            left, right = by_key.get((m, n, k1)), by_key.get((m, n, k - k1))
            if left is None or right is None:
                continue
            holds = total <= left + right
            out.append(
                Report(
                    "stahl_subadditivity",
                    f"K({m},{n}) k={k1}+{k - k1}",
                    {"whole": total, "parts": [left, right]},
                    verdict=PASS if holds else FAIL,
                )
            )
    return out
