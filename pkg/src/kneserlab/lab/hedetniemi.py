"""Chromatic numbers of categorical products, and upper bounds on the Poljak-Rodl function.

chi(G x H) <= min(chi(G), chi(H)) always, witnessed by colouring each pair
with the colour of its coordinate in the factor with fewer colours.  The
matching lower bound is proved on a small piece: shrink each factor to an
induced subgraph that still needs t colours, then refute (t-1)-colourings
of the product of the two pieces.  That product is an induced subgraph of
G x H, so the refutation carries over.  Only if that fails is the whole
product searched.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from ..graph import Coloring, Graph, GraphError, categorical_product, induced_subgraph, is_proper_coloring
from ..solvers.budget import Budget, BudgetExceeded, resolve
from ..solvers.clique import greedy_clique
from ..solvers.coloring import ChromaticCertificate, chromatic_number, k_coloring, normalize_colors
from .report import BUDGET, FAIL, PASS, Report


def needs_colors(g: Graph, t: int, budget: Budget) -> bool:
    """True iff g has no proper (t-1)-colouring."""
    if t <= 1:
        return t <= 0 or g.n > 0
    clique = greedy_clique(g)
    if len(clique) >= t:
        return True
    return k_coloring(g, t - 1, budget, clique) is None


def critical_subgraph(g: Graph, t: int, budget: Budget) -> list[int]:
    """Vertices of an induced subgraph with chromatic number >= t, minimal under vertex deletion.

    Starts from a t-clique when one is at hand.  Otherwise vertices are
    dropped from the highest index down whenever the rest still needs t
    colours.
    """
    clique = greedy_clique(g)
    if len(clique) >= t:
        return sorted(clique[:t])
    keep = list(range(g.n))
    for v in reversed(range(g.n)):
        trial = [u for u in keep if u != v]
        if needs_colors(induced_subgraph(g, trial), t, budget):
            keep = trial
    return keep


@dataclass(frozen=True)
class ProductChromatic:
    value: int
    coloring: Coloring
    reason: dict
    nodes: int = 0


def projection_coloring(g: Graph, h: Graph, gcol: Sequence[int], hcol: Sequence[int], use_left: bool) -> Coloring:
    hn = h.n
    if use_left:
        colors = [gcol[x] for x in range(g.n) for _ in range(hn)]
    else:
        colors = [hcol[y] for _ in range(g.n) for y in range(hn)]
    return Coloring.of(normalize_colors(colors))


def product_chromatic(
    g: Graph,
    h: Graph,
    budget: Budget | None = None,
    *,
    left: ChromaticCertificate | None = None,
    right: ChromaticCertificate | None = None,
) -> ProductChromatic:
    """Exact chi(G x H) with a witness colouring and a lower-bound reason."""
    budget = resolve(budget)
    start = budget.nodes
    left = left or chromatic_number(g, budget)
    right = right or chromatic_number(h, budget)
    product = categorical_product(g, h)
    if product.n == 0:
        return ProductChromatic(0, Coloring((), 0), {"kind": "empty"}, 0)
    t = min(left.value, right.value)
    witness = projection_coloring(g, h, left.witness_coloring.colors, right.witness_coloring.colors, left.value <= right.value)
    assert is_proper_coloring(product, witness)
    if product.edge_count == 0:
        return ProductChromatic(1, Coloring.of([1] * product.n), {"kind": "edgeless"}, budget.nodes - start)
    if t == 2:
        # an edge in the product forces two colours
        return ProductChromatic(2, witness, {"kind": "edge"}, budget.nodes - start)
    sub_g = critical_subgraph(g, t, budget)
    sub_h = critical_subgraph(h, t, budget)
    piece = categorical_product(induced_subgraph(g, sub_g), induced_subgraph(h, sub_h))
    if needs_colors(piece, t, budget):
        reason = {"kind": "subproduct", "left": sub_g, "right": sub_h, "refuted_colors": t - 1}
        return ProductChromatic(t, witness, reason, budget.nodes - start)
    full = chromatic_number(product, budget)
    return ProductChromatic(full.value, full.witness_coloring, full.lower_bound_reason, budget.nodes - start)


def hedetniemi_check(
    g: Graph,
    h: Graph,
    budget: Budget | None = None,
    *,
    name: str | None = None,
    left: ChromaticCertificate | None = None,
    right: ChromaticCertificate | None = None,
) -> Report:
    """Deficit min(chi(G), chi(H)) - chi(G x H); zero is expected whenever the minimum is at most 4."""
    instance = name or f"{g!r} x {h!r}"
    budget = resolve(budget)
    try:
        left = left or chromatic_number(g, budget)
        right = right or chromatic_number(h, budget)
        prod = product_chromatic(g, h, budget, left=left, right=right)
    except BudgetExceeded as exc:
        return Report("hedetniemi", instance, {"lower": exc.lower, "upper": exc.upper}, verdict=BUDGET, note=str(exc))
    low = min(left.value, right.value)
    deficit = low - prod.value
    values = {"chi_left": left.value, "chi_right": right.value, "chi_product": prod.value, "deficit": deficit}
    verdict = PASS if deficit == 0 or low > 4 else FAIL
    return Report("hedetniemi", instance, values, certificate=f"product:{prod.reason['kind']}", nodes=prod.nodes, verdict=verdict)


@dataclass(frozen=True)
class PoljakRodlRecord:
    """f(n) <= chi_product, certified by the product of the named pair."""

    n: int
    left_id: str
    right_id: str
    chi_left: int
    chi_right: int
    chi_product: int
    eligible: int
    skipped: int = 0

    def __post_init__(self) -> None:
        if self.chi_left < self.n or self.chi_right < self.n:
            raise GraphError("both factors need chromatic number at least n")
        if self.chi_product > min(self.chi_left, self.chi_right):
            raise GraphError("product value exceeds the projection bound")

    @property
    def implies(self) -> str:
        return f"f({self.n}) <= {self.chi_product}"

    def to_obj(self) -> dict:
        return {
            "n": self.n,
            "left": self.left_id,
            "right": self.right_id,
            "chi_left": self.chi_left,
            "chi_right": self.chi_right,
            "chi_product": self.chi_product,
            "eligible": self.eligible,
            "skipped": self.skipped,
            "implies": self.implies,
        }


def poljak_rodl_upper(
    pairs: Sequence[tuple[str, str]],
    n: int,
    *,
    graph_of: Callable[[str], Graph],
    chromatic_of: Callable[[str], ChromaticCertificate],
    budget_per_pair: int | None = None,
) -> PoljakRodlRecord:
    """Smallest chi(G x H) over the pairs whose factors both need at least n colours.

    Pairs whose product search runs out of its node allowance are counted
    as skipped; they cannot lower a bound that is already certified.
    """
    eligible = [(a, b) for a, b in pairs if chromatic_of(a).value >= n and chromatic_of(b).value >= n]
    if not eligible:
        raise GraphError(f"no pair in the catalog has both chromatic numbers >= {n}")
    best: tuple[int, str, str] | None = None
    skipped = 0
    for a, b in eligible:
        try:
            prod = product_chromatic(
                graph_of(a), graph_of(b), Budget(nodes=budget_per_pair), left=chromatic_of(a), right=chromatic_of(b)
            )
        except BudgetExceeded:
            skipped += 1
            continue
        if best is None or prod.value < best[0]:
            best = (prod.value, a, b)
    if best is None:
        raise GraphError(f"every eligible pair for n={n} exceeded its budget")
    value, a, b = best
    return PoljakRodlRecord(n, a, b, chromatic_of(a).value, chromatic_of(b).value, value, len(eligible), skipped)


def tighten_by_monotonicity(records: Sequence[PoljakRodlRecord]) -> dict[int, int]:
    """Bound on f(n) for each recorded n, also using f(n) <= f(n') for n < n'.

    f nondecreasing is taken as given here, not proved.
    """
    bounds: dict[int, int] = {}
    best = None
    for rec in sorted(records, key=lambda r: -r.n):
        best = rec.chi_product if best is None else min(best, rec.chi_product)
        bounds[rec.n] = best
    return dict(sorted(bounds.items()))


def poljak_report(rec: PoljakRodlRecord, tightened: int) -> Report:
    values = rec.to_obj()
    values["bound_with_monotonicity"] = tightened
    ok = rec.chi_product <= min(rec.chi_left, rec.chi_right)
    return Report(
        "poljak_rodl_upper",
        f"n={rec.n}",
        values,
        certificate=f"pair:{rec.left_id} x {rec.right_id}",
        verdict=PASS if ok else FAIL,
        note="monotonicity of f assumed",
    )
