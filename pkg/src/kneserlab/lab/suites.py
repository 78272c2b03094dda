"""Named verification suites.  Each returns a sorted list of reports.

Every suite has one size cap with a default; ``cap`` replaces it.  The
meaning of the cap is the vertex count of the largest graph in the grid:
the Kneser graph (lovasz, stahl), the product (fractional-hedetniemi,
lex-multiplicativity, hedetniemi, poljak-rodl) or the exponential graph
(canonical-coloring).  blocks and extraction run fixed grids.

Suites are deterministic: the grids are fixed, searches are deterministic,
and reports carry node counts rather than timings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from ..graph import categorical_product, complete, cycle, kneser, lexicographic_product
from ..solvers.budget import Budget, BudgetExceeded
from ..solvers.coloring import chromatic_number
from ..solvers.fractional import fractional_chromatic
from . import catalog
from .exponential import (
    block_decomposition,
    canonical_coloring,
    chromatic_superadditivity_check,
    constant_clique_report,
    core_chromatic,
    verify_blocks_totally_joined,
)
from .extraction import (
    RegimeError,
    exponential_blocks,
    extract_from_blocks,
    extract_synthetic,
    shuffled_coloring,
    synthetic_block_graph,
)
from .hedetniemi import hedetniemi_check, poljak_report, poljak_rodl_upper, tighten_by_monotonicity
from .report import BUDGET, FAIL, PASS, REGIME, Report, sort_reports
from .stahl import predicted, stahl_check, stahl_report, subadditivity_reports

STAHL_MAX_PALETTE = 12
SYNTHETIC_SEEDS = 5
SYNTHETIC_EXACT_LIMIT = 60
POLJAK_PAIR_NODES = 200_000


@dataclass(frozen=True)
class Settings:
    cap: int | None = None
    budget_nodes: int | None = None
    budget_ms: int | None = None
    seed: int = 0

    def budget(self) -> Budget:
        return Budget(self.budget_nodes, self.budget_ms)

    def size(self, default: int) -> int:
        return default if self.cap is None else self.cap


def lovasz(s: Settings) -> list[Report]:
    """chi(K(m,n)) = m - 2n + 2 for every Kneser graph with m >= 2n and at most ``cap`` vertices."""
    limit = s.size(60)
    out = []
    for n in range(1, limit + 1):
        if math.comb(2 * n, n) > limit:
            break
        m = 2 * n
        while math.comb(m, n) <= limit:
            name = f"K({m},{n})"
            budget = s.budget()
            try:
                cert = chromatic_number(kneser(m, n), budget)
            except BudgetExceeded as exc:
                out.append(Report("lovasz", name, {"lower": exc.lower, "upper": exc.upper}, nodes=budget.nodes, verdict=BUDGET))
            else:
                expected = m - 2 * n + 2
                values = {"chi": cert.value, "expected": expected}
                verdict = PASS if cert.value == expected else FAIL
                out.append(Report("lovasz", name, values, f"chromatic:{cert.lower_bound_reason['kind']}", cert.nodes, verdict))
            m += 1
    return out


def stahl(s: Settings) -> list[Report]:
    """Multichromatic numbers of Kneser graphs with at most ``cap`` vertices, palettes up to 12."""
    limit = s.size(35)
    instances = []
    for n in range(1, limit + 1):
        if math.comb(2 * n, n) > limit:
            break
        m = 2 * n
        while math.comb(m, n) <= limit:
            k = 1
            while predicted(m, n, k) <= STAHL_MAX_PALETTE:
                instances.append(stahl_check(m, n, k, s.budget(), max_palette=STAHL_MAX_PALETTE))
                k += 1
            m += 1
    return [stahl_report(i) for i in instances] + subadditivity_reports(instances)


def _fraction_values(**values) -> dict:
    return {k: str(v) for k, v in values.items()}


def fractional_hedetniemi(s: Settings) -> list[Report]:
    """chi_f(G x H) = min(chi_f(G), chi_f(H)) exactly, over catalog pairs."""
    out = []
    for a, b in catalog.pairs(s.size(120)):
        name = f"X({a},{b})"
        budget = s.budget()
        try:
            res = fractional_chromatic(categorical_product(catalog.graph(a), catalog.graph(b)), budget)
        except BudgetExceeded:
            out.append(Report("fractional_hedetniemi", name, {}, nodes=budget.nodes, verdict=BUDGET))
            continue
        fa, fb = catalog.fractional(a).value, catalog.fractional(b).value
        values = _fraction_values(product=res.value, left=fa, right=fb)
        verdict = PASS if res.value == min(fa, fb) else FAIL
        out.append(Report("fractional_hedetniemi", name, values, "lp-dual", budget.nodes, verdict))
    return out


def lex_multiplicativity(s: Settings) -> list[Report]:
    """chi_f(G[H]) = chi_f(G) * chi_f(H) exactly, over ordered catalog pairs."""
    out = []
    for a, b in catalog.pairs(s.size(120), ordered=True):
        name = f"Lex({a},{b})"
        budget = s.budget()
        try:
            res = fractional_chromatic(lexicographic_product(catalog.graph(a), catalog.graph(b)), budget)
        except BudgetExceeded:
            out.append(Report("lex_multiplicativity", name, {}, nodes=budget.nodes, verdict=BUDGET))
            continue
        fa, fb = catalog.fractional(a).value, catalog.fractional(b).value
        values = _fraction_values(product=res.value, left=fa, right=fb)
        verdict = PASS if res.value == fa * fb else FAIL
        out.append(Report("lex_multiplicativity", name, values, "lp-dual", budget.nodes, verdict))
    return out


def canonical(s: Settings) -> list[Report]:
    """(v, f) -> f(v) properly colours H x K_c^H for catalog H on at most 5 vertices."""
    limit = s.size(4096)
    out = []
    for gid in catalog.entries(5):
        h = catalog.graph(gid)
        c = 1
        checked, failures = 0, []
        while c**h.n <= limit:
            if not canonical_coloring(h, c).proper:
                failures.append(c)
            checked += 1
            c += 1
        values = {"colours_checked": checked, "largest_c": c - 1, "failures": failures}
        out.append(Report("canonical_coloring", gid, values, "evaluation-colouring", 0, FAIL if failures else PASS))
    return out


BLOCK_BASES = (("K(3)", complete(3)), ("C(5)", cycle(5)))


def blocks(s: Settings) -> list[Report]:
    """Colour blocks of K_4^H for H = K3, C5: isomorphism, total join, chromatic bounds."""
    c, d = 2, 2
    out = []
    for name, h in BLOCK_BASES:
        dec = block_decomposition(h, c, d)
        iso = dec.all_isomorphic() and dec.disjoint()
        out.append(Report("block_isomorphism", f"{name} c={c} d={d}", {"blocks": d, "block_size": len(dec.blocks[0])}, verdict=PASS if iso else FAIL))
        joined = verify_blocks_totally_joined(dec)
        out.append(Report("blocks_totally_joined", f"{name} c={c} d={d}", {"joined": joined}, verdict=PASS if joined else FAIL))
        out.append(chromatic_superadditivity_check(h, c, d, s.budget(), name=name))
        for i in (1, 2):
            out.append(constant_clique_report(h, c * d, i, s.budget(), name=name))
    return out


SYNTHETIC_GRID = tuple((c, d) for c in (1, 2, 3) for d in (1, 2, 3))
REAL_GRID = (("K(3)", complete(3), 3, 1), ("K(3)", complete(3), 2, 2), ("K(3)", complete(3), 1, 3), ("K(4)", complete(4), 3, 1), ("C(5)", cycle(5), 2, 2))


def extraction(s: Settings) -> list[Report]:
    """Kneser homomorphisms read off colourings: synthetic blocks succeed, real exponential graphs hit the regime error."""
    out = []
    for c, d in SYNTHETIC_GRID:
        g, _, _ = synthetic_block_graph(c, d)
        colorings = [(f"seed={seed}", shuffled_coloring(g, seed)) for seed in range(s.seed, s.seed + SYNTHETIC_SEEDS)]
        if g.n <= SYNTHETIC_EXACT_LIMIT:
            colorings.append(("optimal", chromatic_number(g, s.budget()).witness_coloring))
        for label, col in colorings:
            res = extract_synthetic(c, d, col)
            out.append(Report("extraction_synthetic", f"c={c} d={d} {label}", {"palette": res.palette, "subsets": len(res.subsets)}, "homomorphism", 0, PASS))
    for name, h, c, d in REAL_GRID:
        instance = f"{name} c={c} d={d}"
        core, subsets, blocks_ = exponential_blocks(h, c, d)
        try:
            _, cert = core_chromatic(h, c * d, s.budget())
        except BudgetExceeded:
            out.append(Report("extraction_exponential", instance, {}, verdict=BUDGET))
            continue
        try:
            res = extract_from_blocks(subsets, blocks_, cert.witness_coloring.colors, c, d, cert.value)
        except RegimeError as exc:
            values = {"subset": list(exc.subset), "colours_on_block": exc.used, "palette": cert.value}
            out.append(Report("extraction_exponential", instance, values, "optimal-colouring", cert.nodes, REGIME, str(exc)))
        else:
            out.append(Report("extraction_exponential", instance, {"palette": res.palette}, "homomorphism", cert.nodes, PASS))
    return out


def hedetniemi(s: Settings) -> list[Report]:
    """chi(G x H) = min(chi(G), chi(H)) for catalog pairs with minimum at most 4."""
    out = []
    for a, b in catalog.pairs(s.size(400)):
        left, right = catalog.chromatic(a), catalog.chromatic(b)
        if min(left.value, right.value) > 4:
            continue
        out.append(hedetniemi_check(catalog.graph(a), catalog.graph(b), s.budget(), name=f"X({a},{b})", left=left, right=right))
    return out


def poljak_rodl(s: Settings) -> list[Report]:
    """Certified upper bounds on f(n) for n = 1..6 from catalog products."""
    pairs = list(catalog.pairs(s.size(120)))
    records = []
    for n in range(1, 7):
        try:
            records.append(
                poljak_rodl_upper(pairs, n, graph_of=catalog.graph, chromatic_of=catalog.chromatic, budget_per_pair=s.budget_nodes or POLJAK_PAIR_NODES)
            )
        except ValueError:
            continue
    tight = tighten_by_monotonicity(records)
    return [poljak_report(r, tight[r.n]) for r in records]


SUITES: dict[str, Callable[[Settings], list[Report]]] = {
    "lovasz": lovasz,
    "stahl": stahl,
    "fractional-hedetniemi": fractional_hedetniemi,
    "lex-multiplicativity": lex_multiplicativity,
    "canonical-coloring": canonical,
    "blocks": blocks,
    "extraction": extraction,
    "hedetniemi": hedetniemi,
    "poljak-rodl": poljak_rodl,
}


def run_suite(name: str, settings: Settings | None = None) -> list[Report]:
    settings = settings or Settings()
    if name == "all":
        reports = []
        for key in SUITES:
            reports.extend(SUITES[key](settings))
        return sort_reports(reports)
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(['all', *SUITES])}")
    return sort_reports(SUITES[name](settings))
