from __future__ import annotations

import itertools
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs
from oracles import chromatic_brute
from kneserlab.graph import (
    Coloring,
    GraphError,
    categorical_product,
    complete,
    cycle,
    edgeless,
    exponential_graph,
    induced_subgraph,
    is_homomorphism,
    is_proper_coloring,
    kneser,
    path,
)
from kneserlab.lab import catalog
from kneserlab.lab.exponential import (
    block_decomposition,
    canonical_coloring,
    chromatic_superadditivity_check,
    constant_clique_check,
    constant_clique_report,
    constant_index,
    core_chromatic,
    function_index,
    verify_blocks_totally_joined,
)
from kneserlab.lab.extraction import (
    RegimeError,
    exponential_blocks,
    extract_from_blocks,
    extract_kneser_hom,
    extract_synthetic,
    shuffled_coloring,
    subset_rank,
    synthetic_block_graph,
)
from kneserlab.lab.hedetniemi import (
    PoljakRodlRecord,
    critical_subgraph,
    hedetniemi_check,
    needs_colors,
    poljak_report,
    poljak_rodl_upper,
    product_chromatic,
    tighten_by_monotonicity,
)
from kneserlab.lab.report import (
    BUDGET,
    FAIL,
    PASS,
    REGIME,
    Report,
    reports_from_json,
    reports_to_csv,
    reports_to_json,
    reports_to_text,
    sort_reports,
    summary,
)
from kneserlab.lab.stahl import decompose, predicted, stahl_check, stahl_report, subadditivity_reports
from kneserlab.lab.suites import SUITES, Settings, run_suite
from kneserlab.solvers.budget import Budget
from kneserlab.solvers.coloring import chromatic_number

# -- catalog ------------------------------------------------------------------


def test_catalog_contents():
    ids = catalog.catalog_ids()
    assert ids[:6] == [f"K({n})" for n in range(1, 7)]
    assert [i for i in ids if i.startswith("C(")] == [f"C({n})" for n in range(3, 10)]
    kn = [i for i in ids if i.startswith("Kneser")]
    assert "Kneser(5,2)" in kn and "Kneser(11,2)" in kn and "Kneser(8,3)" in kn
    assert "Kneser(12,2)" not in kn and "Kneser(9,3)" not in kn
    assert all(catalog.graph(i).n <= 60 for i in kn)
    assert len(ids) == len(set(ids)) == 26


def test_catalog_pairs_respect_size():
    pairs = list(catalog.pairs(40))
    assert ("K(2)", "K(3)") in pairs and ("K(3)", "K(2)") not in pairs
    assert all(catalog.graph(a).n * catalog.graph(b).n <= 40 for a, b in pairs)
    ordered = list(catalog.pairs(40, ordered=True))
    assert ("K(3)", "K(2)") in ordered and len(ordered) > len(pairs)


# -- canonical colouring ------------------------------------------------------


@pytest.mark.parametrize("h, c, size", [(complete(3), 2, 24), (complete(2), 1, 2), (cycle(5), 2, 160)])
def test_canonical_examples(h, c, size):
    res = canonical_coloring(h, c)
    assert res.product.n == size and res.proper
    assert set(res.coloring.colors) <= set(range(1, c + 1))


def test_canonical_single_colour_product_is_edgeless():
    assert canonical_coloring(complete(2), 1).product.edge_count == 0


def test_canonical_colour_is_function_value():
    h = path(3)
    res = canonical_coloring(h, 3)
    exp = exponential_graph(3, h)
    for v in range(h.n):
        for f in range(exp.n):
            assert res.coloring.colors[v * exp.n + f] == exp.label(f).values[v]


@given(graphs(min_n=1, max_n=5), st.integers(1, 3))
def test_canonical_always_proper(h, c):
    if c**h.n <= 243:
        assert canonical_coloring(h, c).proper


def test_canonical_bounds_product_chromatic_number():
    res = canonical_coloring(complete(3), 2)
    assert chromatic_number(res.product).value <= 2
    res = canonical_coloring(cycle(5), 2)
    assert chromatic_number(res.product).value <= 2


def test_canonical_guard(monkeypatch):
    monkeypatch.setenv("KNESERLAB_MAX_VERTICES", "100")
    with pytest.raises(GraphError):
        canonical_coloring(cycle(5), 2)


# -- blocks -------------------------------------------------------------------


def test_function_and_constant_index():
    g = exponential_graph(3, path(2))
    for f in range(g.n):
        assert function_index(g.label(f).values, 3) == f
    assert g.label(constant_index(2, 3, 2)).values == (2, 2)


def test_block_decomposition_k3():
    dec = block_decomposition(complete(3), 2, 2)
    assert dec.graph.n == 64 and [len(b) for b in dec.blocks] == [8, 8]
    assert dec.all_isomorphic() and dec.disjoint()
    assert {dec.graph.label(v).image <= {3, 4} for v in dec.blocks[1]} == {True}


def test_block_decomposition_d1_is_everything():
    dec = block_decomposition(cycle(5), 3, 1)
    assert sorted(dec.blocks[0]) == list(range(dec.graph.n))
    assert dec.all_isomorphic()


def test_block_decomposition_k2_carries_loops():
    dec = block_decomposition(complete(2), 2, 2)
    assert dec.all_isomorphic()
    shifted = {dec.graph.label(v).values for v in dec.blocks[1] if v in dec.graph.loops}
    assert shifted == {(3, 4), (4, 3)}


def test_block_isomorphism_detects_mismatch():
    dec = block_decomposition(complete(3), 2, 2)
    broken = type(dec)(dec.c, dec.d, dec.base, dec.graph, (dec.blocks[0], dec.blocks[0][1:] + dec.blocks[0][:1]), dec.small)
    assert not broken.block_isomorphic(1)
    assert not broken.disjoint()


@pytest.mark.parametrize("h", [complete(3), cycle(5), edgeless(2), path(3)])
def test_blocks_totally_joined(h):
    assert verify_blocks_totally_joined(block_decomposition(h, 2, 2))


def test_blocks_not_joined_within_a_block():
    dec = block_decomposition(complete(3), 2, 2)
    twisted = type(dec)(dec.c, dec.d, dec.base, dec.graph, (dec.blocks[0][:4] + dec.blocks[1][:4], dec.blocks[1][4:] + dec.blocks[0][4:]), dec.small)
    assert not verify_blocks_totally_joined(twisted)


@pytest.mark.parametrize("h, c, d", [(complete(3), 2, 2), (cycle(5), 2, 2), (complete(4), 2, 2)])
def test_superadditivity(h, c, d):
    rep = chromatic_superadditivity_check(h, c, d)
    assert rep.verdict == PASS
    assert rep.values["chi_large"] >= d * rep.values["chi_small"]


def test_superadditivity_d1_is_equality():
    rep = chromatic_superadditivity_check(complete(3), 3, 1)
    assert rep.values["chi_large"] == rep.values["chi_small"]


def test_core_chromatic_values():
    # measured: chi of the loop-free core equals c for these bases
    for h in (complete(3), cycle(5)):
        for c in (2, 3, 4):
            loops, cert = core_chromatic(h, c)
            assert cert.value == c
            assert loops == sum(1 for f in exponential_graph(c, h).loops)


def test_core_chromatic_small_case_matches_brute_force():
    core, _ = exponential_graph(2, complete(3)).loop_free_core()
    assert chromatic_brute(core.n, list(core.edges())) == core_chromatic(complete(3), 2)[1].value


@pytest.mark.parametrize("i", [1, 2])
def test_constant_clique(i):
    assert constant_clique_check(complete(3), 2, i)
    rep = constant_clique_report(complete(3), 2, i)
    assert rep.verdict == PASS and rep.values["chi_extended"] >= rep.values["chi_base"] + i


def test_constant_clique_edge_cases():
    assert constant_clique_check(complete(3), 2, 0)
    with pytest.raises(GraphError):
        constant_clique_check(edgeless(3), 2, 1)


# -- extraction ---------------------------------------------------------------


def test_subset_rank_matches_kneser_order():
    for m, n in [(5, 2), (6, 3), (7, 1), (8, 4)]:
        g = kneser(m, n)
        for v in range(g.n):
            assert subset_rank(g.label(v).elements, m) == v


@pytest.mark.parametrize("c, d", [(c, d) for c in (1, 2, 3) for d in (1, 2, 3)])
def test_synthetic_extraction(c, d):
    g, subsets, blocks = synthetic_block_graph(c, d)
    for seed in range(3):
        col = shuffled_coloring(g, seed)
        res = extract_synthetic(c, d, col)
        source, target = kneser(c * d, c), kneser(res.palette, c + 1)
        assert is_homomorphism(source, target, res.hom)
        for (a, img_a), (b, img_b) in itertools.combinations(zip(res.subsets, res.images), 2):
            assert len(img_a) == c + 1
            if not set(a) & set(b):
                assert not set(img_a) & set(img_b)


def test_synthetic_blocks_are_totally_joined():
    g, subsets, blocks = synthetic_block_graph(2, 2)
    for (a, ba), (b, bb) in itertools.combinations(zip(subsets, blocks), 2):
        if not set(a) & set(b):
            assert all(g.has_edge(u, v) for u in ba for v in bb)


def test_extraction_regime_error_names_subset():
    h, c, d = complete(3), 3, 1
    core, _, _ = exponential_blocks(h, c, d)
    cert = core_chromatic(h, c * d)[1]
    assert cert.value == 3
    with pytest.raises(RegimeError) as info:
        extract_kneser_hom(h, c, d, cert.witness_coloring)
    assert info.value.subset == (1, 2, 3) and info.value.used <= c
    assert "subset {1,2,3}" in str(info.value)


@pytest.mark.parametrize("h, c, d", [(complete(3), 2, 2), (cycle(5), 2, 2), (complete(3), 1, 3)])
def test_extraction_regime_on_real_instances(h, c, d):
    cert = core_chromatic(h, c * d)[1]
    with pytest.raises(RegimeError):
        extract_kneser_hom(h, c, d, cert.witness_coloring)


def test_extraction_rejects_bad_colourings():
    core, _, _ = exponential_blocks(complete(3), 2, 2)
    with pytest.raises(GraphError, match="entries"):
        extract_kneser_hom(complete(3), 2, 2, Coloring.of([1, 2, 3]))
    with pytest.raises(GraphError, match="not proper"):
        extract_kneser_hom(complete(3), 2, 2, Coloring.of([1] * core.n))


def test_extraction_detects_non_homomorphism():
    subsets = [(1,), (2,)]
    with pytest.raises(GraphError, match="not a homomorphism"):
        extract_from_blocks(subsets, [[0, 1], [2, 3]], [1, 2, 1, 3], 1, 2, 3)


# -- Stahl --------------------------------------------------------------------


@pytest.mark.parametrize("k, n, ab", [(1, 2, (0, 1)), (2, 2, (0, 2)), (3, 2, (1, 1)), (4, 2, (1, 2)), (7, 3, (2, 1))])
def test_decompose(k, n, ab):
    assert decompose(k, n) == ab
    a, b = ab
    assert a * n + b == k and 1 <= b <= n


@pytest.mark.parametrize(
    "m, n, k, conj, kind",
    [(5, 2, 1, 3, "small"), (5, 2, 2, 5, "small"), (5, 2, 3, 8, "open"), (4, 2, 4, 8, "multiple"), (6, 3, 2, 4, "small")],
)
def test_stahl_examples(m, n, k, conj, kind):
    inst = stahl_check(m, n, k)
    assert inst.conjectured == conj == predicted(m, n, k)
    assert inst.kind == kind
    assert inst.computed == conj


def test_stahl_item_a_and_b():
    for m, n in [(4, 2), (5, 2), (6, 2), (6, 3), (7, 3)]:
        for k in range(1, n + 1):
            assert stahl_check(m, n, k).computed == m - 2 * (n - k)
        assert stahl_check(m, n, n).computed == m


def test_stahl_budget_record():
    inst = stahl_check(7, 2, 3, max_palette=8)
    assert inst.computed is None and inst.agrees is None
    rep = stahl_report(inst)
    assert rep.verdict == BUDGET


def test_stahl_rejects_bad_parameters():
    with pytest.raises(GraphError):
        stahl_check(3, 2, 1)


def test_stahl_subadditivity_reports():
    insts = [stahl_check(5, 2, k) for k in (1, 2, 3, 4)]
    reps = subadditivity_reports(insts)
    assert {r.instance for r in reps} == {"K(5,2) k=1+1", "K(5,2) k=1+2", "K(5,2) k=1+3", "K(5,2) k=2+2"}
    assert all(r.verdict == PASS for r in reps)


# -- Hedetniemi and Poljak-Rodl ----------------------------------------------


@pytest.mark.parametrize("g, h, chi", [(complete(4), complete(4), 4), (cycle(5), kneser(5, 2), 3), (complete(1), kneser(5, 2), 1), (cycle(6), cycle(5), 2)])
def test_hedetniemi_examples(g, h, chi):
    rep = hedetniemi_check(g, h)
    assert rep.verdict == PASS
    assert rep.values["deficit"] == 0 and rep.values["chi_product"] == chi


def test_product_chromatic_matches_full_search():
    for a, b in [("C(5)", "C(7)"), ("K(3)", "Mycielski(C(5))"), ("K(4)", "K(5)"), ("Kneser(5,2)", "Kneser(6,2)")]:
        g, h = catalog.graph(a), catalog.graph(b)
        prod = product_chromatic(g, h)
        full = chromatic_number(categorical_product(g, h))
        assert prod.value == full.value
        assert is_proper_coloring(categorical_product(g, h), prod.coloring)


def test_critical_subgraph_needs_t_colours():
    g = catalog.graph("Mycielski(C(5))")
    keep = critical_subgraph(g, 4, Budget())
    sub = induced_subgraph(g, keep)
    assert chromatic_number(sub).value == 4
    for v in range(sub.n):
        assert not needs_colors(induced_subgraph(sub, [u for u in range(sub.n) if u != v]), 4, Budget())
    assert critical_subgraph(complete(5), 3, Budget()) == [0, 1, 2]


def test_poljak_rodl_examples():
    pairs = list(catalog.pairs(120))
    rec3 = poljak_rodl_upper(pairs, 3, graph_of=catalog.graph, chromatic_of=catalog.chromatic)
    assert rec3.chi_product == 3
    rec1 = poljak_rodl_upper(pairs, 1, graph_of=catalog.graph, chromatic_of=catalog.chromatic)
    assert rec1.chi_product == 1 and rec1.implies == "f(1) <= 1"
    rec5 = poljak_rodl_upper([("K(5)", "K(5)")], 5, graph_of=catalog.graph, chromatic_of=catalog.chromatic)
    assert rec5.chi_product == 5 and (rec5.left_id, rec5.right_id) == ("K(5)", "K(5)")
    with pytest.raises(GraphError):
        poljak_rodl_upper([("K(2)", "C(5)")], 4, graph_of=catalog.graph, chromatic_of=catalog.chromatic)


def test_poljak_record_invariants_and_tightening():
    with pytest.raises(GraphError):
        PoljakRodlRecord(3, "K(2)", "K(3)", 2, 3, 2, 1)
    with pytest.raises(GraphError):
        PoljakRodlRecord(3, "K(3)", "K(3)", 3, 3, 4, 1)
    recs = [PoljakRodlRecord(3, "a", "b", 3, 3, 3, 1), PoljakRodlRecord(4, "c", "d", 5, 5, 2, 1)]
    assert tighten_by_monotonicity(recs) == {3: 2, 4: 2}
    rep = poljak_report(recs[0], 2)
    assert rep.values["bound_with_monotonicity"] == 2 and rep.verdict == PASS


# -- reports ------------------------------------------------------------------


def _sample_reports():
    return [
        Report("b_op", "x", {"v": 1}, "cert", 3, PASS),
        Report("a_op", "y", {"v": [1, 2]}, None, 0, REGIME, "note, with comma"),
        Report("a_op", "x", {}, None, 5, FAIL),
        Report("a_op", "z", {}, None, 0, BUDGET),
    ]


def test_report_json_round_trip():
    reps = sort_reports(_sample_reports())
    assert [r.key for r in reps] == [("a_op", "x"), ("a_op", "y"), ("a_op", "z"), ("b_op", "x")]
    text = reports_to_json(reps, "demo")
    assert reports_from_json(text) == reps
    doc = json.loads(text)
    assert doc["suite"] == "demo" and doc["summary"] == {"pass": 1, "fail": 1, "regime": 1, "budget": 1}


def test_report_csv_and_text():
    reps = sort_reports(_sample_reports())
    csv_text = reports_to_csv(reps)
    lines = csv_text.splitlines()
    assert lines[0] == "operation,instance,values,certificate,nodes,verdict,note"
    assert '"note, with comma"' in csv_text and len(lines) == 5
    text = reports_to_text(reps)
    assert text.splitlines()[0].startswith("[FAIL] a_op x")
    assert text.rstrip().endswith("summary: pass=1, fail=1, regime=1, budget=1")


def test_report_rejects_unknown_verdict():
    with pytest.raises(ValueError):
        Report("op", "x", {}, verdict="maybe")


def test_summary_counts():
    assert summary(_sample_reports()) == {"pass": 1, "fail": 1, "regime": 1, "budget": 1}


# -- suites -------------------------------------------------------------------


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")


def test_small_suites_pass():
    s = Settings(cap=20)
    for name in ("lovasz", "stahl", "fractional-hedetniemi", "lex-multiplicativity", "hedetniemi", "poljak-rodl"):
        reps = run_suite(name, s)
        assert reps and all(r.verdict == PASS for r in reps), name


def test_canonical_suite_small_cap():
    reps = run_suite("canonical-coloring", Settings(cap=64))
    assert all(r.verdict == PASS for r in reps)
    assert {r.instance for r in reps} == set(catalog.entries(5))


def test_extraction_suite_verdicts():
    reps = run_suite("extraction")
    synthetic = [r for r in reps if r.operation == "extraction_synthetic"]
    real = [r for r in reps if r.operation == "extraction_exponential"]
    assert synthetic and all(r.verdict == PASS for r in synthetic)
    assert len(real) == 5 and all(r.verdict == REGIME for r in real)


def test_budget_row_in_suite():
    reps = run_suite("lovasz", Settings(cap=60, budget_nodes=1))
    assert any(r.verdict == BUDGET for r in reps)


def test_suite_table():
    assert set(SUITES) == {
        "lovasz",
        "stahl",
        "fractional-hedetniemi",
        "lex-multiplicativity",
        "canonical-coloring",
        "blocks",
        "extraction",
        "hedetniemi",
        "poljak-rodl",
    }


def test_stahl_memo_respects_palette_cap():
    assert stahl_check(7, 2, 3).computed == 12
    assert stahl_check(7, 2, 3, max_palette=8).computed is None
