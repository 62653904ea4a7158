"""Formula emission, rendering round-trips, and finite-model semantics."""

import json
import random

import networkx as nx
import pytest

from okplanar import (
    EmittedFormula,
    emit_formula,
    evaluate_formula,
    lint_formula,
    parse_sexpr,
    sanity_check_semantics,
    to_latex,
    to_sexpr,
)
from okplanar.generators import complete
from okplanar.graphs import Graph, build_graph
from okplanar.mso2 import _hamiltonian
from okplanar.recognition import brute_force_recognize


def cycle(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])

CROSS_OPEN = "(exists vertex-set C"
HAM_OPEN = "(exists edge-set Fp"

COMBOS = [
    ("closed-outer-planar", 1),
    ("closed-outer-planar", 2),
    ("closed-outer-planar", 3),
    ("closed-outer-quasi", 2),
    ("closed-outer-quasi", 3),
]


def atlas_connected(n_max: int) -> list[Graph]:
    out = []
    for G in nx.graph_atlas_g():
        n = G.number_of_nodes()
        if 3 <= n <= n_max and nx.is_connected(G) and G.number_of_edges() <= 10:
            out.append(build_graph(n, [tuple(e) for e in G.edges()]))
    return out


def test_emit_rejects_bad_inputs():
    with pytest.raises(ValueError):
        emit_formula(0, "closed-outer-planar")
    with pytest.raises(ValueError):
        emit_formula(1, "closed-outer-quasi")
    with pytest.raises(ValueError):
        emit_formula(2, "outer-planar")


def test_variant_alias_canonicalizes():
    a = emit_formula(2, "closed-outer-quasi-planar")
    b = emit_formula(2, "closed-outer-quasi")
    assert a.variant == "closed-outer-quasi"
    assert a.sexpr == b.sexpr
    assert a.latex == b.latex


def test_planar_template_structure():
    # k+1 crossing blocks around one boundary-cycle subformula
    f = emit_formula(1, "closed-outer-planar")
    assert f.sexpr.count(CROSS_OPEN) == 2
    assert f.sexpr.count(HAM_OPEN) == 1
    f3 = emit_formula(3, "closed-outer-planar")
    assert f3.sexpr.count(CROSS_OPEN) == 4
    assert f3.sexpr.count(HAM_OPEN) == 1


def test_quasi_template_structure():
    # C(k,2) distinctness inequalities and as many crossing blocks
    f = emit_formula(3, "closed-outer-quasi")
    assert f.sexpr.count("(not (= e") == 3
    assert f.sexpr.count(CROSS_OPEN) == 3
    f2 = emit_formula(2, "closed-outer-quasi")
    assert f2.sexpr.count("(not (= e") == 1
    assert f2.sexpr.count(CROSS_OPEN) == 1


def test_emit_is_deterministic():
    for variant, k in COMBOS:
        a = emit_formula(k, variant)
        b = emit_formula(k, variant)
        assert a.sexpr == b.sexpr and a.latex == b.latex


def test_parse_pretty_parse_is_fixed_point():
    for variant, k in COMBOS + [("closed-outer-planar", 4), ("closed-outer-quasi", 4)]:
        f = emit_formula(k, variant)
        ast = parse_sexpr(f.sexpr)
        assert ast == f.ast
        assert to_sexpr(ast) == f.sexpr
        assert parse_sexpr(to_sexpr(ast)) == ast


def test_parser_rejects_malformed_text():
    for bad in ["", "(and)", "(in x)", "(frobnicate x y)", "(= a b) (= c d)", "(exists vertex x"]:
        with pytest.raises(ValueError):
            parse_sexpr(bad)


def test_lint_clean_on_emitted_grid():
    for variant in ("closed-outer-planar", "closed-outer-quasi"):
        for k in range(1, 5):
            if variant.endswith("quasi") and k < 2:
                continue
            assert lint_formula(emit_formula(k, variant).ast) == []


def test_lint_reports_violations():
    assert any("unbound" in v for v in lint_formula(("in", "x", "C")))
    assert any("unknown head" in v for v in lint_formula(("xor", ("=", "a", "a"))))
    bad_sort = ("exists", "vertex", "x", ("exists", "edge", "f", ("=", "x", "f")))
    assert any("sort" in v or "compares" in v for v in lint_formula(bad_sort))
    mixed = ("exists", "vertex-set", "A", ("exists", "edge-set", "F", ("subseteq", "A", "F")))
    assert any("mixes" in v for v in lint_formula(mixed))


def test_latex_rendering_fragments():
    f = emit_formula(1, "closed-outer-planar")
    for frag in ["E^{*}", "\\forall", "\\exists", "\\wedge", "\\vee", "\\neq", "\\in", "I(", "e_{1}", "e_{2}"]:
        assert frag in f.latex
    assert "e_{3}" not in f.latex
    assert "Estar" not in f.latex


def test_to_dict_is_json_ready():
    f = emit_formula(2, "closed-outer-quasi")
    d = json.loads(json.dumps(f.to_dict()))
    assert d["k"] == 2
    assert d["variant"] == "closed-outer-quasi"
    assert d["sexpr"].startswith("(exists edge-set Estar")
    assert isinstance(f, EmittedFormula)


def test_hamiltonian_block_semantics():
    # the boundary-cycle subformula alone, closed under one quantifier
    ham = ("exists", "edge-set", "F", _hamiltonian("F"))
    assert lint_formula(ham) == []
    assert evaluate_formula(ham, cycle(5))
    assert evaluate_formula(ham, complete(4))
    assert not evaluate_formula(ham, build_graph(4, [(0, 1), (1, 2), (2, 3)]))
    star = build_graph(4, [(0, 1), (0, 2), (0, 3)])
    assert not evaluate_formula(ham, star)
    two_triangles = build_graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert not evaluate_formula(ham, two_triangles)
    bowtie = build_graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    assert not evaluate_formula(ham, bowtie)


def test_sanity_spec_examples():
    c5 = cycle(5)
    k4 = complete(4)
    p3 = build_graph(3, [(0, 1), (1, 2)])
    assert sanity_check_semantics(c5, 1, "closed-outer-planar")
    assert sanity_check_semantics(k4, 1, "closed-outer-planar")
    assert not sanity_check_semantics(k4, 2, "closed-outer-quasi-planar")
    for variant, k in COMBOS:
        assert not sanity_check_semantics(p3, k, variant)


def test_evaluator_caps_rejected():
    big_n = build_graph(8, [])
    with pytest.raises(ValueError):
        sanity_check_semantics(big_n, 1, "closed-outer-planar")
    big_m = build_graph(6, [(i, j) for i in range(6) for j in range(i + 1, 6)][:11])
    with pytest.raises(ValueError):
        sanity_check_semantics(big_m, 1, "closed-outer-planar")
    with pytest.raises(ValueError):
        evaluate_formula(("in", "x", "C"), cycle(4))


def test_agreement_with_oracle_small_corpus():
    # every connected graph on up to five vertices, both variants
    for g in atlas_connected(5):
        for variant, k in COMBOS:
            got = sanity_check_semantics(g, k, variant)
            want = brute_force_recognize(g, k, variant) is not None
            assert got == want, (g.n, g.edges, variant, k)


def test_agreement_on_seeded_six_vertex_graphs():
    rng = random.Random(5208)
    pool = [(i, j) for i in range(6) for j in range(i + 1, 6)]
    for trial in range(6):
        g = build_graph(6, rng.sample(pool, rng.randint(6, 10)))
        for variant, k in [("closed-outer-planar", 2), ("closed-outer-quasi", 3)]:
            got = sanity_check_semantics(g, k, variant)
            want = brute_force_recognize(g, k, variant) is not None
            assert got == want, (g.edges, variant, k)


def test_truth_is_monotone_in_k():
    rng = random.Random(917)
    pool = [(i, j) for i in range(5) for j in range(i + 1, 5)]
    for trial in range(5):
        g = build_graph(5, rng.sample(pool, rng.randint(5, 9)))
        if sanity_check_semantics(g, 1, "closed-outer-planar"):
            assert sanity_check_semantics(g, 2, "closed-outer-planar")
        if sanity_check_semantics(g, 2, "closed-outer-quasi"):
            assert sanity_check_semantics(g, 3, "closed-outer-quasi")


def test_cycle_is_closed_for_every_variant():
    for n in (4, 5, 6):
        g = cycle(n)
        for variant, k in COMBOS:
            assert sanity_check_semantics(g, k, variant)
