"""Balanced separator: case coverage, invariants, and a small-n oracle."""
import json
import random
from itertools import combinations

import pytest

from okplanar.drawing import crossing_report, make_drawing
from okplanar.generators import grid, grid_snake_order, random_outer_k_planar
from okplanar.graphs import build_graph
from okplanar.separator import (
    balanced_separator,
    check_separation,
    recursive_decompose,
    sub_drawing,
)


def cycle_plus(n, extra=()):
    edges = [(i, (i + 1) % n) for i in range(n)] + list(extra)
    return make_drawing(build_graph(n, edges), range(n))


def assert_valid(d, sep):
    k = crossing_report(d).max_per_edge
    err = check_separation(d, k, sep)
    assert err is None, f"{sep.case_tag}: {err}"


# hand-built drawings driving each branch of the case analysis
CASE_FIXTURES = [
    ("cutting-edge", 12, [(0, 6)]),
    ("mutually-crossing", 18, [(1, 16), (2, 17)]),
    ("single-crossing-edge", 24, [(8, 13), (9, 14), (10, 14)]),
    ("case1", 18, [(1, 17), (2, 16)]),
    ("case1'", 18, [(8, 10), (7, 11)]),
    ("case2-distinct", 18, [(1, 17), (8, 10)]),
    ("case2-shared", 36, [(9, 35), (9, 19)]),
]


@pytest.mark.parametrize("tag,n,extra", CASE_FIXTURES)
def test_case_fixture(tag, n, extra):
    d = cycle_plus(n, extra)
    sep = balanced_separator(d)
    assert sep.case_tag == tag
    assert_valid(d, sep)


def test_trivial_small():
    g = build_graph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
    sep = balanced_separator(make_drawing(g, range(4)))
    assert sep.case_tag == "trivial-small"
    assert sep.a_side == sep.b_side == sep.separator == frozenset(range(4))


def test_single_line_crosser_is_vacuously_mutual():
    sep = balanced_separator(cycle_plus(18, [(1, 16)]))
    assert sep.case_tag == "mutually-crossing"


def test_cycle_nine_example():
    d = cycle_plus(9)
    sep = balanced_separator(d)
    assert len(sep.separator) <= 3
    assert len(sep.a_side - sep.b_side) <= 6
    assert len(sep.b_side - sep.a_side) <= 6
    assert_valid(d, sep)


def test_case2_shared_meets_bound_exactly():
    # k = 0 drawing whose separator uses all 2k+3 = 3 vertices
    d = cycle_plus(36, [(9, 35), (9, 19)])
    assert crossing_report(d).max_per_edge == 0
    sep = balanced_separator(d)
    assert sep.separator == frozenset({9, 19, 35})


def test_separator_really_separates():
    # BFS oracle: from A\B, nothing in B\A is reachable once S is removed
    for seed in range(12):
        d = random_outer_k_planar(20, 2, seed=seed)
        sep = balanced_separator(d)
        s, g = sep.separator, d.graph
        a_excl = sep.a_side - sep.b_side
        b_excl = sep.b_side - sep.a_side
        seen = set()
        stack = [v for v in a_excl]
        while stack:
            u = stack.pop()
            if u in seen or u in s:
                continue
            seen.add(u)
            stack.extend(g.adj[u])
        assert not (seen & b_excl)


def test_witness_mentions_scan_vertices():
    d = cycle_plus(18, [(1, 17), (8, 10)])
    sep = balanced_separator(d)
    for key in ("a", "b", "b_l", "b_l2", "a_r", "a_r2"):
        assert key in sep.witness


def test_random_corpus_invariants():
    rng = random.Random(4021)
    tags = set()
    for _ in range(60):
        n = rng.randrange(6, 36)
        k = rng.randrange(0, 5)
        d = random_outer_k_planar(n, k, seed=rng.randrange(1 << 30))
        sep = balanced_separator(d)
        assert_valid(d, sep)
        tags.add(sep.case_tag)
    assert "cutting-edge" in tags  # the corpus should not be degenerate


def test_restriction_never_raises_crossings():
    rng = random.Random(977)
    for _ in range(20):
        n = rng.randrange(8, 28)
        d = random_outer_k_planar(n, 3, seed=rng.randrange(1 << 30))
        parent_k = crossing_report(d).max_per_edge
        sep = balanced_separator(d)
        for side in (sep.a_side, sep.b_side):
            if len(side) < 2:
                continue
            child, _ = sub_drawing(d, side)
            assert crossing_report(child).max_per_edge <= parent_k


def test_sixty_vertex_runs():
    for seed in range(20):
        d = random_outer_k_planar(60, 2, seed=seed)
        k = crossing_report(d).max_per_edge
        sep = balanced_separator(d)
        assert len(sep.separator) <= 2 * k + 3 <= 7
        assert len(sep.a_side - sep.b_side) <= 40
        assert len(sep.b_side - sep.a_side) <= 40


def _components(g, banned):
    seen, out = set(banned), []
    for s in range(g.n):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in g.adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        out.append(comp)
    return out


def optimum_separator_size(g):
    """Smallest S admitting a valid separation with sides <= ceil(2n/3)."""
    n = g.n
    bound = -(-2 * n // 3)
    for size in range(n + 1):
        for cand in combinations(range(n), size):
            sizes = [len(c) for c in _components(g, cand)]
            total = sum(sizes)
            reach = {0}
            for x in sizes:
                reach |= {r + x for r in reach}
            if any(total - bound <= r <= bound for r in reach):
                return size
    return n


def test_small_n_against_exhaustive_optimum():
    rng = random.Random(515)
    for _ in range(12):
        n = rng.randrange(5, 11)
        k = rng.randrange(0, 3)
        d = random_outer_k_planar(n, k, seed=rng.randrange(1 << 30))
        actual_k = crossing_report(d).max_per_edge
        sep = balanced_separator(d)
        size = len(sep.separator)
        best = optimum_separator_size(d.graph)
        assert best <= size <= 2 * actual_k + 3


def _walk(d, node):
    if node.separation is not None:
        k = crossing_report(d).max_per_edge
        assert check_separation(d, k, node.separation) is None
    if node.children:
        sides = (node.separation.a_side, node.separation.b_side)
        for side, child in zip(sides, node.children):
            child_d, _ = sub_drawing(d, side)
            _walk(child_d, child)
    else:
        assert node.leaf_reason is not None


def test_decompose_cycle_nine():
    d = cycle_plus(9)
    tree = recursive_decompose(d, 3)
    assert tree.depth() <= 3
    _walk(d, tree)

    def leaves(t):
        return [t] if not t.children else [x for c in t.children for x in leaves(c)]

    for leaf in leaves(tree):
        assert leaf.n <= 3 and leaf.leaf_reason == "size"


def test_decompose_single_leaf():
    d = cycle_plus(5)
    tree = recursive_decompose(d, 8)
    assert not tree.children and tree.leaf_reason == "size"
    assert tree.vertices == [0, 1, 2, 3, 4]


def test_decompose_grid_hamiltonian():
    g = grid(4, 4)
    d = make_drawing(g, grid_snake_order(4, 4))
    tree = recursive_decompose(d, 4)
    _walk(d, tree)


def test_decompose_rejects_bad_leaf_size():
    with pytest.raises(ValueError):
        recursive_decompose(cycle_plus(5), 0)


def test_tree_report_is_json_ready():
    d = cycle_plus(12, [(0, 6)])
    tree = recursive_decompose(d, 4)
    blob = json.dumps(tree.to_dict(), sort_keys=True)
    assert '"cutting-edge"' in blob
    # root witness speaks in original vertex ids
    assert json.loads(blob)["witness"]["edge"] == [0, 6]


def test_vertex_translation_in_nested_reports():
    # the root split of C_18 + chords puts vertex 17 in a child whose local
    # ids differ; the report must still name original vertices
    d = cycle_plus(18, [(1, 17), (2, 16)])
    tree = recursive_decompose(d, 5)
    seen_ids = set()

    def visit(nd):
        seen_ids.update(nd.get("vertices", []))
        for c in nd.get("children", []):
            visit(c)

    visit(tree.to_dict())
    assert seen_ids == set(range(18))
