"""Counting engines against the literal mapping-sum definition."""

import itertools
import random

import pytest

from bihom.census import hom_k2q_neighborhood
from bihom.counting import (
    CountBudgetError,
    brute_force_hom,
    hom_count,
    hom_density,
    hom_kpq_complete_target,
    hom_kpq_cycle,
    hom_kpq_path,
    hom_kpq_path_product,
    hom_kpq_tree,
    one_sided_exact_hom,
    star_count,
    _orientation_count,
)
from bihom.graphs import (
    BipartiteGraph,
    SimpleGraph,
    complete_bipartite,
    cycle_graph,
    path_graph,
    random_bipartite,
    tensor_product,
    to_bipartite,
)

P4 = BipartiteGraph(2, 2, [(0, 0), (1, 0), (1, 1)])


def slow_hom(f: SimpleGraph, g: SimpleGraph) -> int:
    """Independent oracle: pure-python map enumeration."""
    if f.n == 0:
        return 1
    count = 0
    fe = f.edges()
    for phi in itertools.product(range(g.n), repeat=f.n):
        if all(g.has_edge(phi[a], phi[b]) for a, b in fe):
            count += 1
    return count


def kpq(p, q):
    return complete_bipartite(p, q)


def random_simple(n, m, seed):
    rng = random.Random(seed)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return SimpleGraph(n, rng.sample(pairs, min(m, len(pairs))))


def random_tree(n, seed):
    rng = random.Random(seed)
    edges = [(rng.randrange(v), v) for v in range(1, n)]
    return SimpleGraph(n, edges)


# ----------------------------------------------------------- brute force


def test_brute_matches_slow_oracle():
    for seed in range(8):
        f = random_simple(3, seed % 4, seed)
        g = random_simple(4, 2 + seed % 4, seed + 100)
        assert brute_force_hom(f, g) == slow_hom(f, g)


def test_brute_edge_cases():
    k1 = SimpleGraph(1, [])
    g = random_simple(5, 6, 3)
    assert brute_force_hom(SimpleGraph(0, []), g) == 1
    assert brute_force_hom(k1, g) == 5
    assert brute_force_hom(SimpleGraph(3, []), g) == 125
    assert brute_force_hom(k1, SimpleGraph(0, [])) == 0


def test_brute_path4_into_path4():
    p4 = P4.as_simple_graph()
    assert brute_force_hom(p4, p4) == 16


def test_brute_budget_breach_reports_blowup():
    f = kpq(3, 3).as_simple_graph()
    g = kpq(4, 4).as_simple_graph()
    with pytest.raises(CountBudgetError) as exc:
        brute_force_hom(f, g, budget=1000)
    assert exc.value.estimate == 8**6 * 9
    assert exc.value.budget == 1000
    assert str(exc.value.estimate) in str(exc.value)


# ------------------------------------------------------------- one-sided


def test_one_sided_matches_brute_on_random_instances():
    for seed in range(20):
        rng = random.Random(seed)
        f = random_bipartite(1 + seed % 3, 1 + (seed // 3) % 3, rng.random(), seed).graph
        g = random_bipartite(3, 4, rng.random(), seed + 50).graph
        expect = brute_force_hom(f.as_simple_graph(), g.as_simple_graph())
        assert one_sided_exact_hom(f, g) == expect
        assert one_sided_exact_hom(f.as_simple_graph(), g) == expect


def test_one_sided_single_vertex_and_isolated_components():
    g = random_bipartite(3, 4, 0.5, 9).graph
    assert one_sided_exact_hom(BipartiteGraph(1, 0, []), g) == 7
    # an edge plus an isolated vertex: 2|E(G)| * |V(G)|
    f = BipartiteGraph(2, 1, [(0, 0)])
    assert one_sided_exact_hom(f, g) == 2 * g.edge_count * 7


def test_one_sided_non_bipartite_source_is_zero():
    assert one_sided_exact_hom(cycle_graph(3), complete_bipartite(3, 3)) == 0
    assert one_sided_exact_hom(cycle_graph(5), complete_bipartite(2, 2)) == 0


def test_one_sided_empty_target():
    assert one_sided_exact_hom(P4, BipartiteGraph(0, 0, [])) == 0


def test_one_sided_budget_breach():
    f = complete_bipartite(4, 4)
    g = complete_bipartite(40, 40)
    with pytest.raises(CountBudgetError) as exc:
        one_sided_exact_hom(f, g, budget=1000)
    assert exc.value.estimate > 1000


def test_orientation_count_paths_agree_with_literal_sum():
    rng = random.Random(4)

    def literal(n_enum, x_adj, opp_nbrs):
        total = 0
        for phi in itertools.product(range(len(x_adj)), repeat=n_enum):
            term = 1
            for nb in opp_nbrs:
                inter = -1
                for p in nb:
                    inter &= x_adj[phi[p]]
                term *= inter.bit_count()
            total += term
        return total

    for trial in range(12):
        nx, ny = 2 + trial % 3, 3 + trial % 3
        x_adj = tuple(rng.getrandbits(ny) for _ in range(nx))
        n_enum = 2 + trial % 2
        opp_nbrs = [
            sorted(rng.sample(range(n_enum), 1 + rng.randrange(n_enum)))
            for _ in range(3)
        ]
        assert _orientation_count(n_enum, x_adj, opp_nbrs) == literal(
            n_enum, x_adj, opp_nbrs
        )
    # arity 5 forces the big-int fallback off the tensor path
    x_adj = tuple(rng.getrandbits(6) for _ in range(3))
    opp = [[0, 1, 2, 3, 4], [0, 2]]
    assert _orientation_count(5, x_adj, opp) == literal(5, x_adj, opp)


# ----------------------------------------------------------- closed forms


def test_complete_target_form():
    assert hom_kpq_complete_target(3, 3, 100, 100) == 2 * 100**6
    assert hom_kpq_complete_target(1, 2, 2, 3) == 2 * 9 + 4 * 3
    with pytest.raises(ValueError):
        hom_kpq_complete_target(0, 2, 3, 3)


def test_cycle_form_frozen_values():
    assert hom_kpq_cycle(2, 2, 6) == 36
    assert hom_kpq_cycle(2, 2, 4) == 32
    assert hom_kpq_cycle(2, 2, 3) == 18
    with pytest.raises(ValueError):
        hom_kpq_cycle(2, 2, 2)


def test_cycle_form_matches_brute():
    for n in (3, 4, 5, 6, 7):
        for p, q in ((1, 1), (1, 2), (2, 2), (2, 3)):
            expect = slow_hom(kpq(p, q).as_simple_graph(), cycle_graph(n))
            assert hom_kpq_cycle(p, q, n) == expect, (p, q, n)


def test_path_form():
    assert hom_kpq_path(2, 3, 5) == 32
    assert hom_kpq_path(2, 2, 2) == 2
    with pytest.raises(ValueError):
        hom_kpq_path(2, 2, 1)
    for length in (2, 3, 4, 5, 6):
        for p, q in ((1, 1), (1, 2), (2, 2), (2, 3)):
            expect = slow_hom(kpq(p, q).as_simple_graph(), path_graph(length))
            assert hom_kpq_path(p, q, length) == expect, (p, q, length)


def test_path_product_matches_brute_on_grid():
    grid = tensor_product(path_graph(3), path_graph(3))
    assert hom_kpq_path_product(2, 2, [3, 3]) == slow_hom(
        kpq(2, 2).as_simple_graph(), grid
    )
    assert hom_kpq_path_product(2, 2, []) == 1


def test_tree_form_star_and_path():
    star = BipartiteGraph(1, 3, [(0, 0), (0, 1), (0, 2)])
    assert hom_kpq_tree(2, 2, star) == 18
    assert hom_kpq_tree(2, 2, P4) == 14
    with pytest.raises(ValueError):
        hom_kpq_tree(2, 2, complete_bipartite(2, 2))
    with pytest.raises(ValueError):
        # right edge count but disconnected (edge + edge + isolated pair)
        hom_kpq_tree(2, 2, BipartiteGraph(3, 3, [(0, 0), (1, 1), (0, 2)]))


def test_tree_form_matches_census_on_random_trees():
    for seed in range(50):
        t = to_bipartite(random_tree(4 + seed % 9, seed))
        assert t is not None
        for p, q in ((2, 2), (2, 3), (3, 3)):
            got = hom_kpq_tree(p, q, t)
            expect = hom_count(kpq(p, q), t).value
            assert got == expect, (seed, p, q)


def test_star_count():
    star = BipartiteGraph(1, 3, [(0, 0), (0, 1), (0, 2)])
    assert star_count(2, star) == 9 + 1 + 1 + 1
    assert star_count(0, BipartiteGraph(2, 1, [])) == 3  # 0^0 = 1
    assert star_count(1, P4) == 2 * P4.edge_count
    assert star_count(3, path_graph(4)) == 1 + 8 + 8 + 1
    with pytest.raises(ValueError):
        star_count(-1, star)


def test_star_with_isolated_vertices_formula():
    # F = K_{1,3} plus two isolated vertices: hom = |V(G)|^2 * sum d(v)^3
    f = SimpleGraph(6, [(0, 1), (0, 2), (0, 3)])
    for seed in range(5):
        g = random_simple(5, 4 + seed, seed)
        assert slow_hom(f, g) == g.n**2 * star_count(3, g)


# ------------------------------------------------------------ dispatcher


def test_dispatch_routes_and_values():
    res = hom_count(kpq(3, 3), complete_bipartite(100, 100))
    assert (res.value, res.method) == (2 * 100**6, "closed_form")

    res = hom_count(kpq(2, 2), cycle_graph(6))
    assert (res.value, res.method) == (36, "closed_form")

    res = hom_count(kpq(2, 3), path_graph(5))
    assert (res.value, res.method) == (32, "closed_form")

    g = random_bipartite(5, 5, 0.6, 11).graph
    res = hom_count(kpq(2, 2), g)
    assert res.method == "census_formula"
    assert res.value == slow_hom(kpq(2, 2).as_simple_graph(), g.as_simple_graph())
    assert res.value == hom_k2q_neighborhood(g, 2)

    res = hom_count(P4, g)
    assert res.method == "one_sided"
    assert res.value == slow_hom(P4.as_simple_graph(), g.as_simple_graph())

    res = hom_count(cycle_graph(3), cycle_graph(5))
    assert res.method == "brute"
    assert res.value == 0  # odd cycle into a longer odd cycle

    res = hom_count(cycle_graph(5), cycle_graph(3))
    assert res.method == "brute"
    assert res.value == slow_hom(cycle_graph(5), cycle_graph(3))


def test_dispatch_identities():
    assert hom_count(SimpleGraph(0, []), cycle_graph(5)).value == 1
    assert hom_count(SimpleGraph(0, []), cycle_graph(5)).method == "identity"
    res = hom_count(cycle_graph(3), complete_bipartite(4, 4))
    assert (res.value, res.method) == (0, "identity")


def test_dispatch_budget_error_propagates():
    with pytest.raises(CountBudgetError):
        hom_count(cycle_graph(3), cycle_graph(3), budget=3)


def test_dispatch_methods_agree_pairwise():
    for seed in range(10):
        f = random_bipartite(2, 2, 0.5 + 0.05 * seed, seed).graph
        g = random_bipartite(3, 3, 0.7, seed + 7).graph
        expect = brute_force_hom(f, g)
        assert one_sided_exact_hom(f, g) == expect
        assert hom_count(f, g).value == expect


# ------------------------------------------------------------ invariants


def test_source_disjoint_union_multiplies():
    g = random_simple(5, 6, 2)
    f1 = path_graph(3)
    f2 = cycle_graph(4)
    union = SimpleGraph(
        7, f1.edges() + [(a + 3, b + 3) for a, b in f2.edges()]
    )
    assert slow_hom(union, g) == slow_hom(f1, g) * slow_hom(f2, g)
    gb = random_bipartite(3, 3, 0.7, 5).graph
    fu = BipartiteGraph(3, 2, [(0, 0), (1, 0), (2, 1)])  # P3 plus an edge
    p3 = BipartiteGraph(2, 1, [(0, 0), (1, 0)])
    k2 = BipartiteGraph(1, 1, [(0, 0)])
    assert one_sided_exact_hom(fu, gb) == brute_force_hom(fu, gb)
    assert one_sided_exact_hom(fu, gb) == one_sided_exact_hom(
        p3, gb
    ) * one_sided_exact_hom(k2, gb)


def test_target_disjoint_union_adds_for_connected_source():
    f = path_graph(4)
    g1 = random_simple(3, 2, 1)
    g2 = cycle_graph(3)
    union = SimpleGraph(6, g1.edges() + [(a + 3, b + 3) for a, b in g2.edges()])
    assert slow_hom(f, union) == slow_hom(f, g1) + slow_hom(f, g2)


def test_tensor_product_multiplies():
    f = path_graph(3)
    g1 = random_simple(3, 2, 8)
    g2 = cycle_graph(4)
    assert slow_hom(f, tensor_product(g1, g2)) == slow_hom(f, g1) * slow_hom(f, g2)
    f2 = kpq(2, 2).as_simple_graph()
    assert brute_force_hom(f2, tensor_product(g1, g2)) == brute_force_hom(
        f2, g1
    ) * brute_force_hom(f2, g2)


def test_edge_monotonicity():
    rng = random.Random(13)
    for _ in range(10):
        g = random_simple(5, 4, rng.randrange(10**6))
        f = path_graph(4)
        missing = [
            (i, j)
            for i in range(5)
            for j in range(i + 1, 5)
            if not g.has_edge(i, j)
        ]
        if not missing:
            continue
        extra = SimpleGraph(5, g.edges() + [rng.choice(missing)])
        # more target edges never hurt
        assert slow_hom(f, extra) >= slow_hom(f, g)
        # more source edges never help
        fm = [(i, j) for i in range(4) for j in range(i + 1, 4) if not f.has_edge(i, j)]
        f_extra = SimpleGraph(4, f.edges() + [rng.choice(fm)])
        assert slow_hom(f_extra, g) <= slow_hom(f, g)


def test_non_bipartite_source_bipartite_target_zero():
    for f in (cycle_graph(3), cycle_graph(5), SimpleGraph(4, [(0, 1), (1, 2), (0, 2), (2, 3)])):
        for g in (complete_bipartite(3, 3), random_bipartite(3, 3, 0.8, 2).graph):
            assert brute_force_hom(f, g) == 0
            assert hom_count(f, g).value == 0


# --------------------------------------------------------------- density


def test_density_values():
    c4 = complete_bipartite(2, 2)
    d = hom_density(kpq(2, 2), c4)
    assert abs(d.to_float() - 1 / 8) < 1e-12
    assert hom_density(SimpleGraph(1, []), cycle_graph(5)).log10 == pytest.approx(0.0)
    assert hom_density(cycle_graph(3), c4).is_zero
