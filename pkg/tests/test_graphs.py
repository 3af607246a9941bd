import random

import pytest
from hypothesis import given, strategies as st

import bruteforce
from conftest import S3_GENERATORS
from galois_closure.errors import (
    ContractViolation,
    DisconnectedCodomain,
    DisconnectedDomain,
    EmptyDomain,
    NonCovering,
)
from galois_closure.graphs import (
    GRAPHS,
    DartGraph,
    GraphCover,
    bouquet,
    components,
    compose,
    cover_from_json,
    cover_to_json,
    fiber_product,
    graph_from_json,
    graph_to_json,
    identity,
    lifts,
    pushout,
    to_dot,
    validate_cover,
    voltage_cover,
)
from galois_closure.samples import random_base_graph, random_cover, random_graph_cover

seeds = st.integers(0, 10**6)


def cover_from_seed(seed, max_degree=5):
    return random_graph_cover(random.Random(seed), max_degree=max_degree)


def triangle_with_loop():
    return DartGraph.from_edges(3, [(0, 1), (1, 2), (2, 0), (1, 1)])


# validation ------------------------------------------------------------------


@pytest.mark.parametrize("graph", [bouquet(1), bouquet(3), triangle_with_loop()])
def test_identity_is_a_degree_one_cover(graph):
    validate_cover(identity(graph))
    assert identity(graph).degree == 1


def test_s3_example_is_a_degree_three_cover(s3_cover):
    validate_cover(s3_cover)
    assert s3_cover.dom.vertex_count == 3
    assert s3_cover.dom.edge_count == 6
    assert s3_cover.cod == bouquet(2)
    assert s3_cover.degree == 3


def test_collapsing_two_darts_breaks_local_bijectivity():
    # both loops of the domain land on the first loop of the base
    c = GraphCover(bouquet(2), bouquet(2), (0,), (0, 1, 0, 1))
    with pytest.raises(NonCovering) as err:
        validate_cover(c)
    assert err.value.clause == "local bijectivity"
    assert err.value.witness == 0


def test_incidence_violation_names_the_dart():
    path = DartGraph.from_edges(2, [(0, 1)])
    c = GraphCover(path, path, (0, 1), (1, 0))
    with pytest.raises(NonCovering) as err:
        validate_cover(c)
    assert err.value.clause == "incidence"
    assert err.value.witness == 0


def test_empty_domain_rejected():
    with pytest.raises(EmptyDomain):
        validate_cover(GraphCover(DartGraph(0, ()), bouquet(1), (), ()))


def test_disconnected_codomain_rejected():
    two = DartGraph.from_edges(2, [(0, 0), (1, 1)])
    with pytest.raises(DisconnectedCodomain):
        validate_cover(identity(two))


def test_category_check_also_requires_connected_domain():
    two_copies = DartGraph.from_edges(2, [(0, 0), (1, 1)])
    c = GraphCover(two_copies, bouquet(1), (0, 0), (0, 1, 0, 1))
    validate_cover(c)
    with pytest.raises(DisconnectedDomain):
        GRAPHS.check_cover(c)


def test_two_cycle_double_covers_a_loop():
    base = DartGraph.from_edges(1, [(0, 0)])
    dom = DartGraph.from_edges(2, [(0, 1), (1, 0)])
    ok = GraphCover(dom, base, (0, 0), (0, 1, 0, 1))
    validate_cover(ok)
    assert ok.degree == 2


def test_odd_dart_count_rejected():
    with pytest.raises(NonCovering):
        DartGraph(1, (0,))


@given(seeds)
def test_random_covers_have_equal_fibers(seed):
    c = cover_from_seed(seed)
    validate_cover(c)
    sizes = {len(fib) for fib in c.vertex_fibers()}
    assert sizes == {c.degree}
    assert {len(fib) for fib in c.dart_fibers()} == {c.degree}


def test_voltage_cover_numbering():
    base = DartGraph.from_edges(2, [(0, 1), (1, 1)])
    c = voltage_cover(base, [(1, 0), (0, 1)], 2)
    # edge 0 lifts from (0, x) to (1, sigma(x)); vertex (v, x) is v * 2 + x
    assert c.dom.edges()[:2] == [(0, 3), (1, 2)]
    assert c.vertex_map == (0, 0, 1, 1)


# composition and degree --------------------------------------------------------


def test_composition_multiplies_degrees(s3_cover):
    pb = GRAPHS.pullback(s3_cover, s3_cover)
    for comp in pb.components:
        top = compose(s3_cover, comp.left)
        validate_cover(top)
        assert top.degree == 3 * comp.degree_left
    assert sorted(c.degree_left for c in pb.components) == [1, 2]


def test_compose_rejects_mismatched_arrows(s3_cover, cyclic3_cover):
    with pytest.raises(ContractViolation):
        compose(s3_cover, cyclic3_cover)


# fiber product -----------------------------------------------------------------


def test_fiber_product_of_identities_is_the_object():
    A = triangle_with_loop()
    pb = GRAPHS.pullback(identity(A), identity(A))
    assert pb.apex == A
    assert len(pb.components) == 1
    assert pb.left_degrees == pb.right_degrees == [1]


def _pair_orbits(perms):
    n = len(perms[0])
    seen, sizes = set(), []
    for start in [(x, y) for x in range(n) for y in range(n)]:
        if start in seen:
            continue
        orbit, stack = {start}, [start]
        while stack:
            x, y = stack.pop()
            for s in perms:
                nxt = (s[x], s[y])
                if nxt not in orbit:
                    orbit.add(nxt)
                    stack.append(nxt)
        seen |= orbit
        sizes.append(len(orbit))
    return sizes


def test_s3_self_product_matches_pair_orbits(s3_cover):
    pb = GRAPHS.pullback(s3_cover, s3_cover)
    assert pb.apex.vertex_count == 9
    assert [comp.inclusion.dom.vertex_count for comp in pb.components] == _pair_orbits(S3_GENERATORS)
    assert [comp.inclusion.dom.vertex_count for comp in pb.components] == [3, 6]
    assert pb.left_degrees == [1, 2]
    assert pb.right_degrees == [1, 2]


def test_cyclic_self_product_splits_completely(cyclic3_cover):
    pb = GRAPHS.pullback(cyclic3_cover, cyclic3_cover)
    assert len(pb.components) == 3
    assert pb.left_degrees == pb.right_degrees == [1, 1, 1]


def test_fiber_product_rejects_different_codomains(s3_cover):
    with pytest.raises(ContractViolation):
        fiber_product(s3_cover, identity(triangle_with_loop()))


@given(seeds, seeds)
def test_pullback_degree_bookkeeping(s1, s2):
    rng = random.Random(s1)
    base = random_base_graph(rng)
    f = random_cover(base, rng.randint(1, 4), rng)
    g = random_cover(base, random.Random(s2).randint(1, 4), rng)
    pb = GRAPHS.pullback(f, g)
    assert sum(pb.right_degrees) == f.degree
    assert sum(pb.left_degrees) == g.degree
    assert compose(f, pb.proj_left) == compose(g, pb.proj_right)
    # each projection is itself a covering map of the (possibly split) apex
    validate_cover(pb.proj_left)
    validate_cover(pb.proj_right)
    for comp in pb.components:
        validate_cover(comp.left)
        validate_cover(comp.right)


@given(seeds)
def test_apex_labels_are_lexicographic(seed):
    f = cover_from_seed(seed, 4)
    apex, p, q = fiber_product(f, f)
    pairs = list(zip(p.vertex_map, q.vertex_map))
    assert pairs == sorted(pairs)
    edges = [(p.dart_map[d], q.dart_map[d]) for d in range(0, apex.dart_count, 2)]
    assert edges == sorted(edges)
    assert all(x % 2 == 0 for x, _ in edges)


@given(seeds)
def test_lazy_component_matches_full_pullback(seed):
    f = cover_from_seed(seed, 4)
    pb = GRAPHS.pullback(f, f)
    for comp in pb.components:
        b, c = comp.left.vertex_map[0], comp.right.vertex_map[0]
        lazy = GRAPHS.pullback_component(f, f, b, c)
        assert lazy.left == comp.left and lazy.right == comp.right
        assert GRAPHS.pullback_component(f, f, b, c, max_size=comp.left.dom.vertex_count - 1) is None


# components --------------------------------------------------------------------


def test_connected_graph_has_one_identity_component():
    A = triangle_with_loop()
    (inc,) = components(A)
    assert inc == identity(A)


def test_components_ordered_by_smallest_vertex():
    # vertex 1 alone, vertices 0 and 2 joined
    g = DartGraph.from_edges(3, [(1, 1), (2, 0)])
    incs = components(g)
    assert [i.vertex_map for i in incs] == [(0, 2), (1,)]
    assert [i.dom.vertex_count for i in incs] == [2, 1]
    for inc in incs:
        assert GRAPHS.is_monic(inc)
        assert inc.dom.is_connected()


@given(seeds)
def test_every_arrow_factors_through_exactly_one_component(seed):
    f = cover_from_seed(seed, 4)
    pb = GRAPHS.pullback(f, f)
    for comp in pb.components:
        hits = [j for j, other in enumerate(pb.components) if GRAPHS.factor(comp.inclusion, other.inclusion)]
        assert len(hits) == 1


def test_components_cover_every_dart_once(s3_cover):
    apex = GRAPHS.pullback(s3_cover, s3_cover).apex
    darts = sorted(d for inc in components(apex) for d in inc.dart_map)
    assert darts == list(range(apex.dart_count))


# pushout -----------------------------------------------------------------------


def test_pushout_of_a_cover_with_itself(s3_cover):
    po = pushout(s3_cover, s3_cover)
    assert po.apex == s3_cover.cod
    assert po.left == po.right == identity(s3_cover.cod)


def test_pushout_along_identity(s3_cover):
    po = pushout(identity(s3_cover.dom), s3_cover)
    assert po.apex == s3_cover.cod
    assert po.right == identity(s3_cover.cod)
    assert po.left == s3_cover


def test_pushout_of_self_product_projections(s3_cover):
    pb = GRAPHS.pullback(s3_cover, s3_cover)
    comp = pb.components[1]
    po = pushout(comp.left, comp.right)
    assert compose(po.left, comp.left) == compose(po.right, comp.right)
    assert po.apex.is_connected()
    mediated = GRAPHS.pushout_mediating(po, s3_cover, s3_cover)
    assert mediated is not None
    assert compose(mediated, po.left) == s3_cover


def test_pushout_rejects_different_domains(s3_cover):
    with pytest.raises(ContractViolation):
        pushout(s3_cover, identity(bouquet(2)))


# lifting versus brute force ------------------------------------------------------


def _raw(c):
    return (c.vertex_map, c.dart_map), ((c.dom.vertex_count, list(c.dom.origin)), (c.cod.vertex_count, list(c.cod.origin)))


@given(seeds)
def test_lifts_agree_with_brute_force(seed):
    rng = random.Random(seed)
    base = random_base_graph(rng, 2, 3)
    f = random_cover(base, rng.randint(1, 3), rng)
    h = random_cover(base, rng.randint(1, 4), rng)
    hm, hg = _raw(h)
    fm, fg = _raw(f)
    expected = sorted(bruteforce.lifts(hm, hg, fm, fg))
    got = sorted((k.vertex_map, k.dart_map) for k in lifts(h, f))
    assert got == expected


# serialization -----------------------------------------------------------------


@given(seeds)
def test_json_round_trip(seed):
    c = cover_from_seed(seed)
    assert cover_from_json(cover_to_json(c)) == c
    assert graph_from_json(graph_to_json(c.dom)) == c.dom


def test_json_flip_convention():
    base = bouquet(1)
    c = GraphCover(base, base, (0,), (1, 0))
    doc = cover_to_json(c)
    assert doc["edge_map"] == [{"edge": 0, "flip": True}]
    assert cover_from_json(doc) == c


def test_dot_export(s3_cover):
    text = to_dot(s3_cover, "s3")
    assert text.startswith("graph s3 {")
    assert text.count(" -- ") == 6
    assert to_dot(s3_cover.cod).count(" -- ") == 2


def test_bruteforce_derived_cover_matches_package(s3_cover):
    (n, origin), _, (vmap, dmap) = bruteforce.derived_cover(S3_GENERATORS)
    assert (n, tuple(origin)) == (s3_cover.dom.vertex_count, s3_cover.dom.origin)
    assert (tuple(vmap), tuple(dmap)) == (s3_cover.vertex_map, s3_cover.dart_map)
