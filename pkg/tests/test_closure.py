import random
from math import factorial

import pytest
from hypothesis import given, strategies as st

import bruteforce
from conftest import CYCLIC3_GENERATORS, S3_GENERATORS
from galois_closure.category import first_eligible
from galois_closure.closure import (
    ClosureTrace,
    algorithm_i,
    algorithm_r,
    aut,
    closure_traces_ok,
    hom_count,
    hom_set,
    is_galois,
    is_isomorphic,
    iter_homs,
    precedes,
)
from galois_closure.errors import ContractViolation, NonCovering
from galois_closure.graphs import GRAPHS, DartGraph, GraphCover, bouquet, compose, derived_cover, identity
from galois_closure.perms import PERMS, PermAction, action_cover
from galois_closure.samples import random_base_graph, random_cover, random_graph_cover

seeds = st.integers(0, 10**6)


def cover_from_seed(seed, max_degree=5):
    return random_graph_cover(random.Random(seed), max_degree=max_degree)


def pair_from_seed(seed, max_degree=4):
    rng = random.Random(seed)
    base = random_base_graph(rng)
    return random_cover(base, rng.randint(1, max_degree), rng), random_cover(base, rng.randint(1, max_degree), rng)


def last_eligible(components, eligible):
    return eligible[-1]


def largest_pair(degrees):
    a, b = sorted(range(len(degrees)), key=lambda k: (-degrees[k], k))[:2]
    return a, b


def _group(perms):
    n = len(perms[0])
    ident = tuple(range(n))
    seen, frontier = {ident}, [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in perms:
                h = tuple(s[x] for x in g)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return seen


def normalizer_quotient(perms):
    """|N_G(H)/H| for G generated by ``perms`` and H the stabilizer of 0."""
    G = _group(perms)
    H = {g for g in G if g[0] == 0}

    def conj(g, h):
        inv = [0] * len(g)
        for i, x in enumerate(g):
            inv[x] = i
        return tuple(g[h[inv[i]]] for i in range(len(g)))

    N = [g for g in G if {conj(g, h) for h in H} == H]
    return len(N) // len(H)


def _raw(c):
    return (c.vertex_map, c.dart_map), ((c.dom.vertex_count, list(c.dom.origin)), (c.cod.vertex_count, list(c.cod.origin)))


# Hom and Aut ---------------------------------------------------------------------


@given(seeds)
def test_hom_of_a_cover_to_itself_contains_identity(seed):
    f = cover_from_seed(seed)
    assert identity(f.dom) in hom_set(f, f)


def test_s3_closure_has_three_maps_to_the_input(s3_cover):
    g = algorithm_i(s3_cover).closure
    homs = hom_set(g, s3_cover)
    gm, gg = _raw(g)
    fm, fg = _raw(s3_cover)
    brute = bruteforce.lifts(gm, gg, fm, fg)
    assert len(homs) == len(brute) == 3
    assert sorted((h.vertex_map, h.dart_map) for h in homs) == sorted(brute)
    assert all(compose(s3_cover, h) == g for h in homs)


@pytest.mark.parametrize(
    "generators, expected", [(S3_GENERATORS, 1), (CYCLIC3_GENERATORS, 3), ([(0,), (0,)], 1)]
)
def test_aut_counts(generators, expected):
    f = derived_cover(generators)
    m, gr = _raw(f)
    assert len(aut(f)) == expected
    assert bruteforce.deck_transformations(m, gr) == expected
    assert normalizer_quotient(generators) == expected


def test_aut_of_identity_is_identity():
    A = bouquet(2)
    assert aut(identity(A)) == [identity(A)]


@given(seeds)
def test_aut_elements_are_isomorphisms(seed):
    f = cover_from_seed(seed)
    autos = aut(f)
    assert len(autos) <= f.degree
    for h in autos:
        assert h.degree == 1
        assert compose(h, GRAPHS.inverse(h)) == identity(f.dom)


@given(seeds)
def test_hom_set_bounded_and_duplicate_free(seed):
    f, g = pair_from_seed(seed)
    homs = hom_set(g, f)
    assert len(homs) <= f.degree
    assert len(set(homs)) == len(homs)
    assert set(homs) == set(iter_homs(g, f))
    assert len(homs) == hom_count(g, f)
    for h in homs:
        assert compose(f, h) == g


@given(seeds)
def test_hom_set_agrees_with_path_lifting(seed):
    f, g = pair_from_seed(seed)
    assert sorted(hom_set(g, f), key=lambda h: h.vertex_map) == sorted(
        GRAPHS.lifts(g, f), key=lambda h: h.vertex_map
    )


@given(seeds)
def test_equal_degree_homs_are_invertible(seed):
    f, g = pair_from_seed(seed, 3)
    if f.degree != g.degree:
        return
    for h in hom_set(g, f):
        assert h.degree == 1
        assert compose(GRAPHS.inverse(h), h) == identity(g.dom)


def test_hom_set_errors(s3_cover):
    with pytest.raises(ContractViolation):
        hom_set(s3_cover, identity(DartGraph.from_edges(2, [(0, 1), (1, 0)])))
    broken = GraphCover(bouquet(2), bouquet(2), (0,), (0, 1, 0, 1))
    with pytest.raises(NonCovering):
        hom_set(broken, identity(bouquet(2)))


# Galois test ----------------------------------------------------------------------


def test_galois_examples(s3_cover, cyclic3_cover, cyclic4_cover):
    assert not is_galois(s3_cover)
    assert is_galois(cyclic3_cover)
    assert is_galois(cyclic4_cover)


@given(seeds)
def test_small_degree_covers_are_galois(seed):
    f = cover_from_seed(seed, 2)
    assert is_galois(f)


@given(seeds)
def test_galois_iff_aut_has_degree_many_elements(seed):
    f = cover_from_seed(seed)
    assert is_galois(f) == (len(aut(f)) == f.degree)


# isomorphism ---------------------------------------------------------------------


def test_isomorphism_examples(s3_cover):
    assert is_isomorphic(s3_cover, s3_cover)
    closure = algorithm_i(s3_cover).closure
    assert not is_isomorphic(s3_cover, closure)
    assert is_isomorphic(closure, algorithm_r(s3_cover).closure)
    with pytest.raises(ContractViolation):
        is_isomorphic(s3_cover, identity(DartGraph.from_edges(1, [(0, 0)])))


def test_relabeled_cover_is_isomorphic(cyclic3_cover):
    swapped = GRAPHS.pullback(cyclic3_cover, cyclic3_cover).components[1].left
    relabeled = compose(cyclic3_cover, swapped)
    assert relabeled.dom == cyclic3_cover.dom
    assert is_isomorphic(relabeled, cyclic3_cover)


def test_precedes(s3_cover):
    closure = algorithm_i(s3_cover).closure
    assert precedes(s3_cover, closure)
    assert not precedes(closure, s3_cover)
    assert not precedes(s3_cover, identity(DartGraph.from_edges(1, [(0, 0)])))


# Algorithm I ------------------------------------------------------------------------


@given(seeds)
def test_algorithm_i_returns_small_inputs_unchanged(seed):
    f = cover_from_seed(seed, 2)
    res = algorithm_i(f)
    assert res.closure == f
    assert len(res.trace.iterations) == 1
    assert res.trace.iterations[0].halted_at == 1


def test_algorithm_i_s3_trace(s3_cover):
    res = algorithm_i(s3_cover)
    assert res.degree == 6
    first, second = res.trace.iterations
    assert first.component_degrees == [1, 2]
    assert first.chosen_component_index == 1
    assert first.halted_at is None
    assert second.n == 2 and second.halted_at == 1
    assert second.current_cover_degree == 6
    assert second.hom_count_lower_witness == 3
    assert compose(s3_cover, res.witness) == res.closure
    assert res.witness.degree == 2


def test_algorithm_i_cyclic_halts_at_the_test(cyclic3_cover):
    res = algorithm_i(cyclic3_cover)
    assert res.closure == cyclic3_cover
    (only,) = res.trace.iterations
    assert only.component_degrees == [1, 1, 1]
    assert only.halted_at == 3


def test_algorithm_i_rejects_bad_chooser(s3_cover):
    with pytest.raises(ContractViolation):
        algorithm_i(s3_cover, choose=lambda comps, eligible: 0)


# Algorithm R ------------------------------------------------------------------------


@given(seeds)
def test_algorithm_r_returns_small_inputs_unchanged(seed):
    f = cover_from_seed(seed, 2)
    res = algorithm_r(f)
    assert res.closure == f
    assert res.trace.children == []
    assert res.trace.depth() == 0


def test_algorithm_r_s3(s3_cover):
    res = algorithm_r(s3_cover)
    assert res.degree == 6
    assert res.trace.depth() >= 1
    assert compose(s3_cover, res.witness) == res.closure
    assert is_isomorphic(res.closure, algorithm_i(s3_cover).closure)


def test_algorithm_r_cyclic4(cyclic4_cover):
    res = algorithm_r(cyclic4_cover)
    assert res.degree == 4
    assert is_galois(res.closure)


def test_algorithm_r_memo_is_transparent(s3_cover):
    f = derived_cover([(1, 2, 3, 0), (1, 0, 2, 3)])
    for cover in (s3_cover, f):
        plain, memo = algorithm_r(cover), algorithm_r(cover, memoize=True)
        assert plain.closure == memo.closure
        assert plain.trace.to_dict() == memo.trace.to_dict()


# shared properties -------------------------------------------------------------------


@given(seeds)
def test_closures_are_galois_and_agree(seed):
    f = cover_from_seed(seed)
    ci, cr = algorithm_i(f), algorithm_r(f)
    for res in (ci, cr):
        assert res.closure.cod == f.cod
        assert compose(f, res.witness) == res.closure
        assert is_galois(res.closure)
        assert len(hom_set(res.closure, f)) == f.degree
        assert factorial(f.degree) % res.degree == 0
    assert is_isomorphic(ci.closure, cr.closure)
    assert closure_traces_ok(ci.trace) == []


@given(seeds)
def test_choices_do_not_change_the_class(seed):
    f = cover_from_seed(seed, 4)
    base = algorithm_i(f).closure
    assert is_isomorphic(base, algorithm_i(f, choose=last_eligible).closure)
    assert is_isomorphic(base, algorithm_r(f, choose_component=last_eligible).closure)
    assert is_isomorphic(base, algorithm_r(f, choose_pair=largest_pair).closure)


@given(seeds)
def test_maps_from_a_galois_cover_are_galois(seed):
    f = cover_from_seed(seed, 4)
    g = algorithm_i(f).closure
    for h in hom_set(g, f):
        assert is_galois(h)


@pytest.mark.parametrize("instance", ["graph", "perm"])
def test_closure_traces_round_trip(instance, s3_cover):
    f = s3_cover if instance == "graph" else action_cover(PermAction.of(*S3_GENERATORS))
    for run in (algorithm_i, algorithm_r):
        trace = run(f).trace
        assert ClosureTrace.from_dict(trace.to_dict()) == trace


def test_trace_checker_flags_violations(s3_cover):
    trace = algorithm_i(s3_cover).trace
    trace.iterations[1].hom_count_lower_witness = 1
    trace.iterations[0].current_cover_degree = 4
    problems = closure_traces_ok(trace)
    assert len(problems) == 2


def test_algorithms_work_on_actions():
    f = action_cover(PermAction.of((1, 2, 3, 4, 0), (1, 0, 2, 3, 4)))
    ci, cr = algorithm_i(f), algorithm_r(f)
    assert ci.degree == cr.degree == 120
    assert is_isomorphic(ci.closure, cr.closure, PERMS)
    assert first_eligible([], [4, 5]) == 4
