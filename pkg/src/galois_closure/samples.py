"""Random and exhaustive generators of covers for tests and experiments."""

from __future__ import annotations

import random
from itertools import permutations, product
from typing import Iterator

from .graphs import DartGraph, GraphCover, voltage_cover
from .perms import EquivariantMap, PermAction, action_cover


def random_permutation(n: int, rng: random.Random) -> tuple[int, ...]:
    p = list(range(n))
    rng.shuffle(p)
    return tuple(p)


def random_transitive_action(n: int, generators: int, rng: random.Random) -> PermAction:
    while True:
        a = PermAction(n, tuple(random_permutation(n, rng) for _ in range(generators)))
        if a.transitive:
            return a


def random_base_graph(rng: random.Random, max_vertices: int = 4, max_edges: int = 5) -> DartGraph:
    """Connected multigraph with at least one cycle; loops and parallel edges allowed."""
    if max_edges < max_vertices:
        raise ValueError("need max_edges >= max_vertices for a cycle")
    n = rng.randint(1, max_vertices)
    edges = [(rng.randrange(v), v) for v in range(1, n)]
    for _ in range(rng.randint(1, max_edges - len(edges))):
        edges.append((rng.randrange(n), rng.randrange(n)))
    rng.shuffle(edges)
    return DartGraph.from_edges(n, [(u, v) if rng.random() < 0.5 else (v, u) for u, v in edges])


def random_cover(base: DartGraph, degree: int, rng: random.Random, tries: int = 200) -> GraphCover:
    """Connected cover of ``base`` from random voltages.

    Raises ValueError when no connected cover turns up, which happens for
    trees and other bases without enough cycles.
    """
    for _ in range(tries):
        c = voltage_cover(base, [random_permutation(degree, rng) for _ in range(base.edge_count)], degree)
        if c.dom.is_connected():
            return c
    raise ValueError(f"no connected degree-{degree} cover found")


def random_graph_cover(
    rng: random.Random, max_degree: int = 6, max_vertices: int = 4, max_edges: int = 5
) -> GraphCover:
    """A connected cover, of random degree, of a random base."""
    while True:
        base = random_base_graph(rng, max_vertices, max_edges)
        degree = rng.randint(1, max_degree)
        try:
            return random_cover(base, degree, rng)
        except ValueError:
            continue


def random_action_cover(rng: random.Random, max_points: int = 6, generators: int = 2) -> EquivariantMap:
    return action_cover(random_transitive_action(rng.randint(1, max_points), generators, rng))


def transitive_pairs(max_points: int) -> Iterator[PermAction]:
    """Every transitive action of two generators on 1..max_points points."""
    for n in range(1, max_points + 1):
        perms = list(permutations(range(n)))
        for a, b in product(perms, perms):
            act = PermAction(n, (a, b))
            if act.transitive:
                yield act
