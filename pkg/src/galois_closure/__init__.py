"""Galois closures of finite covers.

Two closure algorithms (iterative and divide-and-conquer) written against a
small category interface, with two instances: unramified covers of finite
multigraphs and finite permutation actions.
"""

from .category import Component, CoverCategory, PullbackResult, PushoutResult
from .closure import (
    ClosureTrace,
    GaloisClosureResult,
    algorithm_i,
    algorithm_r,
    aut,
    hom_set,
    is_galois,
    is_isomorphic,
)
from .errors import (
    ContractViolation,
    CoverError,
    DisconnectedCodomain,
    DisconnectedDomain,
    EmptyDomain,
    MalformedInput,
    NonCovering,
)
from .graphs import GRAPHS, DartGraph, GraphCover, derived_cover, validate_cover
from .perms import PERMS, EquivariantMap, PermAction, monodromy, oracle_closure_degree

__all__ = [
    "Component", "CoverCategory", "PullbackResult", "PushoutResult",
    "ClosureTrace", "GaloisClosureResult", "algorithm_i", "algorithm_r", "aut",
    "hom_set", "is_galois", "is_isomorphic",
    "ContractViolation", "CoverError", "DisconnectedCodomain", "DisconnectedDomain",
    "EmptyDomain", "MalformedInput", "NonCovering",
    "GRAPHS", "DartGraph", "GraphCover", "derived_cover", "validate_cover",
    "PERMS", "EquivariantMap", "PermAction", "monodromy", "oracle_closure_degree",
]
