"""The interface an instance must provide for the closure algorithms.

An instance is a category of finite objects in which every object splits into
connected pieces, connected objects admit fiber products, and arrows into a
connected object carry a multiplicative degree.  ``CoverCategory`` collects the
operations the generic code in :mod:`galois_closure.closure` and
:mod:`galois_closure.axioms` relies on.  Arrows are expected to expose ``dom``
and ``cod`` attributes and to compare equal exactly when they are the same map
between the same (canonically labeled) objects.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Callable, Sequence


@dataclass(frozen=True)
class Component:
    """One element of Sigma(apex), with both projections restricted to it."""

    inclusion: Any
    left: Any
    right: Any
    degree_left: int
    degree_right: int


@dataclass(frozen=True)
class PullbackResult:
    apex: Any
    proj_left: Any
    proj_right: Any
    components: tuple[Component, ...]

    @property
    def left_degrees(self) -> list[int]:
        return [c.degree_left for c in self.components]

    @property
    def right_degrees(self) -> list[int]:
        return [c.degree_right for c in self.components]


@dataclass(frozen=True)
class PushoutResult:
    apex: Any
    left: Any
    right: Any


class CoverCategory(ABC):
    """Operations on objects and arrows of one concrete instance."""

    name: str = "abstract"

    @abstractmethod
    def identity(self, obj): ...

    @abstractmethod
    def compose(self, g, f):
        """Return ``g o f`` (apply ``f`` first)."""

    @abstractmethod
    def degree(self, arrow) -> int:
        """Fiber size of an arrow whose codomain is connected."""

    @abstractmethod
    def fiber_product(self, f, g):
        """Return ``(apex, p, q)`` with ``f o p == g o q``; apex canonically labeled."""

    @abstractmethod
    def components(self, obj) -> list:
        """Inclusions of the connected components, ordered by smallest label."""

    @abstractmethod
    def is_connected(self, obj) -> bool: ...

    @abstractmethod
    def inverse(self, arrow):
        """Inverse of a degree-one cover."""

    @abstractmethod
    def factor(self, u, inclusion):
        """The arrow ``k`` with ``inclusion o k == u``, or None if ``u`` misses it."""

    @abstractmethod
    def pushout(self, f, g) -> PushoutResult: ...

    @abstractmethod
    def pushout_mediating(self, po: PushoutResult, a, b):
        """The arrow ``u`` with ``u o po.left == a`` and ``u o po.right == b``, or None."""

    @abstractmethod
    def pullback_mediating(self, pb: PullbackResult, k, ell):
        """The arrow ``t`` with ``p o t == k`` and ``q o t == ell``, or None."""

    @abstractmethod
    def lifts(self, h, f) -> list:
        """Every ``k`` with ``f o k == h`` found by path lifting (no fiber product)."""

    @abstractmethod
    def is_epic(self, arrow) -> bool: ...

    @abstractmethod
    def is_monic(self, arrow) -> bool: ...

    @abstractmethod
    def check_cover(self, arrow) -> None:
        """Raise a :class:`~galois_closure.errors.CoverError` unless ``arrow`` is a cover."""

    @abstractmethod
    def fiber(self, arrow, point) -> list:
        """Points (vertices) of ``dom arrow`` over ``point``, increasing."""

    @abstractmethod
    def image(self, arrow, point):
        """Where ``arrow`` sends a point (vertex) of its domain."""

    @abstractmethod
    def size(self, obj) -> int:
        """Number of points (vertices) of an object."""

    @abstractmethod
    def pullback_component(self, f, g, left_point, right_point, max_size: int | None = None):
        """The component of the fiber product of ``f`` and ``g`` through a pair.

        Explores only that component and labels it exactly as
        :meth:`pullback` would, so ``left``/``right`` agree with the
        matching entry of ``pullback(f, g).components``.  ``inclusion`` is
        None.  Returns None once the component outgrows ``max_size``.
        """

    def arrows_equal(self, a, b) -> bool:
        return a == b

    def pullback(self, f, g) -> PullbackResult:
        apex, p, q = self.fiber_product(f, g)
        comps = []
        for i in self.components(apex):
            left = self.compose(p, i)
            right = self.compose(q, i)
            comps.append(Component(i, left, right, self.degree(left), self.degree(right)))
        return PullbackResult(apex, p, q, tuple(comps))


ComponentChooser = Callable[[Sequence[Component], Sequence[int]], int]


def first_eligible(components: Sequence[Component], eligible: Sequence[int]) -> int:
    return eligible[0]
