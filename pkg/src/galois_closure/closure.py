"""Hom-sets, Galois tests, and the two closure algorithms, for any instance.

Everything here talks to the instance only through
:class:`~galois_closure.category.CoverCategory`.  ``Hom(g, f)`` means the set
of arrows ``h`` with ``g == f o h``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from .category import Component, CoverCategory, PullbackResult, first_eligible
from .errors import ContractViolation


def _category(arrow, cat: CoverCategory | None) -> CoverCategory:
    return cat if cat is not None else arrow.category


def _same_codomain(f, g):
    if f.cod != g.cod:
        raise ContractViolation("covers must share a codomain")


def _homs_from_pullback(cat: CoverCategory, pb: PullbackResult) -> list:
    # h = p o i o (q o i)^-1 for every component on which q is an isomorphism
    return [
        cat.compose(c.left, cat.inverse(c.right)) for c in pb.components if c.degree_right == 1
    ]


def hom_set(g, f, cat: CoverCategory | None = None) -> list:
    """All ``h`` with ``f o h == g``, read off the pullback of ``f`` and ``g``."""
    cat = _category(f, cat)
    _same_codomain(f, g)
    cat.check_cover(f)
    cat.check_cover(g)
    return _homs_from_pullback(cat, cat.pullback(f, g))


def hom_count(g, f, cat: CoverCategory | None = None) -> int:
    cat = _category(f, cat)
    _same_codomain(f, g)
    return cat.pullback(f, g).right_degrees.count(1)


def aut(f, cat: CoverCategory | None = None) -> list:
    return hom_set(f, f, cat)


def is_galois(f, cat: CoverCategory | None = None) -> bool:
    """Every component of the self-pullback has left degree one."""
    cat = _category(f, cat)
    cat.check_cover(f)
    return all(d == 1 for d in cat.pullback(f, f).left_degrees)


def iter_homs(g, f, cat: CoverCategory | None = None):
    """Yield the elements of ``hom_set(g, f)`` without building the whole pullback.

    Every component of the pullback meets the fiber over one point of
    ``dom g``; a component is an isomorphic copy of ``dom g`` exactly when
    it is no larger than ``dom g``, so bigger ones are abandoned early.
    """
    cat = _category(f, cat)
    _same_codomain(f, g)
    limit = cat.size(g.dom)
    for b in cat.fiber(f, cat.image(g, 0)):
        comp = cat.pullback_component(f, g, b, 0, max_size=limit)
        if comp is not None and comp.degree_right == 1:
            yield cat.compose(comp.left, cat.inverse(comp.right))


def is_isomorphic(f, g, cat: CoverCategory | None = None) -> bool:
    """Equal degrees and some ``h`` with ``g == f o h``."""
    cat = _category(f, cat)
    _same_codomain(f, g)
    cat.check_cover(f)
    cat.check_cover(g)
    if cat.degree(f) != cat.degree(g):
        return False
    return next(iter_homs(g, f, cat), None) is not None


def precedes(f, g, cat: CoverCategory | None = None) -> bool:
    """``f`` is below ``g`` in the preorder: some ``h`` has ``g == f o h``."""
    if f.cod != g.cod:
        return False
    return bool(hom_set(g, f, cat))


# traces -----------------------------------------------------------------


@dataclass
class IterationRecord:
    n: int
    current_cover_degree: int
    hom_count_lower_witness: int | None
    component_degrees: list[int]
    chosen_component_index: int | None = None
    halted_at: int | None = None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "current_cover_degree": self.current_cover_degree,
            "hom_count_lower_witness": self.hom_count_lower_witness,
            "component_degrees": list(self.component_degrees),
            "chosen_component_index": self.chosen_component_index,
            "halted_at": self.halted_at,
        }

    @classmethod
    def from_dict(cls, d: dict) -> IterationRecord:
        return cls(
            d["n"],
            d["current_cover_degree"],
            d["hom_count_lower_witness"],
            list(d["component_degrees"]),
            d["chosen_component_index"],
            d["halted_at"],
        )


@dataclass
class MergeRecord:
    left_degree: int
    right_degree: int
    component_degrees: list[int]
    chosen_component_index: int
    result_degree: int

    def to_dict(self) -> dict:
        return {
            "left_degree": self.left_degree,
            "right_degree": self.right_degree,
            "component_degrees": list(self.component_degrees),
            "chosen_component_index": self.chosen_component_index,
            "result_degree": self.result_degree,
        }

    @classmethod
    def from_dict(cls, d: dict) -> MergeRecord:
        return cls(
            d["left_degree"],
            d["right_degree"],
            list(d["component_degrees"]),
            d["chosen_component_index"],
            d["result_degree"],
        )


@dataclass
class ClosureTrace:
    algorithm: str
    input_degree: int
    iterations: list[IterationRecord] = field(default_factory=list)
    children: list[ClosureTrace] = field(default_factory=list)
    merges: list[MergeRecord] = field(default_factory=list)
    closure_degree: int | None = None

    def depth(self) -> int:
        return 1 + max((c.depth() for c in self.children), default=0) if self.children else 0

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()

    def to_dict(self) -> dict:
        out = {
            "algorithm": self.algorithm,
            "input_degree": self.input_degree,
            "closure_degree": self.closure_degree,
            "iterations": [r.to_dict() for r in self.iterations],
        }
        if self.algorithm == "r":
            out["children"] = [c.to_dict() for c in self.children]
            out["merges"] = [m.to_dict() for m in self.merges]
        return out

    @classmethod
    def from_dict(cls, d: dict) -> ClosureTrace:
        return cls(
            d["algorithm"],
            d["input_degree"],
            [IterationRecord.from_dict(r) for r in d["iterations"]],
            [cls.from_dict(c) for c in d.get("children", [])],
            [MergeRecord.from_dict(m) for m in d.get("merges", [])],
            d.get("closure_degree"),
        )


@dataclass
class GaloisClosureResult:
    closure: Any
    witness: Any
    degree: int
    trace: ClosureTrace


# algorithms -------------------------------------------------------------------


def algorithm_i(
    f,
    cat: CoverCategory | None = None,
    choose: Callable[[Sequence[Component], Sequence[int]], int] = first_eligible,
) -> GaloisClosureResult:
    """Iterative closure: keep pulling the current cover back against ``f``.

    Each round pulls ``f`` back along the current cover ``g`` and, unless
    every component is already a copy of ``g``, replaces ``g`` by ``g`` times
    a component that is not.  Stops once the round counter reaches
    ``deg f - 1``.  ``choose`` picks among the eligible component indices.
    """
    cat = _category(f, cat)
    cat.check_cover(f)
    deg_f = cat.degree(f)
    trace = ClosureTrace("i", deg_f)
    g, witness, n = f, cat.identity(f.dom), 1
    while True:
        pb = cat.pullback(f, g)
        degrees = pb.right_degrees
        record = IterationRecord(n, cat.degree(g), degrees.count(1), degrees)
        trace.iterations.append(record)
        if n >= deg_f - 1:
            # the pullback here only feeds the trace record
            record.halted_at = 1
            break
        if all(d == 1 for d in degrees):
            record.halted_at = 3
            break
        eligible = [k for k, d in enumerate(degrees) if d > 1]
        k = choose(pb.components, eligible)
        if k not in eligible:
            raise ContractViolation(f"chooser returned ineligible component {k}")
        record.chosen_component_index = k
        comp = pb.components[k]
        g = cat.compose(g, comp.right)
        witness = comp.left
        n += 1
    trace.closure_degree = cat.degree(g)
    return GaloisClosureResult(g, witness, trace.closure_degree, trace)


def smallest_pair(degrees: Sequence[int]) -> tuple[int, int]:
    """Indices of the two smallest degrees, earlier entries winning ties."""
    a, b = sorted(range(len(degrees)), key=lambda k: (degrees[k], k))[:2]
    return a, b


def algorithm_r(
    f,
    cat: CoverCategory | None = None,
    choose_component: Callable[[Sequence[Component], Sequence[int]], int] = first_eligible,
    choose_pair: Callable[[Sequence[int]], tuple[int, int]] = smallest_pair,
    memoize: bool = False,
) -> GaloisClosureResult:
    """Divide and conquer: close each piece of the self-pullback, then merge.

    The pieces ``p o i`` of the self-pullback have smaller degree than ``f``;
    their closures are merged pairwise through pullbacks until one cover
    ``g`` of ``dom f`` is left, and ``f o g`` is returned.
    """
    cat = _category(f, cat)
    cat.check_cover(f)
    memo: dict | None = {} if memoize else None
    closure, witness, trace = _recurse(cat, f, choose_component, choose_pair, memo)
    return GaloisClosureResult(closure, witness, trace.closure_degree, trace)


def _recurse(cat, f, choose_component, choose_pair, memo):
    if memo is not None and f in memo:
        return memo[f]
    deg_f = cat.degree(f)
    trace = ClosureTrace("r", deg_f)
    if deg_f <= 2:
        trace.iterations.append(IterationRecord(1, deg_f, None, [], halted_at=1))
        trace.closure_degree = deg_f
        out = (f, cat.identity(f.dom), trace)
    else:
        pb = cat.pullback(f, f)
        degrees = pb.left_degrees
        trace.iterations.append(IterationRecord(1, deg_f, degrees.count(1), degrees))
        pool: list = []
        for comp in pb.components:
            sub, _, sub_trace = _recurse(cat, comp.left, choose_component, choose_pair, memo)
            trace.children.append(sub_trace)
            if sub not in pool:
                pool.append(sub)
        while len(pool) > 1:
            a, b = choose_pair([cat.degree(x) for x in pool])
            g, h = pool[a], pool[b]
            merged = cat.pullback(g, h)
            k = choose_component(merged.components, list(range(len(merged.components))))
            new = cat.compose(g, merged.components[k].left)
            trace.merges.append(
                MergeRecord(cat.degree(g), cat.degree(h), merged.left_degrees, k, cat.degree(new))
            )
            pool = [x for j, x in enumerate(pool) if j not in (a, b)]
            if new not in pool:
                pool.append(new)
        g = pool[0]
        closure = cat.compose(f, g)
        trace.closure_degree = cat.degree(closure)
        out = (closure, g, trace)
    if memo is not None:
        memo[f] = out
    return out


def closure_traces_ok(trace: ClosureTrace) -> list[str]:
    """Check the iterative-run loop invariants; returns a list of violations.

    At the start of round ``n`` the current cover has at least ``n`` maps
    down to the input, and its degree is at most
    ``deg f * (deg f - 1) * ... * (deg f - n + 1)``.
    """
    problems = []
    if trace.algorithm != "i":
        return problems
    d = trace.input_degree
    for r in trace.iterations:
        bound = 1
        for k in range(1, r.n + 1):
            bound *= d - k + 1
        if r.hom_count_lower_witness is None or r.hom_count_lower_witness < r.n:
            problems.append(f"round {r.n}: hom count {r.hom_count_lower_witness} < {r.n}")
        if r.current_cover_degree > bound:
            problems.append(f"round {r.n}: degree {r.current_cover_degree} > {bound}")
    return problems
