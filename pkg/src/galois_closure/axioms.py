"""Randomized probing of the category axioms on concrete samples.

Each sample is a single cover, a :class:`Cospan` (two covers into one
object) or a :class:`Span` (two covers out of one object, with optional
cocones to probe the pushout against).  Every check becomes one
:class:`CheckResult`; nothing raises.  Commuting squares for the pullback
probes come from path lifting, so they are found without the fiber product
they are tested against.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Sequence

from . import samples as gen
from .category import CoverCategory


@dataclass(frozen=True)
class Cospan:
    left: Any
    right: Any


@dataclass(frozen=True)
class Span:
    left: Any
    right: Any
    cocones: tuple = ()


@dataclass
class CheckResult:
    name: str
    sample: int
    passed: bool
    counterexample: str | None = None

    def to_dict(self) -> dict:
        return {
            "check": self.name,
            "sample": self.sample,
            "passed": self.passed,
            "counterexample": self.counterexample,
        }


@dataclass
class AxiomReport:
    instance: str
    results: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    def summary(self) -> dict[str, tuple[int, int]]:
        """Per check name: (passed, total)."""
        out: dict[str, list[int]] = {}
        for r in self.results:
            tally = out.setdefault(r.name, [0, 0])
            tally[0] += r.passed
            tally[1] += 1
        return {k: (v[0], v[1]) for k, v in out.items()}

    def to_dict(self) -> dict:
        return {
            "instance": self.instance,
            "passed": self.passed,
            "summary": {k: {"passed": p, "total": t} for k, (p, t) in sorted(self.summary().items())},
            "failures": [r.to_dict() for r in self.failures()],
        }


class _Recorder:
    def __init__(self, report: AxiomReport, sample: int):
        self.report, self.sample = report, sample

    def __call__(self, name: str, ok: bool, counterexample: Any = None):
        self.report.results.append(
            CheckResult(name, self.sample, bool(ok), None if ok else repr(counterexample))
        )
        return ok


def _check_cover(cat: CoverCategory, f, rec: _Recorder):
    try:
        cat.check_cover(f)
    except Exception as exc:  # reported, not raised
        rec("cover valid", False, exc)
        return False
    rec("cover valid", True)
    rec("G2-II epic", cat.is_epic(f), "not surjective")
    rec("identity degree", cat.degree(cat.identity(f.dom)) == 1 == cat.degree(cat.identity(f.cod)))
    if cat.degree(f) == 1:
        inv = cat.inverse(f)
        rec(
            "degree one is iso",
            cat.compose(inv, f) == cat.identity(f.dom) and cat.compose(f, inv) == cat.identity(f.cod),
        )
    pb = cat.pullback(f, f)
    for c in pb.components:
        composite = cat.compose(f, c.left)
        rec("G4-I multiplicative", cat.degree(composite) == cat.degree(f) * c.degree_left, c.degree_left)
    deck = cat.lifts(f, f)
    rec(
        "Galois criterion routes agree",
        (len(deck) == cat.degree(f)) == all(d == 1 for d in pb.left_degrees),
        (len(deck), pb.left_degrees),
    )
    return True


def _check_cospan(cat: CoverCategory, f, g, rec: _Recorder, rng: random.Random, probes: int):
    pb = cat.pullback(f, g)
    p, q = pb.proj_left, pb.proj_right
    rec("G1 square commutes", cat.compose(f, p) == cat.compose(g, q))
    rec("G4-III degrees", cat.degree(p) == cat.degree(g) and cat.degree(q) == cat.degree(f),
        (cat.degree(p), cat.degree(q)))
    rec("G4-II left sum", sum(pb.left_degrees) == cat.degree(p), pb.left_degrees)
    rec("G4-II right sum", sum(pb.right_degrees) == cat.degree(f), pb.right_degrees)
    for k, c in enumerate(pb.components):
        rec("G5 inclusion monic", cat.is_monic(c.inclusion), k)
        rec("component connected", cat.is_connected(c.inclusion.dom), k)
        hits = [j for j, d in enumerate(pb.components) if cat.factor(c.inclusion, d.inclusion) is not None]
        rec("G3 components disjoint", hits == [k], hits)

    homs = cat.lifts(g, f)
    rec("Hom bijection count", len(homs) == pb.right_degrees.count(1), (len(homs), pb.right_degrees))

    tops = [f, g] + [cat.compose(f, c.left) for c in pb.components]
    squares = []
    for h in tops:
        for k in cat.lifts(h, f):
            for ell in cat.lifts(h, g):
                squares.append((k, ell))
    rng.shuffle(squares)
    for k, ell in squares[:probes]:
        t = cat.pullback_mediating(pb, k, ell)
        ok = t is not None and cat.compose(p, t) == k and cat.compose(q, t) == ell
        rec("pullback factorization exists", ok, "square does not factor")
        if not ok:
            continue
        hits = [j for j, c in enumerate(pb.components) if cat.factor(t, c.inclusion) is not None]
        rec("G3 unique factorization", len(hits) == 1, hits)
        # uniqueness: every mediating arrow lands in one piece and lifts k through p o j
        found = 0
        for c in pb.components:
            for tj in cat.lifts(k, c.left):
                if cat.compose(c.right, tj) == ell:
                    found += 1
        rec("pullback factorization unique", found == 1, found)


def _check_span(cat: CoverCategory, span: Span, rec: _Recorder):
    f, g = span.left, span.right
    try:
        po = cat.pushout(f, g)
    except Exception as exc:
        rec("G2-I pushout exists", False, exc)
        return
    rec("G2-I pushout exists", True)
    rec("pushout square commutes", cat.compose(po.left, f) == cat.compose(po.right, g))
    rec("pushout connected", cat.is_connected(po.apex))
    for leg in (po.left, po.right):
        try:
            cat.check_cover(leg)
            rec("pushout legs are covers", True)
        except Exception as exc:
            rec("pushout legs are covers", False, exc)
        rec("pushout legs epic", cat.is_epic(leg))
    for a, b in span.cocones:
        if cat.compose(a, f) != cat.compose(b, g):
            rec("cocone commutes", False, "sample cocone is not commutative")
            continue
        u = cat.pushout_mediating(po, a, b)
        ok = u is not None and cat.compose(u, po.left) == a and cat.compose(u, po.right) == b
        rec("pushout factorization exists", ok, "cocone does not factor")


def check_axioms(
    cat: CoverCategory, samples: Sequence, seed: int = 0, probes: int = 6
) -> AxiomReport:
    """Run every applicable check on every sample and collect the results."""
    rng = random.Random(seed)
    report = AxiomReport(cat.name)
    for index, sample in enumerate(samples):
        rec = _Recorder(report, index)
        if isinstance(sample, Cospan):
            if sample.left.cod != sample.right.cod:
                rec("cospan shape", False, "codomains differ")
                continue
            if _check_cover(cat, sample.left, rec) and _check_cover(cat, sample.right, rec):
                _check_cospan(cat, sample.left, sample.right, rec, rng, probes)
        elif isinstance(sample, Span):
            if sample.left.dom != sample.right.dom:
                rec("span shape", False, "domains differ")
                continue
            if _check_cover(cat, sample.left, rec) and _check_cover(cat, sample.right, rec):
                _check_span(cat, sample, rec)
        else:
            if _check_cover(cat, sample, rec):
                _check_cospan(cat, sample, sample, rec, rng, probes)
    return report


def sample_set(cat: CoverCategory, count: int, seed: int = 0) -> list:
    """A mixed list of covers, cospans and spans for ``cat`` (graph or perm)."""
    rng = random.Random(seed)
    out: list = []
    while len(out) < count:
        if cat.name == "graph":
            base = gen.random_base_graph(rng, 3, 4)
            f = gen.random_cover(base, rng.randint(1, 4), rng)
            g = gen.random_cover(base, rng.randint(1, 4), rng)
        else:
            gens = rng.randint(1, 3)
            f = gen.action_cover(gen.random_transitive_action(rng.randint(1, 5), gens, rng))
            g = gen.action_cover(gen.random_transitive_action(rng.randint(1, 5), gens, rng))
        kind = len(out) % 4
        if kind == 0:
            out.append(f)
        elif kind == 1:
            out.append(Cospan(f, g))
        else:
            pb = cat.pullback(f, f)
            c = pb.components[rng.randrange(len(pb.components))]
            if kind == 2:
                out.append(Span(c.left, c.right, ((f, f),)))
            else:
                # covers of a non-trivial codomain: two pieces of a self-pullback
                d = pb.components[rng.randrange(len(pb.components))]
                out.append(Cospan(c.left, d.left))
    return out
