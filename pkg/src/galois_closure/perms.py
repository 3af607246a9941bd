"""Finite permutation actions: the monodromy model of covers, and the group oracle.

An object is a finite set ``{0..n-1}`` with one permutation per generator;
an arrow is a generator-equivariant point map.  Connected objects are the
transitive actions, components are orbits, and the degree of an arrow onto a
transitive action is its fiber size.  Over the bouquet of ``k`` loops this is
the same category as graph covers, read through the fiber over the base
vertex.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

from scipy.cluster.hierarchy import DisjointSet

from .category import Component, CoverCategory, PullbackResult, PushoutResult
from .errors import (
    ContractViolation,
    DisconnectedCodomain,
    DisconnectedDomain,
    EmptyDomain,
    MalformedInput,
    NonCovering,
)
from .graphs import GraphCover, derived_cover, validate_cover


@dataclass(frozen=True)
class PermAction:
    point_count: int
    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for k, s in enumerate(self.generators):
            if len(s) != self.point_count or sorted(s) != list(range(self.point_count)):
                raise NonCovering("generator is a permutation", k)

    @classmethod
    def of(cls, *generators) -> PermAction:
        gens = tuple(tuple(s) for s in generators)
        return cls(len(gens[0]) if gens else 1, gens)

    @classmethod
    def trivial(cls, generator_count: int) -> PermAction:
        return cls(1, ((0,),) * generator_count)

    @property
    def generator_count(self) -> int:
        return len(self.generators)

    @cached_property
    def orbit_labels(self) -> tuple[int, ...]:
        label = [-1] * self.point_count
        count = 0
        for root in range(self.point_count):
            if label[root] >= 0:
                continue
            label[root] = count
            stack = [root]
            while stack:
                x = stack.pop()
                for s in self.generators:
                    y = s[x]
                    if label[y] < 0:
                        label[y] = count
                        stack.append(y)
            count += 1
        return tuple(label)

    @property
    def orbit_count(self) -> int:
        return max(self.orbit_labels) + 1 if self.point_count else 0

    @property
    def transitive(self) -> bool:
        return self.orbit_count == 1


@dataclass(frozen=True)
class EquivariantMap:
    dom: PermAction
    cod: PermAction
    point_map: tuple[int, ...]

    @property
    def category(self) -> PermCategory:
        return PERMS

    @cached_property
    def degree(self) -> int:
        return self.point_map.count(0)

    def fibers(self) -> list[list[int]]:
        out = [[] for _ in range(self.cod.point_count)]
        for x, y in enumerate(self.point_map):
            out[y].append(x)
        return out


def identity(a: PermAction) -> EquivariantMap:
    return EquivariantMap(a, a, tuple(range(a.point_count)))


def compose(g: EquivariantMap, f: EquivariantMap) -> EquivariantMap:
    if f.cod != g.dom:
        raise ContractViolation("arrows are not composable")
    gm = g.point_map
    return EquivariantMap(f.dom, g.cod, tuple(gm[x] for x in f.point_map))


def validate_map(m: EquivariantMap) -> None:
    dom, cod = m.dom, m.cod
    if dom.generator_count != cod.generator_count:
        raise ContractViolation("generator-count mismatch")
    if dom.point_count == 0:
        raise EmptyDomain()
    if len(m.point_map) != dom.point_count:
        raise NonCovering("map size", len(m.point_map))
    for x, y in enumerate(m.point_map):
        if not 0 <= y < cod.point_count:
            raise NonCovering("point map in range", x)
    if not cod.transitive:
        raise DisconnectedCodomain(cod.orbit_labels)
    pm = m.point_map
    for s, t in zip(dom.generators, cod.generators):
        for x in range(dom.point_count):
            if pm[s[x]] != t[pm[x]]:
                raise NonCovering("equivariance", x)
    sizes = [len(fib) for fib in m.fibers()]
    for y, size in enumerate(sizes):
        if size != sizes[0]:
            raise NonCovering("equal fiber size", y)


def fiber_product(f: EquivariantMap, g: EquivariantMap):
    """Product action on ``{(x, y) : f(x) == g(y)}``, pairs in lexicographic order."""
    if f.cod != g.cod:
        raise ContractViolation("fiber product needs a common codomain")
    B, C = f.dom, g.dom
    gfib = g.fibers()
    cn = C.point_count
    index = {}
    pm, qm = [], []
    for x in range(B.point_count):
        for y in gfib[f.point_map[x]]:
            index[x * cn + y] = len(pm)
            pm.append(x)
            qm.append(y)
    gens = tuple(
        tuple(index[s[x] * cn + t[y]] for x, y in zip(pm, qm))
        for s, t in zip(B.generators, C.generators)
    )
    apex = PermAction(len(pm), gens)
    return apex, EquivariantMap(apex, B, tuple(pm)), EquivariantMap(apex, C, tuple(qm))


def orbits(a: PermAction) -> list[EquivariantMap]:
    """Orbit inclusions ordered by smallest point."""
    labels = a.orbit_labels
    members = [[] for _ in range(a.orbit_count)]
    for x, k in enumerate(labels):
        members[k].append(x)
    out = []
    for pts in members:
        local = {x: k for k, x in enumerate(pts)}
        gens = tuple(tuple(local[s[x]] for x in pts) for s in a.generators)
        out.append(EquivariantMap(PermAction(len(pts), gens), a, tuple(pts)))
    return out


def pullback_component(
    f: EquivariantMap, g: EquivariantMap, x: int, y: int, max_size: int | None = None
) -> Component | None:
    """Orbit of ``(x, y)`` in the fiber product, labeled as in :func:`fiber_product`."""
    if f.cod != g.cod:
        raise ContractViolation("fiber product needs a common codomain")
    if f.point_map[x] != g.point_map[y]:
        raise ContractViolation("seed pair is not in the fiber product")
    pairs = list(zip(f.dom.generators, g.dom.generators))
    if max_size is not None and max_size < 1:
        return None
    seen = {(x, y)}
    stack = [(x, y)]
    while stack:
        u, w = stack.pop()
        for s, t in pairs:
            nxt = (s[u], t[w])
            if nxt not in seen:
                seen.add(nxt)
                if max_size is not None and len(seen) > max_size:
                    return None
                stack.append(nxt)
    pts = sorted(seen)
    index = {pair: k for k, pair in enumerate(pts)}
    gens = tuple(tuple(index[s[u], t[w]] for u, w in pts) for s, t in pairs)
    sub = PermAction(len(pts), gens)
    left = EquivariantMap(sub, f.dom, tuple(u for u, _ in pts))
    right = EquivariantMap(sub, g.dom, tuple(w for _, w in pts))
    return Component(None, left, right, left.degree, right.degree)


def inverse(m: EquivariantMap) -> EquivariantMap:
    n = m.cod.point_count
    if len(m.point_map) != n:
        raise ContractViolation("only bijective maps can be inverted")
    inv = [0] * n
    for x, y in enumerate(m.point_map):
        inv[y] = x
    return EquivariantMap(m.cod, m.dom, tuple(inv))


def factor(u: EquivariantMap, inclusion: EquivariantMap) -> EquivariantMap | None:
    if u.cod != inclusion.cod:
        raise ContractViolation("factor needs a common codomain")
    pos = {y: k for k, y in enumerate(inclusion.point_map)}
    try:
        return EquivariantMap(u.dom, inclusion.dom, tuple(pos[y] for y in u.point_map))
    except KeyError:
        return None


def pushout(f: EquivariantMap, g: EquivariantMap) -> PushoutResult:
    """Quotient of ``cod f + cod g`` by ``f(x) ~ g(x)``."""
    if f.dom != g.dom:
        raise ContractViolation("pushout needs a common domain")
    Y, Z = f.cod, g.cod
    ny = Y.point_count
    ds = DisjointSet(range(ny + Z.point_count))
    for a, b in zip(f.point_map, g.point_map):
        ds.merge(a, ny + b)
    cls, order = [], {}
    for x in range(ny + Z.point_count):
        root = ds[x]
        if root not in order:
            order[root] = len(order)
        cls.append(order[root])
    size = len(order)
    gens = []
    for s, t in zip(Y.generators, Z.generators):
        image = [-1] * size
        act = list(s) + [ny + v for v in t]
        for x, k in enumerate(cls):
            target = cls[act[x]]
            if image[k] not in (-1, target):
                raise ContractViolation("gluing relation is not invariant")
            image[k] = target
        gens.append(tuple(image))
    apex = PermAction(size, tuple(gens))
    return PushoutResult(
        apex,
        EquivariantMap(Y, apex, tuple(cls[:ny])),
        EquivariantMap(Z, apex, tuple(cls[ny:])),
    )


def lifts(h: EquivariantMap, f: EquivariantMap) -> list[EquivariantMap]:
    """All ``k`` with ``f o k == h`` for transitive ``dom h``."""
    W, B = h.dom, f.dom
    if W.point_count == 0:
        return []
    out = []
    for b0 in f.fibers()[h.point_map[0]]:
        km = [-1] * W.point_count
        km[0] = b0
        queue, ok = deque([0]), True
        while queue and ok:
            w = queue.popleft()
            for s, t in zip(W.generators, B.generators):
                w2, b2 = s[w], t[km[w]]
                if km[w2] < 0:
                    km[w2] = b2
                    queue.append(w2)
                elif km[w2] != b2:
                    ok = False
                    break
        if ok and -1 not in km and all(f.point_map[b] == a for b, a in zip(km, h.point_map)):
            out.append(EquivariantMap(W, B, tuple(km)))
    return out


class PermCategory(CoverCategory):
    name = "perm"

    def identity(self, obj):
        return identity(obj)

    def compose(self, g, f):
        return compose(g, f)

    def degree(self, arrow):
        return arrow.degree

    def fiber_product(self, f, g):
        return fiber_product(f, g)

    def components(self, obj):
        return orbits(obj)

    def is_connected(self, obj):
        return obj.transitive

    def inverse(self, arrow):
        return inverse(arrow)

    def factor(self, u, inclusion):
        return factor(u, inclusion)

    def pushout(self, f, g):
        return pushout(f, g)

    def pushout_mediating(self, po, a, b):
        if a.dom != po.left.dom or b.dom != po.right.dom or a.cod != b.cod:
            raise ContractViolation("cocone does not match the pushout")
        um = [None] * po.apex.point_count
        for piece, target in ((po.left, a), (po.right, b)):
            for x, t in zip(piece.point_map, target.point_map):
                if um[x] is None:
                    um[x] = t
                elif um[x] != t:
                    return None
        if None in um:
            return None
        return EquivariantMap(po.apex, a.cod, tuple(um))

    def pullback_mediating(self, pb: PullbackResult, k, ell):
        pos = {pair: x for x, pair in enumerate(zip(pb.proj_left.point_map, pb.proj_right.point_map))}
        try:
            return EquivariantMap(
                k.dom, pb.apex, tuple(pos[pair] for pair in zip(k.point_map, ell.point_map))
            )
        except KeyError:
            return None

    def lifts(self, h, f):
        return lifts(h, f)

    def fiber(self, arrow, point):
        return [x for x, y in enumerate(arrow.point_map) if y == point]

    def image(self, arrow, point):
        return arrow.point_map[point]

    def size(self, obj):
        return obj.point_count

    def pullback_component(self, f, g, left_point, right_point, max_size=None):
        return pullback_component(f, g, left_point, right_point, max_size)

    def is_epic(self, arrow):
        return len(set(arrow.point_map)) == arrow.cod.point_count

    def is_monic(self, arrow):
        return len(set(arrow.point_map)) == len(arrow.point_map)

    def check_cover(self, arrow):
        if not isinstance(arrow, EquivariantMap):
            raise ContractViolation(f"expected an EquivariantMap, got {type(arrow).__name__}")
        validate_map(arrow)
        if not arrow.dom.transitive:
            raise DisconnectedDomain()


PERMS = PermCategory()


def action_cover(a: PermAction) -> EquivariantMap:
    """The action as a cover of the one-point action."""
    return EquivariantMap(a, PermAction.trivial(a.generator_count), (0,) * a.point_count)


def cover_from_action(a: PermAction) -> GraphCover:
    """Derived graph cover of the bouquet whose monodromy is ``a``."""
    return derived_cover(a.generators)


def spanning_tree(graph, basepoint: int = 0) -> tuple[list[int], list[int | None]]:
    """Breadth-first tree from ``basepoint``, smallest dart first.

    Returns the visit order and, per vertex, the tree dart entering it.
    """
    parent: list[int | None] = [None] * graph.vertex_count
    seen = [False] * graph.vertex_count
    seen[basepoint] = True
    order, queue = [basepoint], deque([basepoint])
    while queue:
        v = queue.popleft()
        for d in graph.stars[v]:
            w = graph.origin[d ^ 1]
            if not seen[w]:
                seen[w] = True
                parent[w] = d
                order.append(w)
                queue.append(w)
    return order, parent


def monodromy(c: GraphCover, basepoint: int = 0) -> tuple[PermAction, EquivariantMap]:
    """Action of the non-tree edges of ``cod c`` on the fiber over ``basepoint``.

    Fiber points are indexed in increasing vertex order.  Non-tree edges are
    taken in increasing edge order and traversed along their even dart.
    """
    validate_cover(c)
    base, top = c.cod, c.dom
    if not 0 <= basepoint < base.vertex_count:
        raise ContractViolation(f"basepoint {basepoint} not a vertex of the base")
    over = {}
    for d, e in enumerate(c.dart_map):
        over[top.origin[d], e] = d
    fiber = c.vertex_fibers()[basepoint]
    n = len(fiber)
    order, parent = spanning_tree(base, basepoint)
    # sheet[v][i]: endpoint of the tree path to v lifted from fiber point i
    sheet: list[list[int]] = [[] for _ in range(base.vertex_count)]
    sheet[basepoint] = list(fiber)
    for v in order[1:]:
        t = parent[v]
        u = base.origin[t]
        sheet[v] = [top.origin[over[x, t] ^ 1] for x in sheet[u]]
    tree_edges = {parent[v] // 2 for v in order[1:]}
    gens = []
    for k in range(base.edge_count):
        if k in tree_edges:
            continue
        e = 2 * k
        u, w = base.origin[e], base.origin[e + 1]
        position = {x: j for j, x in enumerate(sheet[w])}
        gens.append(tuple(position[top.origin[over[sheet[u][i], e] ^ 1]] for i in range(n)))
    action = PermAction(n, tuple(gens))
    return action, action_cover(action)


def oracle_closure_degree(a: PermAction) -> int:
    """Order of the group generated by the action's permutations.

    Plain breadth-first closure over a hash set; fine up to a few ten
    thousand elements.
    """
    if not a.transitive:
        raise ContractViolation("oracle needs a transitive action")
    n = a.point_count
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    gens = [s for s in a.generators if s != ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = tuple(s[x] for x in g)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return len(seen)


# JSON ---------------------------------------------------------------------


def action_to_json(a: PermAction) -> dict:
    return {"points": a.point_count, "generators": [list(s) for s in a.generators]}


def action_from_json(doc) -> PermAction:
    try:
        n = doc["points"]
        gens = tuple(tuple(s) for s in doc["generators"])
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"bad action document: {exc}") from exc
    if not isinstance(n, int) or not all(isinstance(x, int) for s in gens for x in s):
        raise MalformedInput("action entries must be integers")
    return PermAction(n, gens)


def map_to_json(m: EquivariantMap) -> dict:
    return {
        "dom": action_to_json(m.dom),
        "cod": action_to_json(m.cod),
        "point_map": list(m.point_map),
    }


def map_from_json(doc) -> EquivariantMap:
    """Read an equivariant map; a bare action is read as its cover of a point."""
    if isinstance(doc, dict) and "points" in doc:
        return action_cover(action_from_json(doc))
    try:
        dom = action_from_json(doc["dom"])
        cod = action_from_json(doc["cod"])
        pm = tuple(doc["point_map"])
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"bad equivariant map document: {exc}") from exc
    if not all(isinstance(x, int) for x in pm):
        raise MalformedInput("point_map entries must be integers")
    return EquivariantMap(dom, cod, pm)
