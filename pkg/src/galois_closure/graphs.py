"""Finite unramified covers of undirected multigraphs.

Graphs are stored in dart (half-edge) form.  Every graph is kept in *standard
numbering*: edge ``k`` owns darts ``2k`` and ``2k + 1`` and the involution is
``d ^ 1``.  A dart's origin is its tail; the head of ``d`` is the origin of
``d ^ 1``.  Loops and parallel edges need no special casing.

Every construction (fiber products, components, quotients) renumbers its
output canonically, so two arrows are equal iff their tuples are equal.
"""

from __future__ import annotations

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


@dataclass(frozen=True)
class DartGraph:
    vertex_count: int
    origin: tuple[int, ...]

    def __post_init__(self):
        if len(self.origin) % 2:
            raise NonCovering("dart count even", len(self.origin))
        o = self.origin
        if o and (min(o) < 0 or max(o) >= self.vertex_count):
            bad = next(d for d, v in enumerate(o) if not 0 <= v < self.vertex_count)
            raise NonCovering("dart origin in range", bad)

    @classmethod
    def from_edges(cls, vertex_count: int, edges) -> DartGraph:
        origin = []
        for u, v in edges:
            origin += [u, v]
        return cls(vertex_count, tuple(origin))

    @property
    def dart_count(self) -> int:
        return len(self.origin)

    @property
    def edge_count(self) -> int:
        return len(self.origin) // 2

    @staticmethod
    def involution(d: int) -> int:
        return d ^ 1

    def edges(self) -> list[tuple[int, int]]:
        o = self.origin
        return [(o[d], o[d + 1]) for d in range(0, len(o), 2)]

    def head(self, d: int) -> int:
        return self.origin[d ^ 1]

    @cached_property
    def stars(self) -> tuple[tuple[int, ...], ...]:
        """Darts at each vertex, in increasing order."""
        out = [[] for _ in range(self.vertex_count)]
        for d, v in enumerate(self.origin):
            out[v].append(d)
        return tuple(tuple(s) for s in out)

    @cached_property
    def component_labels(self) -> tuple[int, ...]:
        """Component id of every vertex; ids increase with the smallest vertex."""
        label = [-1] * self.vertex_count
        stars, origin = self.stars, self.origin
        count = 0
        for root in range(self.vertex_count):
            if label[root] >= 0:
                continue
            label[root] = count
            stack = [root]
            while stack:
                v = stack.pop()
                for d in stars[v]:
                    w = origin[d ^ 1]
                    if label[w] < 0:
                        label[w] = count
                        stack.append(w)
            count += 1
        return tuple(label)

    @property
    def component_count(self) -> int:
        labels = self.component_labels
        return max(labels) + 1 if labels else 0

    def is_connected(self) -> bool:
        return self.component_count == 1


@dataclass(frozen=True)
class GraphCover:
    """A graph morphism ``dom -> cod`` given by its vertex and dart maps.

    Used for every arrow of the category, including component inclusions
    into a disconnected apex; :func:`validate_cover` decides whether it is a
    covering map.
    """

    dom: DartGraph
    cod: DartGraph
    vertex_map: tuple[int, ...]
    dart_map: tuple[int, ...]

    @property
    def category(self) -> GraphCategory:
        return GRAPHS

    @cached_property
    def degree(self) -> int:
        # fiber over vertex 0; equal fibers are checked by validate_cover
        return self.vertex_map.count(0)

    def dart_fibers(self) -> list[list[int]]:
        out = [[] for _ in range(self.cod.dart_count)]
        for d, e in enumerate(self.dart_map):
            out[e].append(d)
        return out

    def vertex_fibers(self) -> list[list[int]]:
        out = [[] for _ in range(self.cod.vertex_count)]
        for v, w in enumerate(self.vertex_map):
            out[w].append(v)
        return out


def identity(graph: DartGraph) -> GraphCover:
    return GraphCover(graph, graph, tuple(range(graph.vertex_count)), tuple(range(graph.dart_count)))


def compose(g: GraphCover, f: GraphCover) -> GraphCover:
    """``g o f``."""
    if f.cod != g.dom:
        raise ContractViolation("arrows are not composable")
    return GraphCover(
        f.dom,
        g.cod,
        tuple(map(g.vertex_map.__getitem__, f.vertex_map)),
        tuple(map(g.dart_map.__getitem__, f.dart_map)),
    )


def degree(c: GraphCover) -> int:
    return c.degree


def validate_cover(c: GraphCover) -> None:
    """Raise on the first violated clause of the covering-map definition."""
    dom, cod = c.dom, c.cod
    if dom.vertex_count == 0:
        raise EmptyDomain()
    if len(c.vertex_map) != dom.vertex_count or len(c.dart_map) != dom.dart_count:
        raise NonCovering("map sizes", (len(c.vertex_map), len(c.dart_map)))
    for v, w in enumerate(c.vertex_map):
        if not 0 <= w < cod.vertex_count:
            raise NonCovering("vertex map in range", v)
    for d, e in enumerate(c.dart_map):
        if not 0 <= e < cod.dart_count:
            raise NonCovering("dart map in range", d)
    if not cod.is_connected():
        raise DisconnectedCodomain(cod.component_labels)
    vm, dm = c.vertex_map, c.dart_map
    for d, v in enumerate(dom.origin):
        if cod.origin[dm[d]] != vm[v]:
            raise NonCovering("incidence", d)
    for d in range(dom.dart_count):
        if dm[d ^ 1] != dm[d] ^ 1:
            raise NonCovering("involution equivariance", d)
    for v, star in enumerate(dom.stars):
        if sorted(dm[d] for d in star) != list(cod.stars[vm[v]]):
            raise NonCovering("local bijectivity", v)
    if len(set(vm)) != cod.vertex_count:
        raise NonCovering("vertex surjectivity", sorted(set(range(cod.vertex_count)) - set(vm))[0])
    if len(set(dm)) != cod.dart_count:
        raise NonCovering("dart surjectivity", sorted(set(range(cod.dart_count)) - set(dm))[0])
    sizes = [len(fib) for fib in c.vertex_fibers()]
    for w, s in enumerate(sizes):
        if s != sizes[0]:
            raise NonCovering("equal fiber size", w)


def fiber_product(f: GraphCover, g: GraphCover) -> tuple[DartGraph, GraphCover, GraphCover]:
    """Fiber product of ``f: B -> A`` and ``g: C -> A`` with its two projections.

    Vertices are the pairs ``(b, c)`` with ``f(b) == g(c)`` in lexicographic
    order.  Edges are the dart pairs ``(x, y)`` with ``x`` even and
    ``f(x) == g(y)``, again lexicographic; edge ``(x, y)`` owns darts
    ``(x, y)`` and ``(x ^ 1, y ^ 1)``.
    """
    if f.cod != g.cod:
        raise ContractViolation("fiber product needs a common codomain")
    B, C = f.dom, g.dom
    cn = C.vertex_count
    gv_fib = g.vertex_fibers()
    gd_fib = g.dart_fibers()
    fv, fd = f.vertex_map, f.dart_map
    index = [-1] * (B.vertex_count * cn)
    pv, qv = [], []
    for b in range(B.vertex_count):
        for c in gv_fib[fv[b]]:
            index[b * cn + c] = len(pv)
            pv.append(b)
            qv.append(c)
    bo, co = B.origin, C.origin
    origin, pd, qd = [], [], []
    for x in range(0, B.dart_count, 2):
        tail, head = bo[x] * cn, bo[x + 1] * cn
        ys = gd_fib[fd[x]]
        for y in ys:
            origin += (index[tail + co[y]], index[head + co[y ^ 1]])
            qd += (y, y ^ 1)
        pd += (x, x + 1) * len(ys)
    apex = DartGraph(len(pv), tuple(origin))
    return (
        apex,
        GraphCover(apex, B, tuple(pv), tuple(pd)),
        GraphCover(apex, C, tuple(qv), tuple(qd)),
    )


def components(graph: DartGraph) -> list[GraphCover]:
    """Inclusions of the connected components, ordered by smallest vertex."""
    labels = graph.component_labels
    count = graph.component_count
    if count == 1:
        return [identity(graph)]
    verts = [[] for _ in range(count)]
    for v, k in enumerate(labels):
        verts[k].append(v)
    # both darts of an edge share a component, so each list keeps edges as consecutive pairs
    darts = [[] for _ in range(count)]
    origin = graph.origin
    for d, v in enumerate(origin):
        darts[labels[v]].append(d)
    out = []
    for vs, ds in zip(verts, darts):
        local = {v: k for k, v in enumerate(vs)}
        sub = DartGraph(len(vs), tuple(local[origin[d]] for d in ds))
        out.append(GraphCover(sub, graph, tuple(vs), tuple(ds)))
    return out


def pullback_component(
    f: GraphCover, g: GraphCover, b: int, c: int, max_size: int | None = None
) -> Component | None:
    """Component of the fiber product through vertex ``(b, c)``, or None if too big."""
    if f.cod != g.cod:
        raise ContractViolation("fiber product needs a common codomain")
    if f.vertex_map[b] != g.vertex_map[c]:
        raise ContractViolation("seed pair is not in the fiber product")
    B, C = f.dom, g.dom
    fstar = {}
    for x, v in enumerate(B.origin):
        fstar[v, f.dart_map[x]] = x
    if max_size is not None and max_size < 1:
        return None
    seen = {(b, c)}
    stack = [(b, c)]
    darts = []
    while stack:
        u, w = stack.pop()
        for y in C.stars[w]:
            x = fstar[u, g.dart_map[y]]
            if not x & 1:
                darts.append((x, y))
            nxt = (B.origin[x ^ 1], C.origin[y ^ 1])
            if nxt not in seen:
                seen.add(nxt)
                if max_size is not None and len(seen) > max_size:
                    return None
                stack.append(nxt)
    verts = sorted(seen)
    index = {pair: k for k, pair in enumerate(verts)}
    darts.sort()
    origin, pd, qd = [], [], []
    for x, y in darts:
        origin.append(index[B.origin[x], C.origin[y]])
        origin.append(index[B.origin[x + 1], C.origin[y ^ 1]])
        pd += [x, x + 1]
        qd += [y, y ^ 1]
    sub = DartGraph(len(verts), tuple(origin))
    left = GraphCover(sub, B, tuple(v for v, _ in verts), tuple(pd))
    right = GraphCover(sub, C, tuple(w for _, w in verts), tuple(qd))
    return Component(None, left, right, left.degree, right.degree)


def inverse(c: GraphCover) -> GraphCover:
    n, m = c.cod.vertex_count, c.cod.dart_count
    if len(c.vertex_map) != n or len(c.dart_map) != m:
        raise ContractViolation("only bijective maps can be inverted")
    iv, id_ = [0] * n, [0] * m
    for v, w in enumerate(c.vertex_map):
        iv[w] = v
    for d, e in enumerate(c.dart_map):
        id_[e] = d
    return GraphCover(c.cod, c.dom, tuple(iv), tuple(id_))


def factor(u: GraphCover, inclusion: GraphCover) -> GraphCover | None:
    if u.cod != inclusion.cod:
        raise ContractViolation("factor needs a common codomain")
    vpos = {w: k for k, w in enumerate(inclusion.vertex_map)}
    dpos = {e: k for k, e in enumerate(inclusion.dart_map)}
    try:
        vm = tuple(vpos[w] for w in u.vertex_map)
        dm = tuple(dpos[e] for e in u.dart_map)
    except KeyError:
        return None
    return GraphCover(u.dom, inclusion.dom, vm, dm)


def _quotient(size_a: int, size_b: int, pairs) -> tuple[list[int], int]:
    """Class index of every element of ``A + B`` (B offset by ``size_a``)."""
    ds = DisjointSet(range(size_a + size_b))
    for a, b in pairs:
        ds.merge(a, size_a + b)
    cls, order = [], {}
    for x in range(size_a + size_b):
        root = ds[x]
        if root not in order:
            order[root] = len(order)
        cls.append(order[root])
    return cls, len(order)


def pushout(f: GraphCover, g: GraphCover) -> PushoutResult:
    """Glue ``cod f`` and ``cod g`` along the images of the common domain."""
    if f.dom != g.dom:
        raise ContractViolation("pushout needs a common domain")
    Y, Z = f.cod, g.cod
    vcls, nv = _quotient(
        Y.vertex_count, Z.vertex_count, zip(f.vertex_map, g.vertex_map)
    )
    dcls, nd = _quotient(Y.dart_count, Z.dart_count, zip(f.dart_map, g.dart_map))
    ym = Y.dart_count
    all_origin = list(Y.origin) + [v + Y.vertex_count for v in Z.origin]
    twin = [d ^ 1 for d in range(ym)] + [ym + (d ^ 1) for d in range(Z.dart_count)]
    # dart classes are numbered by smallest member; pair each class with its twin class
    first_member = [-1] * nd
    for x, k in enumerate(dcls):
        if first_member[k] < 0:
            first_member[k] = x
    dart_label = [-1] * nd
    origin: list[int] = []
    for k in range(nd):
        if dart_label[k] >= 0:
            continue
        x = first_member[k]
        t = dcls[twin[x]]
        if t == k:
            raise ContractViolation("quotient identifies an edge with its reverse")
        dart_label[k] = len(origin)
        dart_label[t] = len(origin) + 1
        origin.append(vcls[all_origin[x]])
        origin.append(vcls[all_origin[first_member[t]]])
    for x, k in enumerate(dcls):
        if origin[dart_label[k]] != vcls[all_origin[x]] or dart_label[dcls[twin[x]]] != dart_label[k] ^ 1:
            raise ContractViolation("quotient is not a graph")
    apex = DartGraph(nv, tuple(origin))
    r = GraphCover(Y, apex, tuple(vcls[: Y.vertex_count]), tuple(dart_label[k] for k in dcls[:ym]))
    s = GraphCover(Z, apex, tuple(vcls[Y.vertex_count:]), tuple(dart_label[k] for k in dcls[ym:]))
    return PushoutResult(apex, r, s)


def _mediate(domain, parts):
    """Assemble a map out of ``domain`` from maps defined on covering pieces.

    ``parts`` holds ``(piece_map, target_map)`` pairs; returns None when two
    pieces disagree on a shared element or something is left undefined.
    """
    vm = [None] * domain.vertex_count
    dm = [None] * domain.dart_count
    for piece, target in parts:
        for x, t in zip(piece.vertex_map, target.vertex_map):
            if vm[x] is None:
                vm[x] = t
            elif vm[x] != t:
                return None
        for x, t in zip(piece.dart_map, target.dart_map):
            if dm[x] is None:
                dm[x] = t
            elif dm[x] != t:
                return None
    if None in vm or None in dm:
        return None
    return tuple(vm), tuple(dm)


def lifts(h: GraphCover, f: GraphCover) -> list[GraphCover]:
    """All ``k`` with ``f o k == h`` for connected ``dom h``, by path lifting."""
    W, B = h.dom, f.dom
    if W.vertex_count == 0:
        return []
    fstar = {}
    for b, star in enumerate(B.stars):
        for d in star:
            fstar[b, f.dart_map[d]] = d
    out = []
    for b0 in f.vertex_fibers()[h.vertex_map[0]]:
        vm = [-1] * W.vertex_count
        dm = [-1] * W.dart_count
        vm[0] = b0
        stack, ok = [0], True
        while stack and ok:
            w = stack.pop()
            for d in W.stars[w]:
                e = fstar.get((vm[w], h.dart_map[d]))
                if e is None or (dm[d] >= 0 and dm[d] != e):
                    ok = False
                    break
                dm[d] = e
                w2, b2 = W.origin[d ^ 1], B.origin[e ^ 1]
                if vm[w2] < 0:
                    vm[w2] = b2
                    stack.append(w2)
                elif vm[w2] != b2:
                    ok = False
                    break
        if not ok or -1 in vm or -1 in dm:
            continue
        if any(dm[d ^ 1] != dm[d] ^ 1 for d in range(W.dart_count)):
            continue
        out.append(GraphCover(W, B, tuple(vm), tuple(dm)))
    return out


class GraphCategory(CoverCategory):
    name = "graph"

    def identity(self, obj):
        return identity(obj)

    def compose(self, g, f):
        return compose(g, f)

    def degree(self, arrow):
        return arrow.degree

    def fiber_product(self, f, g):
        return fiber_product(f, g)

    def components(self, obj):
        return components(obj)

    def is_connected(self, obj):
        return obj.is_connected()

    def inverse(self, arrow):
        return inverse(arrow)

    def factor(self, u, inclusion):
        return factor(u, inclusion)

    def pushout(self, f, g):
        return pushout(f, g)

    def pushout_mediating(self, po, a, b):
        if a.dom != po.left.dom or b.dom != po.right.dom or a.cod != b.cod:
            raise ContractViolation("cocone does not match the pushout")
        maps = _mediate(po.apex, [(po.left, a), (po.right, b)])
        return None if maps is None else GraphCover(po.apex, a.cod, *maps)

    def pullback_mediating(self, pb: PullbackResult, k, ell):
        apex, p, q = pb.apex, pb.proj_left, pb.proj_right
        vpos = {(b, c): x for x, (b, c) in enumerate(zip(p.vertex_map, q.vertex_map))}
        dpos = {(b, c): x for x, (b, c) in enumerate(zip(p.dart_map, q.dart_map))}
        try:
            vm = tuple(vpos[pair] for pair in zip(k.vertex_map, ell.vertex_map))
            dm = tuple(dpos[pair] for pair in zip(k.dart_map, ell.dart_map))
        except KeyError:
            return None
        return GraphCover(k.dom, apex, vm, dm)

    def lifts(self, h, f):
        return lifts(h, f)

    def fiber(self, arrow, point):
        return [v for v, w in enumerate(arrow.vertex_map) if w == point]

    def image(self, arrow, point):
        return arrow.vertex_map[point]

    def size(self, obj):
        return obj.vertex_count

    def pullback_component(self, f, g, left_point, right_point, max_size=None):
        return pullback_component(f, g, left_point, right_point, max_size)

    def is_epic(self, arrow):
        return (
            len(set(arrow.vertex_map)) == arrow.cod.vertex_count
            and len(set(arrow.dart_map)) == arrow.cod.dart_count
        )

    def is_monic(self, arrow):
        return len(set(arrow.vertex_map)) == len(arrow.vertex_map) and len(
            set(arrow.dart_map)
        ) == len(arrow.dart_map)

    def check_cover(self, arrow):
        if not isinstance(arrow, GraphCover):
            raise ContractViolation(f"expected a GraphCover, got {type(arrow).__name__}")
        validate_cover(arrow)
        if not arrow.dom.is_connected():
            raise DisconnectedDomain()


GRAPHS = GraphCategory()


def bouquet(loops: int) -> DartGraph:
    return DartGraph(1, (0,) * (2 * loops))


def voltage_cover(base: DartGraph, voltages, sheets: int | None = None) -> GraphCover:
    """Cover of ``base`` with fiber ``{0..n-1}``; edge ``k`` lifts by ``voltages[k]``.

    The lift of edge ``k`` at sheet ``x`` runs from ``(tail, x)`` to
    ``(head, voltages[k][x])``; cover vertex ``(v, x)`` is numbered ``v * n + x``.
    """
    if len(voltages) != base.edge_count:
        raise ContractViolation("one voltage permutation per base edge")
    n = sheets if sheets is not None else (len(voltages[0]) if voltages else 1)
    origin, dmap = [], []
    for k, sigma in enumerate(voltages):
        tail, head = base.origin[2 * k], base.origin[2 * k + 1]
        for x in range(n):
            origin += [tail * n + x, head * n + sigma[x]]
            dmap += [2 * k, 2 * k + 1]
    dom = DartGraph(base.vertex_count * n, tuple(origin))
    vmap = tuple(v for v in range(base.vertex_count) for _ in range(n))
    return GraphCover(dom, base, vmap, tuple(dmap))


def derived_cover(generators) -> GraphCover:
    """Cover of the bouquet of ``len(generators)`` loops with that monodromy."""
    n = len(generators[0]) if generators else 1
    return voltage_cover(bouquet(len(generators)), generators, n)


# JSON ---------------------------------------------------------------------


def graph_to_json(g: DartGraph) -> dict:
    return {"vertices": g.vertex_count, "edges": [list(e) for e in g.edges()]}


def graph_from_json(doc) -> DartGraph:
    try:
        n = doc["vertices"]
        edges = doc["edges"]
        if not isinstance(n, int) or n < 0:
            raise MalformedInput("'vertices' must be a non-negative integer")
        pairs = []
        for e in edges:
            u, v = e
            if not (isinstance(u, int) and isinstance(v, int)):
                raise MalformedInput(f"edge endpoints must be integers: {e!r}")
            pairs.append((u, v))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, MalformedInput):
            raise
        raise MalformedInput(f"bad graph document: {exc}") from exc
    return DartGraph.from_edges(n, pairs)


def cover_to_json(c: GraphCover) -> dict:
    edge_map = []
    for i in range(c.dom.edge_count):
        e = c.dart_map[2 * i]
        if c.dart_map[2 * i + 1] != e ^ 1:
            raise ContractViolation(f"dart map does not respect edge {i}")
        edge_map.append({"edge": e // 2, "flip": bool(e & 1)})
    return {
        "dom": graph_to_json(c.dom),
        "cod": graph_to_json(c.cod),
        "vertex_map": list(c.vertex_map),
        "edge_map": edge_map,
    }


def cover_from_json(doc) -> GraphCover:
    try:
        dom = graph_from_json(doc["dom"])
        cod = graph_from_json(doc["cod"])
        vmap = tuple(doc["vertex_map"])
        dmap = []
        for item in doc["edge_map"]:
            j, flip = item["edge"], item["flip"]
            if not isinstance(j, int) or not isinstance(flip, bool):
                raise MalformedInput(f"bad edge_map entry {item!r}")
            dmap += [2 * j + flip, 2 * j + (not flip)]
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"bad cover document: {exc}") from exc
    if not all(isinstance(v, int) for v in vmap):
        raise MalformedInput("vertex_map entries must be integers")
    return GraphCover(dom, cod, vmap, tuple(dmap))


def to_dot(obj, name: str = "G") -> str:
    """DOT text for a graph, or for the domain of a cover labeled by images."""
    if isinstance(obj, GraphCover):
        graph, vlab = obj.dom, [f"{v}:{w}" for v, w in enumerate(obj.vertex_map)]
        elab = [str(obj.dart_map[2 * k] // 2) for k in range(graph.edge_count)]
    else:
        graph, vlab = obj, [str(v) for v in range(obj.vertex_count)]
        elab = [str(k) for k in range(graph.edge_count)]
    lines = [f"graph {name} {{"]
    for v in range(graph.vertex_count):
        lines.append(f'  {v} [label="{vlab[v]}"];')
    for k, (u, v) in enumerate(graph.edges()):
        lines.append(f'  {u} -- {v} [label="{elab[k]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
