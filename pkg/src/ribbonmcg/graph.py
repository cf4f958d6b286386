"""Directed ribbon graphs with ciliated vertices.

Each vertex stores its incident half-edges in counterclockwise order starting
just after the cilium, so ``order[0]`` is the minimal end and ``order[-1]`` the
maximal one.  Paths are stored in traversal order as ``(edge, sign)`` steps;
a step with sign +1 leaves through the starting end of the edge.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

START, TARGET = "start", "target"
VARIANTS = ("L", "-L", "R", "-R")


class GraphError(ValueError):
    pass


class CiliumCrossing(GraphError):
    pass


@dataclass(frozen=True)
class HalfEdge:
    id: str
    edge: str
    end: str


@dataclass(frozen=True)
class Edge:
    id: str
    start: str
    target: str


@dataclass(frozen=True)
class CiliatedVertex:
    id: str
    order: tuple


@dataclass(frozen=True)
class SlideDescriptor:
    along: str
    variant: str
    moved: str

    def inverse(self):
        inv = {"L": "-L", "-L": "L", "R": "-R", "-R": "R"}[self.variant]
        return SlideDescriptor(self.along, inv, self.moved)


@dataclass(frozen=True)
class GraphPath:
    steps: tuple = ()

    @staticmethod
    def of(*steps):
        return GraphPath(tuple((e, int(s)) for e, s in steps))

    @staticmethod
    def from_word(word):
        """Composition-order word (rightmost letter traversed first)."""
        return GraphPath(tuple(reversed(word.letters)))

    def to_word(self):
        from .words import PivotWord
        return PivotWord.make(tuple(reversed(self.steps)))

    def inverse(self):
        return GraphPath(tuple((e, -s) for e, s in reversed(self.steps)))

    def reduced(self):
        out = []
        for e, s in self.steps:
            if out and out[-1] == (e, -s):
                out.pop()
            else:
                out.append((e, s))
        return GraphPath(tuple(out))

    def __add__(self, other):
        """Concatenation in traversal order: first self, then other."""
        return GraphPath(self.steps + other.steps).reduced()

    def __len__(self):
        return len(self.steps)

    def edges(self):
        return {e for e, _ in self.steps}

    def __str__(self):
        if not self.steps:
            return "1"
        return " ".join(e if s > 0 else f"{e}^-1" for e, s in reversed(self.steps))


@dataclass(frozen=True)
class RibbonGraph:
    vertices: tuple = ()
    edges: tuple = ()

    # -- indices ---------------------------------------------------------
    @cached_property
    def half_edges(self):
        out = {}
        for e in self.edges:
            out[e.start] = HalfEdge(e.start, e.id, START)
            out[e.target] = HalfEdge(e.target, e.id, TARGET)
        return out

    @cached_property
    def location(self):
        return {h: (v.id, i) for v in self.vertices for i, h in enumerate(v.order)}

    @cached_property
    def vertex_map(self):
        return {v.id: v for v in self.vertices}

    @cached_property
    def edge_map(self):
        return {e.id: e for e in self.edges}

    @property
    def edge_ids(self):
        return tuple(e.id for e in self.edges)

    def vertex(self, vid):
        return self.vertex_map[vid]

    def edge(self, eid):
        try:
            return self.edge_map[eid]
        except KeyError:
            raise GraphError(f"unknown edge {eid!r}") from None

    def st(self, eid):
        return self.edge(eid).start

    def ta(self, eid):
        return self.edge(eid).target

    def end_of(self, eid, end):
        return self.st(eid) if end == START else self.ta(eid)

    def vertex_of(self, h):
        return self.location[h][0]

    def index_of(self, h):
        return self.location[h][1]

    def source(self, eid):
        return self.vertex_of(self.st(eid))

    def target(self, eid):
        return self.vertex_of(self.ta(eid))

    def is_loop(self, eid):
        return self.source(eid) == self.target(eid)

    def prev_cyclic(self, h):
        v, i = self.location[h]
        order = self.vertex_map[v].order
        return order[i - 1]

    def step_ends(self, step):
        """(leaving half-edge, arriving half-edge) of a path step."""
        e, s = step
        ed = self.edge(e)
        return (ed.start, ed.target) if s > 0 else (ed.target, ed.start)

    def step_for_leaving(self, h):
        he = self.half_edges[h]
        return (he.edge, 1 if he.end == START else -1)

    # -- validation ------------------------------------------------------
    def validate(self):
        seen = set()
        for v in self.vertices:
            for h in v.order:
                if h in seen:
                    raise GraphError(f"half-edge {h!r} listed twice")
                seen.add(h)
        ids = set()
        for e in self.edges:
            if e.id in ids:
                raise GraphError(f"duplicate edge id {e.id!r}")
            ids.add(e.id)
            if e.start == e.target:
                raise GraphError(f"edge {e.id!r} uses one half-edge twice")
            for h in (e.start, e.target):
                if h not in seen:
                    raise GraphError(f"dangling half-edge {h!r}")
        if len(self.half_edges) != 2 * len(self.edges):
            raise GraphError("half-edge shared between edges")
        extra = seen - set(self.half_edges)
        if extra:
            raise GraphError(f"half-edges without edge: {sorted(extra)}")
        vids = [v.id for v in self.vertices]
        if len(set(vids)) != len(vids):
            raise GraphError("duplicate vertex id")
        return self

    # -- serialization ---------------------------------------------------
    def to_json(self):
        return {
            "edges": [{"id": e.id, "start": e.start, "target": e.target} for e in self.edges],
            "vertices": [{"id": v.id, "order": list(v.order)} for v in self.vertices],
        }

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True, indent=1)

    def replace(self, vertices=None, edges=None):
        return RibbonGraph(tuple(vertices if vertices is not None else self.vertices),
                           tuple(edges if edges is not None else self.edges))

    def with_order(self, vid, order):
        vs = [CiliatedVertex(v.id, tuple(order)) if v.id == vid else v for v in self.vertices]
        return self.replace(vertices=vs)


def build_graph(spec):
    """Build a graph from the JSON-like description (dict or JSON string)."""
    if isinstance(spec, str):
        spec = json.loads(spec)
    spec = spec or {}
    vs = tuple(CiliatedVertex(str(v["id"]), tuple(v["order"])) for v in spec.get("vertices", []))
    es = tuple(Edge(str(e["id"]), e["start"], e["target"]) for e in spec.get("edges", []))
    return RibbonGraph(vs, es).validate()


def from_chords(chords, baseline, vertex="x"):
    """One-vertex graph from a left-to-right baseline list of ``("st"|"ta", edge)``.

    Pictures draw the minimal end at the right, so the stored order is the
    reverse of the baseline.
    """
    order = [f"{e}.s" if k == "st" else f"{e}.t" for k, e in reversed(baseline)]
    edges = [Edge(e, f"{e}.s", f"{e}.t") for e in chords]
    return RibbonGraph((CiliatedVertex(vertex, tuple(order)),), tuple(edges)).validate()


# ---------------------------------------------------------------------------
# faces and face paths

def _walk(g, h0):
    steps = []
    h = h0
    while True:
        step = g.step_for_leaving(h)
        steps.append(step)
        _, arr = g.step_ends(step)
        h = g.prev_cyclic(arr)
        if h == h0:
            return GraphPath(tuple(steps))


def faces(g):
    """All faces, each as a closed path starting at its smallest leaving half-edge."""
    done = set()
    out = []
    for h in sorted(g.half_edges):
        if h in done:
            continue
        p = _walk(g, h)
        for st in p.steps:
            done.add(g.step_ends(st)[0])
        out.append(p)
    for v in g.vertices:
        if not v.order:
            out.append(GraphPath(()))
    return out


def ciliated_face(g, vid):
    """The face through the cilium of ``vid``, starting at the maximal end."""
    order = g.vertex(vid).order
    if not order:
        return GraphPath(())
    return _walk(g, order[-1])


def check_composable(g, path):
    for e, s in path.steps:
        g.edge(e)
        if s not in (1, -1):
            raise GraphError(f"bad sign in step {(e, s)}")
    for a, b in zip(path.steps, path.steps[1:]):
        _, arr = g.step_ends(a)
        lv, _ = g.step_ends(b)
        if g.vertex_of(arr) != g.vertex_of(lv):
            raise GraphError(f"path not composable at {a} -> {b}")


def is_face_path(g, path):
    check_composable(g, path)
    if len(set(path.steps)) != len(path.steps):
        return False
    for a, b in zip(path.steps, path.steps[1:]):
        _, arr = g.step_ends(a)
        lv, _ = g.step_ends(b)
        if g.prev_cyclic(arr) != lv:
            return False
    return True


def crosses_cilium(g, path):
    """True if some interior turn of the path passes a cilium."""
    for a, b in zip(path.steps, path.steps[1:]):
        _, arr = g.step_ends(a)
        if g.index_of(arr) == 0:
            return True
    return False


def is_connected(g):
    if not g.vertices:
        return True
    adj = {v.id: set() for v in g.vertices}
    for e in g.edges:
        a, b = g.source(e.id), g.target(e.id)
        adj[a].add(b)
        adj[b].add(a)
    seen = {g.vertices[0].id}
    stack = [g.vertices[0].id]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(adj)


def genus(g):
    if not is_connected(g):
        raise GraphError("genus requires a connected graph")
    if not g.vertices:
        return 0
    chi = len(g.vertices) - len(g.edges) + len(faces(g))
    return (2 - chi) // 2


def has_cilium_bijection(g):
    """One cilium per vertex and per face."""
    fs = faces(g)
    if len(fs) != len(g.vertices):
        return False
    key = {}
    for i, f in enumerate(fs):
        for st in f.steps:
            key[g.step_ends(st)[0]] = i
    hit = set()
    for v in g.vertices:
        if not v.order:
            continue
        i = key[v.order[-1]]
        if i in hit:
            return False
        hit.add(i)
    return True


# ---------------------------------------------------------------------------
# slides

def slide_candidate(g, along, variant):
    """The unique end moved by the slide ``variant`` along ``along``."""
    ed = g.edge(along)
    if variant in ("L", "-R"):
        anchor = ed.start if variant == "L" else ed.target
        v, i = g.location[anchor]
        order = g.vertex(v).order
        if i + 1 >= len(order):
            raise CiliumCrossing(f"no end after {anchor} without crossing the cilium")
        return order[i + 1]
    if variant in ("-L", "R"):
        anchor = ed.target if variant == "-L" else ed.start
        v, i = g.location[anchor]
        if i == 0:
            raise CiliumCrossing(f"no end before {anchor} without crossing the cilium")
        return g.vertex(v).order[i - 1]
    raise GraphError(f"unknown slide variant {variant!r}")


def slide_descriptor(g, along, variant):
    return SlideDescriptor(along, variant, slide_candidate(g, along, variant))


def slide(g, s):
    """Apply an elementary slide; return (new graph, path map on edges)."""
    if s.variant not in VARIANTS:
        raise GraphError(f"unknown slide variant {s.variant!r}")
    he = g.half_edges.get(s.moved)
    if he is None:
        raise GraphError(f"unknown half-edge {s.moved!r}")
    if he.edge == s.along:
        raise GraphError("cannot slide an end of an edge along the edge itself")
    expected = slide_candidate(g, s.along, s.variant)
    if expected != s.moved:
        # distinguish a cyclic (cilium-crossing) neighbour from a bad descriptor
        raise GraphError(f"{s.moved} is not adjacent to {s.along} for slide {s.variant}")
    ed = g.edge(s.along)
    v_old = g.vertex_of(s.moved)
    orders = {v.id: list(v.order) for v in g.vertices}
    orders[v_old].remove(s.moved)
    if s.variant == "L":
        anchor, after = ed.target, False
    elif s.variant == "-L":
        anchor, after = ed.start, True
    elif s.variant == "R":
        anchor, after = ed.target, True
    else:
        anchor, after = ed.start, False
    v_new = g.vertex_of(anchor)
    i = orders[v_new].index(anchor)
    orders[v_new].insert(i + 1 if after else i, s.moved)
    ng = RibbonGraph(tuple(CiliatedVertex(v.id, tuple(orders[v.id])) for v in g.vertices), g.edges)
    sign = -1 if s.variant in ("L", "R") else 1
    beta = he.edge
    if he.end == TARGET:
        img = GraphPath(((beta, 1), (s.along, sign)))
    else:
        img = GraphPath(((s.along, -sign), (beta, 1)))
    pmap = {e.id: GraphPath(((e.id, 1),)) for e in g.edges}
    pmap[beta] = img
    return ng, pmap


def apply_path_map(pmap, path):
    steps = []
    for e, s in path.steps:
        img = pmap[e]
        steps.extend(img.steps if s > 0 else img.inverse().steps)
    return GraphPath(tuple(steps)).reduced()


def compose_path_maps(first, second):
    """Path map of ``second`` after ``first``."""
    return {e: apply_path_map(second, p) for e, p in first.items()}


def face_slide_descriptors(g, path, moved=None):
    """Elementary slides realising the slide of ``moved`` along a face path.

    The first-traversed step is slid along first.  Returns (descriptors, graph).
    """
    if not path.steps:
        raise GraphError("slide along an empty path")
    if not is_face_path(g, path):
        raise GraphError("not a face path")
    lv0, _ = g.step_ends(path.steps[0])
    v, i = g.location[lv0]
    order = g.vertex(v).order
    if moved is None:
        if i + 1 >= len(order):
            raise CiliumCrossing("no end directly after the start of the path")
        moved = order[i + 1]
    elif i + 1 >= len(order) or order[i + 1] != moved:
        raise GraphError("moved end is not directly after the start of the path")
    if g.half_edges[moved].edge in path.edges():
        raise GraphError("sliding end belongs to an edge traversed by the path")
    out = []
    cur = g
    for e, s in path.steps:
        d = SlideDescriptor(e, "L" if s > 0 else "-R", moved)
        cur, _ = slide(cur, d)
        out.append(d)
    return out, cur


# ---------------------------------------------------------------------------
# adding, removing and reversing edges

def add_loop(g, vid, index, eid, start_id=None, target_id=None):
    """Insert a loop at ``vid`` with its target end at ``index`` and start right after."""
    if eid in g.edge_map:
        raise GraphError(f"edge {eid!r} exists")
    s = start_id or f"{eid}.s"
    t = target_id or f"{eid}.t"
    if s in g.half_edges or t in g.half_edges:
        raise GraphError("half-edge id already in use")
    order = list(g.vertex(vid).order)
    if not 0 <= index <= len(order):
        raise GraphError("insertion index out of range")
    order[index:index] = [t, s]
    ng = g.with_order(vid, order)
    return ng.replace(edges=g.edges + (Edge(eid, s, t),))


def add_pendant(g, vid, index, eid, new_vertex, start_id=None, target_id=None):
    """Insert an edge from ``vid`` to a fresh univalent vertex; start end at ``index``."""
    if eid in g.edge_map or new_vertex in g.vertex_map:
        raise GraphError("id already in use")
    s = start_id or f"{eid}.s"
    t = target_id or f"{eid}.t"
    order = list(g.vertex(vid).order)
    if not 0 <= index <= len(order):
        raise GraphError("insertion index out of range")
    order.insert(index, s)
    ng = g.with_order(vid, order)
    return ng.replace(vertices=ng.vertices + (CiliatedVertex(new_vertex, (t,)),),
                      edges=g.edges + (Edge(eid, s, t),))


def remove_edge(g, eid):
    ed = g.edge(eid)
    drop = {ed.start, ed.target}
    vs = []
    for v in g.vertices:
        order = tuple(h for h in v.order if h not in drop)
        if not order and len(v.order) == 1:
            continue  # univalent vertex of a pendant edge
        vs.append(CiliatedVertex(v.id, order))
    return RibbonGraph(tuple(vs), tuple(e for e in g.edges if e.id != eid))


def reverse_edge(g, eid):
    ed = g.edge(eid)
    es = tuple(Edge(e.id, e.target, e.start) if e.id == eid else e for e in g.edges)
    return g.replace(edges=es)


def rename_edges(g, mapping, halves=None, order=None):
    """Rename edges (and optionally half-edges); optionally reorder the edge list."""
    hm = halves or {}
    es = [Edge(mapping.get(e.id, e.id), hm.get(e.start, e.start), hm.get(e.target, e.target))
          for e in g.edges]
    if order is not None:
        by = {e.id: e for e in es}
        if sorted(by) != sorted(order):
            raise GraphError("edge order does not list the renamed edges")
        es = [by[e] for e in order]
    vs = [CiliatedVertex(v.id, tuple(hm.get(h, h) for h in v.order)) for v in g.vertices]
    return RibbonGraph(tuple(vs), tuple(es)).validate()


def add_edge_to_face_path(g, path, eid):
    """C_γ: add a loop next to the start of γ and slide its target end along γ.

    Returns (graph, new edge id, slide descriptors).
    """
    if not path.steps:
        raise GraphError("cannot add an edge to the trivial path")
    if not is_face_path(g, path):
        raise GraphError("not a face path")
    lv0, _ = g.step_ends(path.steps[0])
    v, i = g.location[lv0]
    g1 = add_loop(g, v, i + 1, eid)
    descs, g2 = face_slide_descriptors(g1, path, g1.ta(eid))
    return g2, eid, descs


def fresh_edge_id(g, base="e"):
    k = 0
    while f"{base}{k}" in g.edge_map:
        k += 1
    return f"{base}{k}"


# ---------------------------------------------------------------------------
# the standard graph and its generator paths

def standard_graph(g, n, names=None):
    """Standard chord diagram for a genus-g surface with n+1 boundary circles.

    Edges a_i, b_i (handles), m_i (loops around the univalent vertices) and
    n_i (edges from the univalent vertices w_i to the central vertex x).
    """
    if g < 1:
        raise GraphError("standard graph needs genus >= 1")
    if n < 0:
        raise GraphError("n must be non-negative")
    nm = names or {}
    a = lambda i: nm.get(f"a{i}", f"a{i}")
    b = lambda i: nm.get(f"b{i}", f"b{i}")
    base = []
    for i in range(g, 0, -1):
        base += [(TARGET, b(i)), (TARGET, a(i)), (START, b(i)), (START, a(i))]
    for i in range(n, 0, -1):
        base += [(TARGET, f"m{i}"), (TARGET, f"n{i}"), (START, f"m{i}")]
    order = tuple(f"{e}.s" if k == START else f"{e}.t" for k, e in reversed(base))
    edges = []
    for i in range(1, g + 1):
        edges += [Edge(a(i), f"{a(i)}.s", f"{a(i)}.t"), Edge(b(i), f"{b(i)}.s", f"{b(i)}.t")]
    verts = [CiliatedVertex("x", order)]
    for i in range(1, n + 1):
        edges += [Edge(f"m{i}", f"m{i}.s", f"m{i}.t"), Edge(f"n{i}", f"n{i}.s", f"n{i}.t")]
        verts.append(CiliatedVertex(f"w{i}", (f"n{i}.s",)))
    return RibbonGraph(tuple(verts), tuple(edges)).validate()


def torus_graph():
    return standard_graph(1, 0, names={"a1": "a", "b1": "b"})


def generator_words(g, n):
    """Composition-order words of the generating curves on ``standard_graph(g, n)``.

    Returns {name: (PivotWord, is_face_path)} with names ``alpha_i``,
    ``delta_j`` and ``gamma_k_l``.
    """
    from .words import parse_word
    if g < 1:
        raise GraphError("need genus >= 1")
    N = n + 2 * g - 1  # number of delta curves, indices 0..N-1

    def handle(j):
        return f"a{j}^-1 b{j} a{j} b{j}^-1"

    tail = " ".join(handle(j) for j in range(1, g)) + f" a{g}^-1 b{g} a{g}"
    delta = {0: parse_word(f"b{g}^-1")}
    for i in range(1, n + 1):
        ms = " ".join(f"m{k}^-1" for k in range(i, n + 1))
        delta[i] = parse_word(ms + " " + tail)
    for j in range(1, g):
        delta[n + 2 * j - 1] = parse_word(" ".join(handle(k) for k in range(j, g)) + f" a{g}^-1 b{g} a{g}")
        delta[n + 2 * j] = parse_word(f"b{j}^-1 " + " ".join(handle(k) for k in range(j + 1, g)) + f" a{g}^-1 b{g} a{g}")
    assert sorted(delta) == list(range(N))
    ag, bg = parse_word(f"a{g}"), parse_word(f"b{g}")
    out = {}
    for i in range(1, g + 1):
        out[f"alpha_{i}"] = (parse_word(f"a{i}"), True)
    for j in range(N):
        out[f"delta_{j}"] = (delta[j], True)
    for i in range(N):
        for j in range(N):
            if i == j:
                continue
            if j == 0:
                w, face = delta[i] * bg.inverse(), True
            elif i == 0:
                w, face = delta[j] * ag.inverse() * bg.inverse() * ag, True
            elif j < i:
                w, face = delta[j] * delta[i].inverse(), True
            else:
                w, face = delta[i] * ag * delta[j].inverse() * ag.inverse(), False
            out[f"gamma_{i}_{j}"] = (w, face)
    return out


def generator_paths(g, n):
    """{name: (GraphPath, is_face_path_flag)} on the standard graph."""
    return {k: (GraphPath.from_word(w), f) for k, (w, f) in generator_words(g, n).items()}


def curve_count(g, n):
    return n + 2 * g - 1
