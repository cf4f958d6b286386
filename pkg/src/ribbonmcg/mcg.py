"""Operators built from graph moves, and their symbolic (group-case) interpretation.

An ``Operator`` is a program of primitive moves on a ribbon graph.  The same
program can be interpreted symbolically (free group with central pivot, see
``symbolic``) or linearly over a finite-dimensional Hopf algebra (see
``linear.run_linear``).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache

from . import graph as G
from .graph import GraphError, GraphPath, SlideDescriptor
from .words import PivotWord, Relabeling


# primitive moves --------------------------------------------------------------

@dataclass(frozen=True)
class Slide:
    desc: SlideDescriptor


@dataclass(frozen=True)
class InsertLoop:
    vertex: str
    index: int
    edge: str


@dataclass(frozen=True)
class InsertPendant:
    vertex: str
    index: int
    edge: str
    new_vertex: str


@dataclass(frozen=True)
class Remove:
    edge: str


@dataclass(frozen=True)
class Reverse:
    edge: str


@dataclass(frozen=True)
class Rename:
    mapping: tuple  # ((old, new), ...) on edges
    halves: tuple = ()  # ((old, new), ...) on half-edges
    order: tuple = None  # new edge order, if changed


@dataclass(frozen=True)
class VertexFaceTwist:
    """⊳_v ∘ (T⊗1) ∘ δ_f for the cilium at ``vertex`` (graph unchanged)."""
    vertex: str


def apply_move(g, m):
    if isinstance(m, Slide):
        return G.slide(g, m.desc)[0]
    if isinstance(m, InsertLoop):
        return G.add_loop(g, m.vertex, m.index, m.edge)
    if isinstance(m, InsertPendant):
        return G.add_pendant(g, m.vertex, m.index, m.edge, m.new_vertex)
    if isinstance(m, Remove):
        return G.remove_edge(g, m.edge)
    if isinstance(m, Reverse):
        return G.reverse_edge(g, m.edge)
    if isinstance(m, Rename):
        return G.rename_edges(g, dict(m.mapping), dict(m.halves), m.order)
    if isinstance(m, VertexFaceTwist):
        return g
    raise TypeError(m)


@dataclass(frozen=True)
class Operator:
    domain: G.RibbonGraph
    codomain: G.RibbonGraph
    moves: tuple = ()
    name: str = ""

    @staticmethod
    def identity(g, name="id"):
        return Operator(g, g, (), name)

    @staticmethod
    def from_moves(g, moves, name=""):
        cur = g
        for m in moves:
            cur = apply_move(cur, m)
        return Operator(g, cur, tuple(moves), name)

    def then(self, other):
        """First ``self``, then ``other``."""
        if other.domain != self.codomain:
            raise GraphError(f"cannot compose {self.name or 'op'} with {other.name or 'op'}: graph mismatch")
        return Operator(self.domain, other.codomain, self.moves + other.moves,
                        f"{other.name} {self.name}".strip())

    def __matmul__(self, other):
        """``A @ B`` = A ∘ B (B applied first)."""
        return other.then(self)

    def inverse(self):
        """Inverse for programs of slides, reversals and renames only."""
        graphs = [self.domain]
        for m in self.moves:
            graphs.append(apply_move(graphs[-1], m))
        inv = []
        for m, before in zip(reversed(self.moves), reversed(graphs[:-1])):
            if isinstance(m, Slide):
                inv.append(Slide(m.desc.inverse()))
            elif isinstance(m, Reverse):
                inv.append(m)
            elif isinstance(m, Rename):
                inv.append(Rename(tuple((b, a) for a, b in m.mapping),
                                  tuple((b, a) for a, b in m.halves),
                                  None if m.order is None else before.edge_ids))
            else:
                raise GraphError("operator contains non-invertible moves; build inverse twists directly")
        return Operator(self.codomain, self.domain, tuple(inv), f"({self.name})^-1")

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = Operator.identity(self.domain)
        for _ in range(k):
            out = out.then(self)
        out = Operator(out.domain, out.codomain, out.moves, f"({self.name})^{k}")
        return out

    def slide_count(self):
        return sum(isinstance(m, Slide) for m in self.moves)


def compose_all(*ops):
    """compose_all(A, B, C) = A ∘ B ∘ C."""
    out = ops[-1]
    for op in reversed(ops[:-1]):
        out = out.then(op)
    return out


# symbolic interpretation -------------------------------------------------------

P = PivotWord.pivot(1)
PINV = PivotWord.pivot(-1)


def T_word(w):
    return P * w.inverse()


def slide_label(variant, end, a, b):
    """New label of the sliding edge; ``a`` the label of the edge slid along."""
    if end == G.TARGET:
        if variant == "L":
            return a * b
        if variant == "-L":
            return a.inverse() * b
        if variant == "R":
            return a * PINV * b
        return P * a.inverse() * b
    if variant == "L":
        return b * a.inverse()
    if variant == "-L":
        return b * a
    if variant == "R":
        return b * P * a.inverse()
    return b * a * PINV


def holonomy(g, path, labels):
    """Ordered product over the composition-order word; reversed steps give T(x)."""
    acc = PivotWord()
    for e, s in reversed(path.steps):
        x = labels[e]
        acc = acc * (x if s > 0 else T_word(x))
    return acc


def vertex_act(g, vid, h, labels):
    out = dict(labels)
    hinv = h.inverse()
    for hid in g.vertex(vid).order:
        he = g.half_edges[hid]
        if he.end == G.TARGET:
            out[he.edge] = h * out[he.edge]
        else:
            out[he.edge] = out[he.edge] * hinv
    return out


def run_symbolic_labels(op, labels):
    g = op.domain
    labels = dict(labels)
    for m in op.moves:
        if isinstance(m, Slide):
            d = m.desc
            he = g.half_edges[d.moved]
            labels[he.edge] = slide_label(d.variant, he.end, labels[d.along], labels[he.edge])
        elif isinstance(m, (InsertLoop, InsertPendant)):
            labels[m.edge] = PivotWord()
        elif isinstance(m, Remove):
            del labels[m.edge]
        elif isinstance(m, Reverse):
            labels[m.edge] = T_word(labels[m.edge])
        elif isinstance(m, Rename):
            mp = dict(m.mapping)
            labels = {mp.get(e, e): w for e, w in labels.items()}
        elif isinstance(m, VertexFaceTwist):
            hol = holonomy(g, G.ciliated_face(g, m.vertex), labels)
            labels = vertex_act(g, m.vertex, T_word(hol), labels)
        g = apply_move(g, m)
    return {e: labels[e] for e in g.edge_ids}


def symbolic(op):
    """The Relabeling of ``op``: codomain edge -> word in domain edge labels."""
    init = {e: PivotWord.gen(e) for e in op.domain.edge_ids}
    return Relabeling(run_symbolic_labels(op, init))


# builders ---------------------------------------------------------------------

def slide_op(g, desc):
    if isinstance(desc, tuple):
        desc = G.slide_descriptor(g, *desc)
    return Operator.from_moves(g, [Slide(desc)], f"S[{desc.along}^{desc.variant}]")


def face_slide_op(g, path, moved=None):
    descs, _ = G.face_slide_descriptors(g, path, moved)
    return Operator.from_moves(g, [Slide(d) for d in descs], f"S[{path}]")


def insert_loop_op(g, vid, index, eid):
    return Operator.from_moves(g, [InsertLoop(vid, index, eid)], f"eta[{eid}]")


def insert_pendant_op(g, vid, index, eid, new_vertex):
    return Operator.from_moves(g, [InsertPendant(vid, index, eid, new_vertex)], f"eta[{eid}]")


def remove_edge_op(g, eid):
    return Operator.from_moves(g, [Remove(eid)], f"eps[{eid}]")


def reverse_op(g, eid):
    return Operator.from_moves(g, [Reverse(eid)], f"T[{eid}]")


def add_edge_op(g, path, eid=None):
    """C_γ as an operator; returns (operator, new edge id)."""
    eid = eid or G.fresh_edge_id(g, "c")
    g2, _, descs = G.add_edge_to_face_path(g, path, eid)
    lv0, _ = g.step_ends(path.steps[0])
    v, i = g.location[lv0]
    moves = [InsertLoop(v, i + 1, eid)] + [Slide(d) for d in descs]
    op = Operator.from_moves(g, moves, f"C[{path}]")
    assert op.codomain == g2
    return op, eid


def vertex_face_twist_op(g, vid):
    return Operator.from_moves(g, [VertexFaceTwist(vid)], f"vf[{vid}]")


def twist_loop_moves(g, beta, power=1):
    if not g.is_loop(beta):
        raise GraphError(f"{beta} is not a loop")
    i, j = g.index_of(g.st(beta)), g.index_of(g.ta(beta))
    k = abs(i - j) - 1
    if i < j:
        variant = "L" if power > 0 else "-L"
    else:
        variant = "-R" if power > 0 else "R"
    moves = []
    cur = g
    for _ in range(k * abs(power)):
        d = G.slide_descriptor(cur, beta, variant)
        cur, _ = G.slide(cur, d)
        moves.append(Slide(d))
    assert cur == g
    return moves


def twist_loop_op(g, beta, power=1):
    return Operator.from_moves(g, twist_loop_moves(g, beta, power), f"D[{beta}]" + (f"^{power}" if power != 1 else ""))


def twist_facepath_op(g, phi, power=1, eid=None):
    """D_φ = ε_{φ'} ∘ D_{φ'} ∘ C_φ for a closed face path at a ciliated vertex."""
    if not phi.steps:
        raise GraphError("twist along the trivial path")
    if not G.is_face_path(g, phi):
        raise GraphError("twist path is not a face path")
    lv, _ = g.step_ends(phi.steps[0])
    _, arr = g.step_ends(phi.steps[-1])
    if g.vertex_of(lv) != g.vertex_of(arr):
        raise GraphError("twist path is not closed")
    if len(phi.steps) == 1:
        return twist_loop_op(g, phi.steps[0][0], power)
    c, eid = add_edge_op(g, phi, eid)
    d = Operator.from_moves(c.codomain, twist_loop_moves(c.codomain, eid, power))
    r = remove_edge_op(d.codomain, eid)
    op = c.then(d).then(r)
    if op.codomain != g:
        raise GraphError("face path twist did not return to the original graph")
    return Operator(g, g, op.moves, f"D[{phi}]" + (f"^{power}" if power != 1 else ""))


def twist_facepath_general(g, phi, power=1, eid=None):
    """Like ``twist_facepath_op`` but always through an added edge (no loop shortcut)."""
    c, eid = add_edge_op(g, phi, eid)
    d = Operator.from_moves(c.codomain, twist_loop_moves(c.codomain, eid, power))
    op = c.then(d).then(remove_edge_op(d.codomain, eid))
    return Operator(g, op.codomain, op.moves, f"D'[{phi}]")


def _moves_slide(cur, desc, moves):
    nxt, _ = G.slide(cur, desc)
    moves.append(Slide(desc))
    return nxt


def twist_gamma_op(g, n, i, j, power=1, route=1):
    """Twist along γ_{i,j}, 1 <= i < j, on ``standard_graph(g, n)``.

    Adds edges along δ_i and δ_j, slides the ends in the way to make
    γ* = δ'_i ∘ α_g ∘ δ'_j^-1 ∘ α_g^-1 a face path, twists along it, then
    undoes the slides and removes the added edges.  ``route`` 2 uses the
    alternative slides along α_g∘δ'_j^-1 and δ'_i.
    """
    N = G.curve_count(g, n)
    if not (1 <= i < j <= N - 1):
        raise GraphError(f"gamma_{i}_{j}: need 1 <= i < j <= {N - 1}")
    g0 = G.standard_graph(g, n)
    paths = G.generator_paths(g, n)
    di, dj = paths[f"delta_{i}"][0], paths[f"delta_{j}"][0]
    ag, bg = f"a{g}", f"b{g}"
    ci, ei = add_edge_op(g0, di, "di_")
    if not G.is_face_path(ci.codomain, dj):
        raise GraphError("delta_j is not a face path after adding delta_i'")
    cj, ej = add_edge_op(ci.codomain, dj, "dj_")
    g2 = cj.codomain
    moves = []
    cur = g2
    if route == 1:
        while True:
            prev = G.slide_candidate(cur, ag, "R")
            if prev == cur.ta(ej):
                break
            cur = _moves_slide(cur, SlideDescriptor(ag, "R", prev), moves)
        nxt = G.slide_candidate(cur, ei, "L")
        if nxt != cur.st(bg):
            raise GraphError("unexpected end after the start of delta_i'")
        cur = _moves_slide(cur, SlideDescriptor(ei, "L", nxt), moves)
    else:
        path = GraphPath(((ej, -1), (ag, 1)))
        while True:
            h = cur.vertex(cur.vertex_of(cur.ta(ej))).order
            k = h.index(cur.ta(ej))
            if h[k + 1] == cur.st(ag):
                break
            descs, cur2 = G.face_slide_descriptors(cur, path, h[k + 1])
            moves += [Slide(d) for d in descs]
            cur = cur2
        while True:
            nxt = G.slide_candidate(cur, ei, "L")
            if nxt == cur.ta(ag):
                break
            cur = _moves_slide(cur, SlideDescriptor(ei, "L", nxt), moves)
    pre = Operator.from_moves(g2, moves)
    star = GraphPath(((ag, -1), (ej, -1), (ag, 1), (ei, 1)))
    if not G.is_face_path(cur, star):
        raise GraphError("gamma* is not a face path")
    tw = twist_facepath_op(cur, star, power, eid="gs_")
    undo = pre.inverse()
    tail = remove_edge_op(g2, ej)
    tail = tail.then(remove_edge_op(tail.codomain, ei))
    op = compose_all(tail, undo, tw, pre, cj, ci)
    if op.codomain != g0:
        raise GraphError("gamma twist did not return to the standard graph")
    return Operator(g0, g0, op.moves, f"D[gamma_{i}_{j}]" + (f"^{power}" if power != 1 else ""))


def generator_twist(g, n, name, power=1):
    paths = G.generator_paths(g, n)
    if name not in paths:
        raise KeyError(f"unknown generator {name!r} for (g,n)=({g},{n})")
    path, face = paths[name]
    if face:
        op = twist_facepath_op(G.standard_graph(g, n), path, power)
    else:
        _, i, j = name.split("_")
        op = twist_gamma_op(g, n, int(i), int(j), power)
    return Operator(op.domain, op.codomain, op.moves, f"D[{name}]" + (f"^{power}" if power != 1 else ""))


@lru_cache(maxsize=None)
def generating_twists(g, n):
    """All generating twists on ``standard_graph(g, n)``, keyed by curve name."""
    return {name: generator_twist(g, n, name) for name in G.generator_paths(g, n)}


@lru_cache(maxsize=None)
def generating_relabelings(g, n):
    return {k: symbolic(op) for k, op in generating_twists(g, n).items()}


# word language ------------------------------------------------------------------

_GREEK = {"α": "alpha", "δ": "delta", "γ": "gamma"}
_SUB = str.maketrans("₀₁₂₃₄₅₆₇₈₉", "0123456789")


def normalize_name(tok):
    t = tok.translate(_SUB)
    for k, v in _GREEK.items():
        t = t.replace(k, v)
    t = t.replace("{", "").replace("}", "")
    if t.startswith("D_"):
        t = t[2:]
    m = re.fullmatch(r"(alpha|delta|gamma)_?(\d+)(?:[_,](\d+))?", t)
    if m:
        kind, a, b = m.groups()
        if kind == "gamma":
            if b is None:
                if len(a) != 2:
                    raise KeyError(f"ambiguous gamma index in {tok!r}")
                a, b = a[0], a[1]
            return f"gamma_{int(a)}_{int(b)}"
        return f"{kind}_{int(a)}"
    return t


def resolve_twist(g_graph, name, power=1, gn=None):
    """Twist named ``name`` on ``g_graph``.

    Generator names (alpha_i, delta_j, gamma_k_l) need ``gn=(g, n)``;
    otherwise ``name`` must be a loop edge of the graph (``D_a``).
    """
    key = normalize_name(name)
    if gn is not None:
        paths = G.generator_paths(*gn)
        if key in paths:
            if power == 1:
                return generating_twists(*gn)[key]
            return generator_twist(*gn, key, power)
    if key in g_graph.edge_map:
        return twist_loop_op(g_graph, key, power)
    raise KeyError(f"unknown twist {name!r}")



def parse_mcg_word(text):
    """Tokens of a twist word, e.g. ``"(D_b D_a D_b)^4 D_a^-1"`` -> nested list."""
    toks = re.findall(r"\(|\)(?:\^-?\d+)?|[^\s()]+", text)
    pos = 0

    def seq():
        nonlocal pos
        out = []
        while pos < len(toks):
            t = toks[pos]
            if t == "(":
                pos += 1
                inner = seq()
                t2 = toks[pos] if pos < len(toks) else None
                if t2 is None or not t2.startswith(")"):
                    raise ValueError("unbalanced parentheses")
                pos += 1
                k = int(t2[2:]) if t2.startswith(")^") else 1
                out.append(("group", inner, k))
            elif t.startswith(")"):
                return out
            else:
                pos += 1
                m = re.fullmatch(r"(.*?)(?:\^(-?\d+))?", t)
                out.append(("gen", m.group(1), int(m.group(2) or 1)))
        return out

    tree = seq()
    if pos != len(toks):
        raise ValueError("unbalanced parentheses")
    return tree


def mcg_word_op(g_graph, text, gn=None):
    """Right-to-left composite of the twists named in ``text``."""
    tree = parse_mcg_word(text)

    def build(items):
        op = Operator.identity(g_graph)
        for item in reversed(items):  # rightmost acts first
            if item[0] == "gen":
                _, name, k = item
                step = resolve_twist(g_graph, name, k, gn)
            else:
                _, inner, k = item
                base = build(inner)
                if k < 0:
                    raise ValueError("negative powers of groups are not supported; invert the letters")
                step = Operator.identity(g_graph)
                for _ in range(k):
                    step = step.then(base)
            op = op.then(step)
        return op

    op = build(tree)
    return Operator(op.domain, op.codomain, op.moves, text)
