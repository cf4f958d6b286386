"""Reduction of a ribbon graph with one cilium per vertex and face to the standard chord diagram.

Three phases, all by slides that never cross a cilium:
1. collapse onto one vertex x, leaving the others univalent;
2. turn interleaved pairs of loops into contiguous handle blocks and push
   the blocks to the top of the order at x;
3. arrange the remaining planar part as (st m, ta n, ta m) triples.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from . import graph as G
from . import mcg as M
from .graph import GraphError, SlideDescriptor


@dataclass
class StandardForm:
    moves: list  # Slide / Reverse moves, in order
    graph: G.RibbonGraph  # result before renaming
    genus: int
    boundaries: int  # n
    edge_names: dict  # edge id in ``graph`` -> standard name
    standard: G.RibbonGraph  # renamed result

    @property
    def slide_count(self):
        return sum(isinstance(m, M.Slide) for m in self.moves)


class _Run:
    def __init__(self, g):
        self.g = g
        self.moves = []

    def slide(self, along, variant, moved=None):
        d = G.slide_descriptor(self.g, along, variant)
        if moved is not None and d.moved != moved:
            raise GraphError(f"internal: expected to move {moved}, found {d.moved}")
        self.g, _ = G.slide(self.g, d)
        self.moves.append(M.Slide(d))

    def reverse(self, e):
        self.g = G.reverse_edge(self.g, e)
        self.moves.append(M.Reverse(e))

    # helpers on the central vertex
    def order(self, x):
        return self.g.vertex(x).order

    def pos(self, h):
        return self.g.index_of(h)


def _collapse(run, x):
    """Phase 1: make every vertex other than x univalent with its edge ending at x."""
    while True:
        g = run.g
        w, nu = None, None
        for v in g.vertices:
            if v.id == x or len(v.order) <= 1:
                continue
            for h in v.order:
                e = g.half_edges[h].edge
                other = g.target(e) if g.source(e) == v.id else g.source(e)
                if other == x and not g.is_loop(e):
                    w, nu = v.id, e
                    break
            if w:
                break
        if w is None:
            break
        if g.source(nu) != w:
            run.reverse(nu)
        s = run.g.st(nu)
        while len(run.g.vertex(w).order) > 1:
            i = run.pos(s)
            order = run.order(w)
            if i + 1 < len(order):
                run.slide(nu, "L", order[i + 1])
            else:
                run.slide(nu, "R", order[i - 1])
    for v in run.g.vertices:
        if v.id != x and len(v.order) != 1:
            raise GraphError("graph is not connected")


def _orient(run, x):
    g = run.g
    for e in g.edge_ids:
        if g.is_loop(e):
            if run.pos(g.st(e)) > run.pos(g.ta(e)):
                run.reverse(e)
                g = run.g
        elif g.target(e) != x:
            run.reverse(e)
            g = run.g


def _loops(run):
    g = run.g
    return [e for e in g.edge_ids if g.is_loop(e)]


def _blocks(run):
    """Pairs (α, β) already forming contiguous blocks st α, st β, ta α, ta β."""
    g = run.g
    out = []
    for a in _loops(run):
        i = run.pos(g.st(a))
        order = run.order(g.source(a))
        if i + 3 >= len(order):
            continue
        hb = order[i + 1]
        b = g.half_edges[hb].edge
        if g.half_edges[hb].end != G.START or b == a or not g.is_loop(b):
            continue
        if order[i + 2] == g.ta(a) and order[i + 3] == g.ta(b):
            out.append((a, b))
    return out


def _find_pair(run, done):
    g = run.g
    iv = {}
    for e in _loops(run):
        if e in done:
            continue
        iv[e] = (run.pos(g.st(e)), run.pos(g.ta(e)))
    best = None
    for a, (sa, ta) in iv.items():
        for b, (sb, tb) in iv.items():
            if sa < sb < ta < tb:
                if best is None or (sa, sb) < best[0]:
                    best = ((sa, sb), a, b)
    return None if best is None else best[1:]


def _handles(run, x):
    """Phase 2: form handle blocks."""
    done = set()
    while True:
        _orient(run, x)
        pair = _find_pair(run, done)
        if pair is None:
            break
        a, b = pair
        while True:
            g = run.g
            sa, sb, ta, tb = (run.pos(h) for h in (g.st(a), g.st(b), g.ta(a), g.ta(b)))
            order = run.order(x)
            if tb - ta > 1:
                run.slide(a, "-R", order[ta + 1])
            elif ta - sb > 1:
                run.slide(b, "L", order[sb + 1])
            elif sb - sa > 1:
                run.slide(a, "L", order[sa + 1])
            else:
                break
        done.update((a, b))
    _orient(run, x)


def _lift_blocks(run, x):
    """Phase 2': move non-block ends below every block."""
    while True:
        blocks = _blocks(run)
        in_block = set()
        for a, b in blocks:
            in_block.update((run.g.st(a), run.g.st(b), run.g.ta(a), run.g.ta(b)))
        order = run.order(x)
        hit = None
        for a, b in blocks:
            i = run.pos(run.g.ta(b))
            if i + 1 < len(order) and order[i + 1] not in in_block:
                hit = (a, b, order[i + 1])
                break
        if hit is None:
            return blocks
        a, b, h = hit
        run.slide(b, "-R", h)
        run.slide(a, "L", h)
        run.slide(b, "L", h)
        run.slide(a, "-R", h)


def _planar(run, x, nblock_ends):
    """Phase 3: arrange the low planar part as (st m, ta n, ta m) triples."""
    triples = []
    start = 0
    while True:
        g = run.g
        order = run.order(x)
        if start >= len(order) - nblock_ends:
            return triples
        h = order[start]
        he = g.half_edges[h]
        mu = he.edge
        if he.end != G.START or not g.is_loop(mu):
            raise GraphError("cilium condition violated: the outer region holds a pendant end")
        # ends enclosed by mu at top level
        end = run.pos(g.ta(mu))
        pend, inner = [], []
        i = start + 1
        while i < end:
            hi = order[i]
            e = g.half_edges[hi].edge
            if g.is_loop(e):
                j = run.pos(g.ta(e))
                inner.append(e)
                i = j + 1
            else:
                pend.append(e)
                i += 1
        if len(pend) != 1:
            raise GraphError("cilium condition violated: a loop does not enclose exactly one pendant")
        nu = pend[0]
        # ta nu jumps left over the blocks before it
        while True:
            g = run.g
            i = run.pos(g.ta(nu))
            prev = run.order(x)[i - 1]
            if prev == g.st(mu):
                break
            e = g.half_edges[prev].edge
            run.slide(e, "-R", g.ta(nu))
        # ta mu jumps left over the remaining inner blocks
        while True:
            g = run.g
            i = run.pos(g.ta(mu))
            prev = run.order(x)[i - 1]
            if prev == g.ta(nu):
                break
            e = g.half_edges[prev].edge
            run.slide(e, "-R", g.ta(mu))
        triples.append((mu, nu))
        start += 3


def _rename(g, names, x, n):
    """Rename edges/half-edges/vertices to the standard names and order."""
    edges = []
    vmap = {x: "x"}
    for e in g.edges:
        nm = names[e.id]
        edges.append(G.Edge(nm, f"{nm}.s", f"{nm}.t"))
    hmap = {}
    for e in g.edges:
        nm = names[e.id]
        hmap[e.start] = f"{nm}.s"
        hmap[e.target] = f"{nm}.t"
    for v in g.vertices:
        if v.id != x:
            e = g.half_edges[v.order[0]].edge
            vmap[v.id] = "w" + names[e][1:]
    verts = [G.CiliatedVertex(vmap[v.id], tuple(hmap[h] for h in v.order)) for v in g.vertices]
    rank = {nm: i for i, nm in enumerate(_standard_edge_order(len(edges) // 2 - n, n))}
    edges.sort(key=lambda e: rank[e.id])
    verts.sort(key=lambda v: (v.id != "x", int(v.id[1:]) if v.id != "x" else 0))
    return G.RibbonGraph(tuple(verts), tuple(edges))


def _standard_edge_order(g, n):
    out = []
    for i in range(1, g + 1):
        out += [f"a{i}", f"b{i}"]
    for i in range(1, n + 1):
        out += [f"m{i}", f"n{i}"]
    return out


def standard_form(g, center=None):
    """Reduce ``g`` to the standard chord diagram by non-crossing slides and reversals."""
    if not G.is_connected(g) or not g.vertices:
        raise GraphError("standard form needs a non-empty connected graph")
    if not G.has_cilium_bijection(g):
        raise GraphError("standard form needs one cilium per vertex and per face")
    n = len(g.vertices) - 1
    if len(g.edges) % 2:
        raise GraphError("odd number of edges")
    genus = len(g.edges) // 2 - n
    if genus < 1:
        raise GraphError("standard form needs genus >= 1")
    if center is None:
        center = max(g.vertices, key=lambda v: (len(v.order), v.id)).id
    run = _Run(g)
    _collapse(run, center)
    _orient(run, center)
    _handles(run, center)
    blocks = _lift_blocks(run, center)
    if len(blocks) != genus:
        raise GraphError(f"found {len(blocks)} handle blocks, expected {genus}")
    triples = _planar(run, center, 4 * genus)
    if len(triples) != n:
        raise GraphError("planar part does not match the boundary count")
    names = {}
    for k, (mu, nu) in enumerate(triples, 1):
        names[mu], names[nu] = f"m{k}", f"n{k}"
    blocks.sort(key=lambda ab: run.pos(run.g.st(ab[0])))
    for k, (a, b) in enumerate(blocks, 1):
        names[a], names[b] = f"a{k}", f"b{k}"
    std = _rename(run.g, names, center, n)
    return StandardForm(run.moves, run.g, genus, n, names, std)


def is_standard(g):
    """Structural equality with ``standard_graph`` up to renaming (via standard_form of a copy)."""
    try:
        sf = standard_form(g)
    except GraphError:
        return False
    return not sf.moves and sf.standard == G.standard_graph(sf.genus, sf.boundaries)


# ---------------------------------------------------------------------------
# random admissible graphs

def random_admissible(genus, n, rng, steps=60, rename=True):
    """Random graph with one cilium per vertex and face, reached by random
    non-crossing slides and reversals from the standard graph."""
    g = G.standard_graph(genus, n)
    for _ in range(steps):
        e = rng.choice(g.edge_ids)
        r = rng.random()
        if r < 0.15:
            g = G.reverse_edge(g, e)
            continue
        variant = rng.choice(G.VARIANTS)
        try:
            d = G.slide_descriptor(g, e, variant)
        except GraphError:
            continue
        if g.half_edges[d.moved].edge == e:
            continue
        g, _ = G.slide(g, d)
    if rename:
        g = scramble(g, rng)
    return g


def scramble(g, rng):
    """Random fresh edge, half-edge and vertex ids (orders untouched)."""
    eids = list(g.edge_ids)
    new = [f"e{i}" for i in range(len(eids))]
    rng.shuffle(new)
    emap = dict(zip(eids, new))
    hmap = {}
    for e in g.edges:
        hmap[e.start] = f"h{emap[e.id]}s"
        hmap[e.target] = f"h{emap[e.id]}t"
    vids = [v.id for v in g.vertices]
    vnew = [f"v{i}" for i in range(len(vids))]
    rng.shuffle(vnew)
    vmap = dict(zip(vids, vnew))
    verts = [G.CiliatedVertex(vmap[v.id], tuple(hmap[h] for h in v.order)) for v in g.vertices]
    edges = [G.Edge(emap[e.id], hmap[e.start], hmap[e.target]) for e in g.edges]
    rng.shuffle(edges)
    return G.RibbonGraph(tuple(verts), tuple(edges)).validate()


def random_chord_diagram(genus, rng, tries=10000):
    """Rejection-sampled one-vertex diagram with 2·genus loops and a single face."""
    m = 2 * genus
    for _ in range(tries):
        ends = [(G.START, i) for i in range(m)] + [(G.TARGET, i) for i in range(m)]
        rng.shuffle(ends)
        order = tuple(f"c{i}.{'s' if k == G.START else 't'}" for k, i in ends)
        edges = tuple(G.Edge(f"c{i}", f"c{i}.s", f"c{i}.t") for i in range(m))
        g = G.RibbonGraph((G.CiliatedVertex("x", order),), edges)
        if len(G.faces(g)) == 1:
            return g
    raise RuntimeError("no single-face diagram found")


def replay(sf_moves, g):
    """Re-apply moves with full validation; returns (final graph, crossings)."""
    crossings = 0
    for m in sf_moves:
        if isinstance(m, M.Slide):
            try:
                G.slide_candidate(g, m.desc.along, m.desc.variant)
            except G.CiliumCrossing:
                crossings += 1
        g = M.apply_move(g, m)
    return g, crossings
