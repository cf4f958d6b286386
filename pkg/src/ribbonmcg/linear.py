"""Exact linear backend: states in H^{⊗E} as sparse dicts keyed by basis tuples.

The tensor factors follow the edge order of the current graph.  Operators are
kept lazy (a program of moves) and are compared by applying both sides to
every basis vector.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from . import graph as G
from . import mcg as M
from .hopf import _add

DEFAULT_MAX_DIM = 4096


class DimensionBudget(RuntimeError):
    pass


class NotEquivariant(ValueError):
    pass


class Calculus:
    """Precomputed two-leg tables for one pivotal Hopf algebra."""

    def __init__(self, H):
        if H.pivot is None:
            raise ValueError("the linear backend needs a pivot")
        self.H = H
        self.d = H.dim
        self._slide = {}

    def coaction(self, sign, x):
        """δ_{α±} on basis x: {(emitted, kept): c}."""
        H = self.H
        out = {}
        if sign > 0:
            for (a, b), c in H.comult[x].items():
                _add(out, (a, b), c)
        else:
            for (a, b), c in H.comult[x].items():
                for t, ct in H.T_table[b].items():
                    _add(out, (t, a), c * ct)
        return out

    def slide_table(self, variant, end):
        key = (variant, end)
        if key in self._slide:
            return self._slide[key]
        H = self.H
        sign = 1 if variant in ("L", "-L") else -1
        tab = {}
        for a in range(self.d):
            co = self.coaction(sign, a)
            for b in range(self.d):
                out = {}
                for (em, kept), c in co.items():
                    h = H.e(em)
                    if variant in ("-L", "R"):
                        h = H.Sinv(h)
                    if end == G.TARGET:
                        nb = H.mul(h, H.e(b))
                    else:
                        nb = H.mul(H.e(b), H.S(h))
                    for k, ck in nb.items():
                        _add(out, (kept, k), c * ck)
                tab[(a, b)] = out
        self._slide[key] = tab
        return tab


def basis_states(d, n):
    return itertools.product(range(d), repeat=n)


def check_dim(d, n, max_dim=DEFAULT_MAX_DIM):
    if d ** n > max_dim:
        raise DimensionBudget(f"dimension {d}^{n} exceeds the budget {max_dim}")


def _apply_leg(state, i, table):
    out = {}
    for key, c in state.items():
        for k, ck in table[key[i]].items():
            _add(out, key[:i] + (k,) + key[i + 1:], c * ck)
    return out


def _apply_two(state, i, j, table):
    out = {}
    for key, c in state.items():
        for (x, y), cc in table[(key[i], key[j])].items():
            nk = list(key)
            nk[i], nk[j] = x, y
            _add(out, tuple(nk), c * cc)
    return out


def face_coaction(calc, g, path, state):
    """δ for a face path: {(h, key): c}, legs applied in composition order."""
    H = calc.H
    edges = g.edge_ids
    cur = {}
    for k, c in H.unit.items():
        for key, v in state.items():
            _add(cur, (k, key), c * v)
    for e, s in reversed(path.steps):
        i = edges.index(e)
        nxt = {}
        tabs = {}
        for (h, key), c in cur.items():
            x = key[i]
            if x not in tabs:
                tabs[x] = calc.coaction(s, x)
            for (em, kept), cc in tabs[x].items():
                nk = key[:i] + (kept,) + key[i + 1:]
                for hk, ch in H.mul_basis(h, em).items():
                    _add(nxt, (hk, nk), c * cc * ch)
        cur = nxt
    return cur


def vertex_action(calc, g, vid, h, state):
    """h ⊳_v state, Δ-legs fed to the ends in linear order (minimal end first)."""
    H = calc.H
    edges = g.edge_ids
    order = g.vertex(vid).order
    cur = {}
    for k, c in h.items():
        for key, v in state.items():
            _add(cur, (k, key), c * v)
    for pos, hid in enumerate(order):
        he = g.half_edges[hid]
        i = edges.index(he.edge)
        last = pos == len(order) - 1
        nxt = {}
        for (hr, key), c in cur.items():
            if last:
                splits = {(hr, None): H.field(1)}
            else:
                splits = H.comult[hr]
            for (h1, h2), cs in splits.items():
                x = H.e(key[i])
                if he.end == G.TARGET:
                    nx = H.mul(H.e(h1), x)
                else:
                    nx = H.mul(x, H.S(H.e(h1)))
                for k, ck in nx.items():
                    _add(nxt, (h2, key[:i] + (k,) + key[i + 1:]), c * cs * ck)
        cur = nxt
    if not order:
        out = {}
        for (hr, key), c in cur.items():
            _add(out, key, c * H.counit[hr])
        return out
    out = {}
    for (_, key), c in cur.items():
        _add(out, key, c)
    return out


def run_linear(calc, op, state):
    """Apply an Operator program to a state of ``op.domain``."""
    H = calc.H
    g = op.domain
    edges = list(g.edge_ids)
    for m in op.moves:
        if isinstance(m, M.Slide):
            d = m.desc
            he = g.half_edges[d.moved]
            state = _apply_two(state, edges.index(d.along), edges.index(he.edge),
                               calc.slide_table(d.variant, he.end))
        elif isinstance(m, (M.InsertLoop, M.InsertPendant)):
            out = {}
            for key, c in state.items():
                for k, ck in H.unit.items():
                    _add(out, key + (k,), c * ck)
            state = out
        elif isinstance(m, M.Remove):
            i = edges.index(m.edge)
            out = {}
            for key, c in state.items():
                if H.counit[key[i]]:
                    _add(out, key[:i] + key[i + 1:], c * H.counit[key[i]])
            state = out
        elif isinstance(m, M.Reverse):
            state = _apply_leg(state, edges.index(m.edge), H.T_table)
        elif isinstance(m, M.VertexFaceTwist):
            co = face_coaction(calc, g, G.ciliated_face(g, m.vertex), state)
            out = {}
            for (h, key), c in co.items():
                th = H.T(H.e(h))
                for k2, c2 in vertex_action(calc, g, m.vertex, th, {key: c}).items():
                    _add(out, k2, c2)
            state = out
        elif isinstance(m, M.Rename) and m.order is not None:
            mp = dict(m.mapping)
            renamed = [mp.get(e, e) for e in edges]
            perm = [renamed.index(e) for e in m.order]
            state = {tuple(key[i] for i in perm): c for key, c in state.items()}
        g = M.apply_move(g, m)
        edges = list(g.edge_ids)
    return state


@dataclass
class LinOperator:
    """Lazy exact operator H^{⊗E} -> H^{⊗E'} backed by a move program."""

    calc: Calculus
    op: M.Operator
    max_dim: int = DEFAULT_MAX_DIM

    @property
    def domain_edges(self):
        return self.op.domain.edge_ids

    def __call__(self, state):
        return run_linear(self.calc, self.op, state)

    def column(self, key):
        return self({tuple(key): self.calc.H.field(1)})

    def matrix(self):
        """Dense-in-spirit: {basis key: image dict} for every basis key."""
        n = len(self.domain_edges)
        check_dim(self.calc.d, n, self.max_dim)
        return {key: self.column(key) for key in basis_states(self.calc.d, n)}


def operators_equal(calc, a, b, max_dim=DEFAULT_MAX_DIM):
    """Exact equality on every basis vector; returns (ok, witness key)."""
    if a.domain.edge_ids != b.domain.edge_ids:
        return False, "domain mismatch"
    if a.codomain.edge_ids != b.codomain.edge_ids:
        return False, "codomain mismatch"
    n = len(a.domain.edge_ids)
    check_dim(calc.d, n, max_dim)
    for key in basis_states(calc.d, n):
        st = {key: calc.H.field(1)}
        if run_linear(calc, a, st) != run_linear(calc, b, st):
            return False, key
    return True, None


def equivariance(calc, op, vid, max_dim=DEFAULT_MAX_DIM):
    """Check L∘⊳_v = ⊳_v∘(1⊗L) and δ_f∘L = (1⊗L)∘δ_f at the cilium of ``vid``.

    Requires domain == codomain graph.  Returns (ok, witness).
    """
    g = op.domain
    if op.codomain != g:
        raise ValueError("equivariance needs an endomorphism")
    H = calc.H
    n = len(g.edge_ids)
    check_dim(calc.d, n, max_dim)
    face = G.ciliated_face(g, vid)
    cols = {}
    for key in basis_states(calc.d, n):
        cols[key] = run_linear(calc, op, {key: H.field(1)})

    def L(state):
        out = {}
        for k, c in state.items():
            for k2, c2 in cols[k].items():
                _add(out, k2, c * c2)
        return out

    for key in basis_states(calc.d, n):
        st = {key: H.field(1)}
        for h in range(calc.d):
            lhs = L(vertex_action(calc, g, vid, H.e(h), st))
            rhs = vertex_action(calc, g, vid, H.e(h), cols[key])
            if lhs != rhs:
                return False, ("action", key, H.basis[h])
        lhs = face_coaction(calc, g, face, cols[key])
        co = face_coaction(calc, g, face, st)
        rhs = {}
        for (h, k), c in co.items():
            for k2, c2 in cols[k].items():
                _add(rhs, (h, k2), c * c2)
        if lhs != rhs:
            return False, ("coaction", key)
    return True, None


# ---------------------------------------------------------------------------
# exact linear algebra on sparse vectors

class Echelon:
    """Incremental reduced echelon basis of a subspace of sparse vectors.

    Each row may carry a payload vector transformed alongside it, e.g. a
    preimage under some map.
    """

    def __init__(self, field):
        self.F = field
        self.piv = {}  # pivot key -> row (1 at pivot, 0 at the other pivots)
        self.payload = {}

    def reduce(self, vec, payload=None):
        v = dict(vec)
        pl = dict(payload) if payload is not None else None
        for p, row in self.piv.items():
            c = v.get(p)
            if c:
                for k, x in row.items():
                    _add(v, k, -c * x)
                if pl is not None:
                    for k, x in self.payload[p].items():
                        _add(pl, k, -c * x)
        return v if payload is None else (v, pl)

    def add(self, vec, payload=None):
        v, pl = self.reduce(vec, payload if payload is not None else {})
        if not v:
            return None
        p = min(v)
        inv = self.F(1) / v[p]
        v = {k: x * inv for k, x in v.items()}
        pl = {k: x * inv for k, x in pl.items()}
        for q, row in self.piv.items():
            c = row.get(p)
            if c:
                for k, x in v.items():
                    _add(row, k, -c * x)
                for k, x in pl.items():
                    _add(self.payload[q], k, -c * x)
        self.piv[p] = v
        self.payload[p] = pl
        return p

    @property
    def rank(self):
        return len(self.piv)


def kernel(columns, field):
    """Kernel of the map basis_j -> columns[j] (list of sparse vectors)."""
    piv = {}  # pivot key -> (reduced column, combination)
    ker = []
    for j, col in enumerate(columns):
        v = dict(col)
        comb = {j: field(1)}
        while v:
            p = min(v)
            if p not in piv:
                break
            pv, pc = piv[p]
            f = v[p] / pv[p]
            for k, x in pv.items():
                _add(v, k, -f * x)
            for k, x in pc.items():
                _add(comb, k, -f * x)
        if v:
            piv[min(v)] = (v, comb)
        else:
            ker.append(comb)
    return ker


@dataclass
class BiinvData:
    calc: Calculus
    graph: G.RibbonGraph
    vertex: str
    keys: list  # basis keys of H^{⊗E}
    coinv: list  # coinvariant basis (sparse dicts over keys)
    relations: Echelon  # image of ⊳ - ε⊗1
    image: Echelon  # biinvariant subspace inside the quotient (remainders)
    preimage: dict  # pivot of image -> coinvariant vector projecting onto that row

    @property
    def dim_coinv(self):
        return len(self.coinv)

    @property
    def dim(self):
        return self.image.rank

    def pi(self, vec):
        return self.relations.reduce(vec)

    def coords(self, vec):
        """Coordinates of π(vec) in the biinvariant basis; raises if outside."""
        r = self.image.reduce(self.pi(vec))
        if r:
            raise NotEquivariant("vector does not project into the biinvariants")
        q = self.pi(vec)
        out = {}
        rem = dict(q)
        for p, row in self.image.piv.items():
            c = rem.get(p)
            if c:
                out[p] = c
        return out


def biinvariants(calc, g, vid, max_dim=DEFAULT_MAX_DIM):
    H = calc.H
    edges = g.edge_ids
    n = len(edges)
    check_dim(calc.d, n, max_dim)
    keys = list(basis_states(calc.d, n))
    face = G.ciliated_face(g, vid)
    cols = []
    for key in keys:
        co = face_coaction(calc, g, face, {key: H.field(1)})
        for k, c in H.unit.items():
            _add(co, (k, key), -c)
        cols.append(co)
    ker = kernel(cols, H.field)
    coinv = [{keys[j]: c for j, c in comb.items()} for comb in ker]
    rel = Echelon(H.field)
    for key in keys:
        for h in range(calc.d):
            v = vertex_action(calc, g, vid, H.e(h), {key: H.field(1)})
            if H.counit[h]:
                _add(v, key, -H.counit[h])
            if v:
                rel.add(v)
    img = Echelon(H.field)
    for k in coinv:
        img.add(rel.reduce(k), payload=k)
    return BiinvData(calc, g, vid, keys, coinv, rel, img, img.payload)


def induced_on_biinv(bi, op, check=True):
    """Matrix {pivot: coords} of the map induced on biinvariants by ``op``.

    Verifies the factorisation on every coinvariant basis vector.
    """
    calc = bi.calc
    if op.domain != bi.graph or op.codomain != bi.graph:
        raise ValueError("operator must be an endomorphism of the biinvariant graph")
    phi = {}
    for p, k in bi.preimage.items():
        phi[p] = bi.coords(run_linear(calc, op, k))
    if check:
        for k in bi.coinv:
            img = run_linear(calc, op, k)
            direct = bi.coords(img)
            via = {}
            for p, c in bi.coords(k).items():
                for q, x in phi[p].items():
                    _add(via, q, c * x)
            if direct != via:
                raise NotEquivariant("operator does not descend to the biinvariants")
    return phi


def is_identity_map(phi):
    return all(v == {p: 1} for p, v in phi.items())
