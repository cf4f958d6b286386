"""Finite-dimensional Hopf algebras given by exact structure constants.

Vectors are sparse dicts ``{basis index: coefficient}``; tensors of rank two
are dicts keyed by index pairs.  Coefficients are ``fractions.Fraction`` by
default or elements of a prime field from sympy.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property


class Rationals:
    name = "QQ"
    characteristic = 0

    def __call__(self, x):
        if isinstance(x, str):
            return Fraction(x)
        return Fraction(x)

    def __repr__(self):
        return "QQ"


class PrimeField:
    def __init__(self, p):
        from sympy.polys.domains import GF
        self.characteristic = p
        self.dom = GF(p)
        self.name = f"GF({p})"

    def __call__(self, x):
        if isinstance(x, str) and "/" in x:
            a, b = x.split("/")
            return self.dom(int(a)) / self.dom(int(b))
        return self.dom(int(x))

    def __repr__(self):
        return self.name


QQ = Rationals()


def _add(acc, k, c):
    v = acc.get(k, 0) + c
    if v:
        acc[k] = v
    else:
        acc.pop(k, None)


def vec_add(u, v, cv=1):
    out = dict(u)
    for k, c in v.items():
        _add(out, k, cv * c)
    return out


def vec_scale(u, c):
    return {k: c * x for k, x in u.items() if c * x}


@dataclass
class FinHopf:
    name: str
    basis: tuple
    field: object
    mult: dict  # (i, j) -> {k: c}
    unit: dict  # {k: c}
    comult: dict  # i -> {(j, k): c}
    counit: tuple  # counit[i]
    antipode: dict  # i -> {j: c}
    pivot: dict | None = None

    @property
    def dim(self):
        return len(self.basis)

    # -- basic maps on vectors ------------------------------------------------
    def mul_basis(self, i, j):
        return self.mult.get((i, j), {})

    def mul(self, u, v):
        out = {}
        for i, a in u.items():
            for j, b in v.items():
                for k, c in self.mul_basis(i, j).items():
                    _add(out, k, a * b * c)
        return out

    def lin(self, table, v):
        out = {}
        for i, a in v.items():
            for k, c in table[i].items():
                _add(out, k, a * c)
        return out

    def S(self, v):
        return self.lin(self.antipode, v)

    @cached_property
    def antipode_inverse(self):
        inv = invert_matrix(self.antipode, self.dim, self.field)
        if inv is None:
            raise ValueError("antipode is not invertible")
        return inv

    def Sinv(self, v):
        return self.lin(self.antipode_inverse, v)

    def coprod(self, v):
        out = {}
        for i, a in v.items():
            for k, c in self.comult[i].items():
                _add(out, k, a * c)
        return out

    def eps(self, v):
        return sum((a * self.counit[i] for i, a in v.items()), self.field(0))

    def e(self, i):
        return {i: self.field(1)}

    @cached_property
    def T_table(self):
        """T = m∘(p⊗S) on basis vectors."""
        if self.pivot is None:
            raise ValueError("pivot not set")
        return {i: self.mul(self.pivot, self.S(self.e(i))) for i in range(self.dim)}

    def T(self, v):
        return self.lin(self.T_table, v)

    def with_pivot(self, p):
        h = FinHopf(self.name, self.basis, self.field, self.mult, self.unit, self.comult,
                    self.counit, self.antipode, dict(p) if p is not None else None)
        return h

    def element(self, name):
        """Basis vector by name (or a pivot spec)."""
        if isinstance(name, dict):
            return name
        if name in ("1", "e", "unit") and name not in self.basis:
            return dict(self.unit)
        return self.e(self.basis.index(name))

    def fmt(self, v):
        if not v:
            return "0"
        parts = []
        for i in sorted(v):
            c = v[i]
            parts.append(f"{self.basis[i]}" if c == 1 else f"{c}*{self.basis[i]}")
        return " + ".join(parts)

    # -- serialization -------------------------------------------------------
    def to_json(self):
        s = str
        return {
            "name": self.name,
            "basis": list(self.basis),
            "field": self.field.characteristic,
            "mult": [[i, j, k, s(c)] for (i, j), v in sorted(self.mult.items()) for k, c in sorted(v.items())],
            "unit": [[k, s(c)] for k, c in sorted(self.unit.items())],
            "comult": [[i, j, k, s(c)] for i, v in sorted(self.comult.items()) for (j, k), c in sorted(v.items())],
            "counit": [[i, s(c)] for i, c in enumerate(self.counit) if c],
            "antipode": [[i, j, s(c)] for i, v in sorted(self.antipode.items()) for j, c in sorted(v.items())],
            "pivot": None if self.pivot is None else [[k, s(c)] for k, c in sorted(self.pivot.items())],
        }


def load_hopf(path_or_dict):
    d = path_or_dict
    if isinstance(d, str):
        with open(d) as fh:
            d = json.load(fh)
    char = d.get("field", 0) or 0
    F = QQ if char == 0 else PrimeField(int(char))
    basis = tuple(d["basis"])
    n = len(basis)
    mult, comult, anti = {}, {i: {} for i in range(n)}, {i: {} for i in range(n)}
    for i, j, k, c in d["mult"]:
        _add(mult.setdefault((i, j), {}), k, F(c))
    unit = {}
    for k, c in d["unit"]:
        _add(unit, k, F(c))
    for i, j, k, c in d["comult"]:
        _add(comult[i], (j, k), F(c))
    counit = [F(0)] * n
    for i, c in d["counit"]:
        counit[i] = F(c)
    for i, j, c in d["antipode"]:
        _add(anti[i], j, F(c))
    piv = None
    if d.get("pivot") is not None:
        piv = {}
        for k, c in d["pivot"]:
            _add(piv, k, F(c))
    return FinHopf(d.get("name", "H"), basis, F, mult, unit, comult, tuple(counit), anti, piv)


def invert_matrix(table, n, F):
    """Invert the map i -> table[i] (sparse columns).  Returns None if singular."""
    rows = [[table[i].get(j, F(0)) for i in range(n)] + [F(1) if j == r else F(0) for r in range(n)]
            for j in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if piv is None:
            return None
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = F(1) / rows[col][col]
        rows[col] = [x * inv for x in rows[col]]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
    # column i of the inverse: coefficients of the image of e_i
    return {i: {j: rows[j][n + i] for j in range(n) if rows[j][n + i] != 0} for i in range(n)}


# ---------------------------------------------------------------------------
# built-in instances

def group_algebra(group, field=QQ, pivot=None):
    n = group.order
    one = field(1)
    mult = {(i, j): {group.mul(i, j): one} for i in range(n) for j in range(n)}
    comult = {i: {(i, i): one} for i in range(n)}
    anti = {i: {group.inv(i): one} for i in range(n)}
    piv = None if pivot is None else {group.checked_pivot(pivot): one}
    return FinHopf(f"F[{group.name}]", tuple(group.names), field, mult, {group.identity: one},
                   comult, tuple([one] * n), anti, piv)


def sweedler4(field=QQ, with_pivot=True):
    """Basis 1, g, x, gx with g²=1, x²=0, xg=-gx, Δg=g⊗g, Δx=x⊗1+g⊗x."""
    if field.characteristic == 2:
        raise ValueError("the Sweedler algebra needs characteristic != 2")
    mono = [(0, 0), (1, 0), (0, 1), (1, 1)]  # g^a x^b
    idx = {m: i for i, m in enumerate(mono)}
    one = field(1)

    def mono_mul(u, v):
        (a, b), (c, d) = u, v
        if b + d >= 2:
            return {}
        sign = -1 if (b and c) else 1
        return {idx[((a + c) % 2, b + d)]: field(sign)}

    mult = {(i, j): mono_mul(mono[i], mono[j]) for i in range(4) for j in range(4)}
    comult = {
        0: {(0, 0): one},
        1: {(1, 1): one},
        2: {(2, 0): one, (1, 2): one},
        3: {(3, 1): one, (0, 3): one},
    }
    anti = {0: {0: one}, 1: {1: one}, 2: {3: field(-1)}, 3: {2: one}}
    piv = {1: one} if with_pivot else None
    return FinHopf("sweedler4", ("1", "g", "x", "gx"), field, mult, {0: one}, comult,
                   (one, one, field(0), field(0)), anti, piv)


# ---------------------------------------------------------------------------
# axioms

def _tensor_eq(a, b):
    return {k: v for k, v in a.items() if v} == {k: v for k, v in b.items() if v}


def _mul3(H, i, j, k, left=True):
    if left:
        return H.mul(H.mul(H.e(i), H.e(j)), H.e(k))
    return H.mul(H.e(i), H.mul(H.e(j), H.e(k)))


def _coprod_tensor(H, t):
    """Δ applied to a vector, returned as pair-tensor."""
    return H.coprod(t)


def _tensor_mul2(H, s, t):
    out = {}
    for (a, b), c in s.items():
        for (x, y), d in t.items():
            for k1, c1 in H.mul_basis(a, x).items():
                for k2, c2 in H.mul_basis(b, y).items():
                    _add(out, (k1, k2), c * d * c1 * c2)
    return out


def check_hopf_axioms(H):
    """Exact check of the Hopf algebra axioms; returns a list of (name, ok, witness)."""
    n = H.dim
    r = range(n)
    res = []

    def record(name, pred_iter):
        wit = None
        for item in pred_iter:
            if item is not True:
                wit = item
                break
        res.append((name, wit is None, wit))

    record("associativity", (True if _tensor_eq(_mul3(H, i, j, k), _mul3(H, i, j, k, False)) else (i, j, k)
                             for i in r for j in r for k in r))
    record("unit", (True if _tensor_eq(H.mul(H.unit, H.e(i)), H.e(i)) and _tensor_eq(H.mul(H.e(i), H.unit), H.e(i))
                    else i for i in r))

    def coassoc(i):
        left, right = {}, {}
        for (a, b), c in H.comult[i].items():
            for (x, y), d in H.comult[a].items():
                _add(left, (x, y, b), c * d)
            for (x, y), d in H.comult[b].items():
                _add(right, (a, x, y), c * d)
        return left == right

    record("coassociativity", (True if coassoc(i) else i for i in r))

    def counit_ok(i):
        l, rr = {}, {}
        for (a, b), c in H.comult[i].items():
            _add(l, b, c * H.counit[a])
            _add(rr, a, c * H.counit[b])
        return l == H.e(i) and rr == H.e(i)

    record("counit", (True if counit_ok(i) else i for i in r))
    record("bialgebra", (True if _tensor_eq(H.coprod(H.mul(H.e(i), H.e(j))),
                                            _tensor_mul2(H, H.comult[i], H.comult[j])) else (i, j)
                         for i in r for j in r))
    record("counit multiplicative", (True if H.eps(H.mul(H.e(i), H.e(j))) == H.counit[i] * H.counit[j] else (i, j)
                                     for i in r for j in r))
    record("unit comultiplicative", iter([True if _tensor_eq(H.coprod(H.unit), {(a, b): c * d for a, c in H.unit.items()
                                                                                for b, d in H.unit.items()}) else "Δ(1)"]))
    record("counit of unit", iter([True if H.eps(H.unit) == 1 else "ε(1)"]))

    def antipode_ok(i):
        l, rr = {}, {}
        for (a, b), c in H.comult[i].items():
            l = vec_add(l, H.mul(H.S(H.e(a)), H.e(b)), c)
            rr = vec_add(rr, H.mul(H.e(a), H.S(H.e(b))), c)
        target = vec_scale(H.unit, H.counit[i])
        return l == target and rr == target

    record("antipode", (True if antipode_ok(i) else i for i in r))
    return res


def is_grouplike(H, v):
    cop = H.coprod(v)
    sq = {}
    for i, a in v.items():
        for j, b in v.items():
            _add(sq, (i, j), a * b)
    return cop == sq and H.eps(v) == 1


def pivotal_identity_ok(H, p):
    """p S²(h) S(p) = h for all basis h."""
    Sp = H.S(p)
    for i in range(H.dim):
        h = H.e(i)
        if H.mul(H.mul(p, H.S(H.S(h))), Sp) != h:
            return False
    return True


def check_pivot(H, p=None):
    p = H.pivot if p is None else p
    if p is None:
        return [("pivot set", False, None)]
    return [
        ("grouplike pivot", is_grouplike(H, p), None),
        ("pivotal identity", pivotal_identity_ok(H, p), None),
    ]


def check_T(H):
    """T∘T = 1 and the anti-comonoid identities Δ∘T = (T⊗T)∘τ∘Δ, ε∘T = ε."""
    out = []
    ok = all(H.T(H.T(H.e(i))) == H.e(i) for i in range(H.dim))
    out.append(("T involution", ok, None))
    good = True
    for i in range(H.dim):
        lhs = H.coprod(H.T(H.e(i)))
        rhs = {}
        for (a, b), c in H.comult[i].items():
            for x, cx in H.T(H.e(b)).items():
                for y, cy in H.T(H.e(a)).items():
                    _add(rhs, (x, y), c * cx * cy)
        if lhs != rhs:
            good = False
            break
    out.append(("T anti-comonoid", good, None))
    out.append(("counit of T", all(H.eps(H.T(H.e(i))) == H.counit[i] for i in range(H.dim)), None))
    return out


def grouplikes(H, solve_limit=4):
    """Grouplike elements.

    Basis grouplikes are found by direct check; for dim <= ``solve_limit`` the
    polynomial system Δ(p)=p⊗p, ε(p)=1 is also solved exactly with sympy and
    the union returned.  For group algebras and the Sweedler algebra every
    grouplike is a basis vector.
    """
    found = []
    for i in range(H.dim):
        if is_grouplike(H, H.e(i)):
            found.append(H.e(i))
    if H.dim <= solve_limit and H.field.characteristic == 0:
        import sympy
        xs = sympy.symbols(f"c0:{H.dim}")
        eqs = []
        for i in range(H.dim):
            for j in range(H.dim):
                lhs = sum(xs[k] * sympy.Rational(str(H.comult[k].get((i, j), 0))) for k in range(H.dim))
                eqs.append(lhs - xs[i] * xs[j])
        eqs.append(sum(xs[k] * sympy.Rational(str(H.counit[k])) for k in range(H.dim)) - 1)
        for sol in sympy.solve(eqs, xs, dict=True):
            if any(s.free_symbols for s in sol.values()):
                continue
            v = {k: Fraction(str(sol.get(xs[k], 0))) for k in range(H.dim)}
            v = {k: c for k, c in v.items() if c}
            if v not in found:
                found.append(v)
    return found


def find_pivots(H):
    return [p for p in grouplikes(H) if pivotal_identity_ok(H, p)]


def corrupted(H, i=1, j=1):
    """Copy with a perturbed product e_i·e_j (negative control)."""
    mult = {k: dict(v) for k, v in H.mult.items()}
    cur = mult.get((i, j), {})
    k = (next(iter(cur)) + 1) % H.dim if cur else 0
    mult[(i, j)] = {k: H.field(1)}
    return FinHopf(H.name + "-corrupted", H.basis, H.field, mult, H.unit, H.comult, H.counit, H.antipode, H.pivot)
