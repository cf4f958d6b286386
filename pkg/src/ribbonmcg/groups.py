"""Finite groups as Hopf monoids in Set: labelings, holonomies, (co/bi)invariants."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property

from . import graph as G

DEFAULT_MAX_STATES = 10 ** 7


class BudgetExceeded(RuntimeError):
    pass


class PivotError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteGroup:
    name: str
    names: tuple
    table: tuple  # table[i][j] = index of names[i]*names[j]

    @property
    def order(self):
        return len(self.names)

    @cached_property
    def identity(self):
        for i in range(self.order):
            if all(self.table[i][j] == j for j in range(self.order)):
                return i
        raise ValueError("no identity element")

    @cached_property
    def inverses(self):
        e = self.identity
        return tuple(next(j for j in range(self.order) if self.table[i][j] == e) for i in range(self.order))

    def mul(self, x, y):
        return self.table[x][y]

    def inv(self, x):
        return self.inverses[x]

    def element(self, name):
        if isinstance(name, int):
            return name
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no element {name!r} in {self.name}") from None

    @cached_property
    def center(self):
        return tuple(z for z in range(self.order)
                     if all(self.table[z][x] == self.table[x][z] for x in range(self.order)))

    def check_axioms(self):
        n = self.order
        r = range(n)
        if any(sorted(row) != list(r) for row in self.table):
            return False
        if any(sorted(self.table[i][j] for i in r) != list(r) for j in r):
            return False
        e = self.identity
        assoc = all(self.table[self.table[a][b]][c] == self.table[a][self.table[b][c]]
                    for a in r for b in r for c in r)
        return assoc and all(self.table[e][x] == x == self.table[x][e] for x in r)

    def checked_pivot(self, p):
        """Validate a pivot given by name or index: must be central."""
        if p is None:
            return self.identity
        try:
            z = self.element(p)
        except KeyError:
            raise PivotError(f"no such element {p!r} in {self.name}") from None
        if z not in self.center:
            raise PivotError(f"{self.names[z]!r} is not a central element of {self.name} "
                             f"(center: {[self.names[c] for c in self.center]})")
        return z

    def to_json(self):
        return {"name": self.name, "elements": list(self.names), "table": [list(r) for r in self.table]}


def group_from_table(name, names, table):
    g = FiniteGroup(name, tuple(names), tuple(tuple(r) for r in table))
    if not g.check_axioms():
        raise ValueError(f"table for {name} is not a group")
    return g


def load_group(path_or_dict):
    d = path_or_dict
    if isinstance(d, str):
        with open(d) as fh:
            d = json.load(fh)
    names = d["elements"]
    tab = d["table"]
    if tab and isinstance(tab[0][0], str):
        tab = [[names.index(x) for x in row] for row in tab]
    return group_from_table(d.get("name", "G"), names, tab)


def cyclic(n):
    names = ["e"] + ["g" if k == 1 else f"g{k}" for k in range(1, n)]
    return group_from_table(f"Z{n}", names, [[(i + j) % n for j in range(n)] for i in range(n)])


def dihedral(n):
    """Order 2n; elements s^j r^k named 'e', 'r', 'r2', 's', 'sr', 'sr2', ..."""
    elems = [(j, k) for j in range(2) for k in range(n)]

    def nm(j, k):
        r = "" if k == 0 else ("r" if k == 1 else f"r{k}")
        s = "s" if j else ""
        return (s + r) or "e"

    def mul(x, y):
        (j, k), (l, m) = x, y
        return ((j + l) % 2, ((-k if l else k) + m) % n)

    idx = {x: i for i, x in enumerate(elems)}
    table = [[idx[mul(x, y)] for y in elems] for x in elems]
    return group_from_table(f"D{n}", [nm(*x) for x in elems], table)


def _cycles(perm):
    seen, out = set(), []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        c, j = [], i
        while j not in seen:
            seen.add(j)
            c.append(j)
            j = perm[j]
        out.append("(" + " ".join(str(k + 1) for k in c) + ")")
    return "".join(out) or "e"


def symmetric(n):
    if n > 4:
        raise ValueError("symmetric groups are built in up to S4")
    if n == 3:
        g = dihedral(3)
        return FiniteGroup("S3", g.names, g.table)
    perms = sorted(itertools.permutations(range(n)))
    idx = {p: i for i, p in enumerate(perms)}
    # (x*y)(i) = x(y(i))
    table = [[idx[tuple(x[y[i]] for i in range(n))] for y in perms] for x in perms]
    return group_from_table(f"S{n}", [_cycles(p) for p in perms], table)


def klein():
    names = ["e", "x", "y", "xy"]
    return group_from_table("V4", names, [[i ^ j for j in range(4)] for i in range(4)])


def quaternion():
    # elements ±1, ±i, ±j, ±k as (sign, unit)
    units = ["1", "i", "j", "k"]
    prod = {("1", u): (1, u) for u in units}
    prod.update({(u, "1"): (1, u) for u in units})
    prod.update({("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
                 ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
                 ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")})
    elems = [(s, u) for s in (1, -1) for u in units]
    idx = {x: i for i, x in enumerate(elems)}
    table = []
    for s1, u1 in elems:
        row = []
        for s2, u2 in elems:
            s, u = prod[(u1, u2)]
            row.append(idx[(s * s1 * s2, u)])
        table.append(row)
    names = [("" if s > 0 else "-") + u for s, u in elems]
    return group_from_table("Q8", names, table)


def named_group(name):
    name = name.strip()
    if name in ("V4", "K4"):
        return klein()
    if name == "Q8":
        return quaternion()
    kind, num = name[0].upper(), name[1:]
    if not num.isdigit():
        raise KeyError(f"unknown group {name!r}")
    k = int(num)
    if kind == "Z" or kind == "C":
        return cyclic(k)
    if kind == "D":
        return dihedral(k)
    if kind == "S":
        return symmetric(k)
    raise KeyError(f"unknown group {name!r}")


# ---------------------------------------------------------------------------
# labelings

def labelings(group, edges, max_states=DEFAULT_MAX_STATES):
    total = group.order ** len(edges)
    if total > max_states:
        raise BudgetExceeded(f"{total} labelings exceed the budget of {max_states}")
    return itertools.product(range(group.order), repeat=len(edges))


def evaluate(rel, group, pivot, labels):
    """Evaluate a Relabeling on a labeling (dict edge -> element index)."""
    if pivot not in group.center:
        raise PivotError("pivot must be central")
    return rel.evaluate(group, pivot, labels)


def T(group, pivot, x):
    return group.mul(pivot, group.inv(x))


def face_holonomy(g, path, labels, group, pivot):
    """Ordered product over the composition-order word; reversed steps give p·x⁻¹."""
    acc = group.identity
    for e, s in reversed(path.steps):
        x = labels[e]
        acc = group.mul(acc, x if s > 0 else T(group, pivot, x))
    return acc


def vertex_action(g, vid, h, labels, group):
    out = dict(labels)
    hinv = group.inv(h)
    for hid in g.vertex(vid).order:
        he = g.half_edges[hid]
        if he.end == G.TARGET:
            out[he.edge] = group.mul(h, out[he.edge])
        else:
            out[he.edge] = group.mul(out[he.edge], hinv)
    return out


def coinvariants(group, g, vid, pivot, max_states=DEFAULT_MAX_STATES):
    """Labelings (tuples in edge order) with trivial holonomy around the cilium of ``vid``."""
    edges = g.edge_ids
    face = G.ciliated_face(g, vid)
    out = []
    for tup in labelings(group, edges, max_states):
        lab = dict(zip(edges, tup))
        if face_holonomy(g, face, lab, group, pivot) == group.identity:
            out.append(tup)
    return out


@dataclass
class Biinvariants:
    group: FiniteGroup
    graph: G.RibbonGraph
    vertex: str
    pivot: int
    coinv: list
    orbit_of: dict  # coinvariant tuple -> orbit index
    reps: list  # minimal representative per orbit

    @property
    def count(self):
        return len(self.reps)

    def project(self, tup):
        return self.orbit_of[tuple(tup)]


def biinvariants(group, g, vid, pivot, max_states=DEFAULT_MAX_STATES):
    """Orbits of the coinvariants under the vertex action at ``vid`` (union-find)."""
    edges = g.edge_ids
    co = coinvariants(group, g, vid, pivot, max_states)
    parent = {t: t for t in co}

    def find(t):
        while parent[t] != t:
            parent[t] = parent[parent[t]]
            t = parent[t]
        return t

    for t in co:
        lab = dict(zip(edges, t))
        for h in range(group.order):
            u = vertex_action(g, vid, h, lab, group)
            ut = tuple(u[e] for e in edges)
            if ut not in parent:
                raise ValueError("vertex action does not preserve coinvariants")
            a, b = find(t), find(ut)
            if a != b:
                if b < a:
                    a, b = b, a
                parent[b] = a
    roots = sorted({find(t) for t in co})
    index = {r: i for i, r in enumerate(roots)}
    orbit_of = {t: index[find(t)] for t in co}
    return Biinvariants(group, g, vid, pivot, co, orbit_of, roots)


class NotWellDefined(ValueError):
    pass


def induced_action(rel, bi):
    """Orbit permutation induced by a Relabeling; checks well-definedness."""
    edges = bi.graph.edge_ids
    img = [None] * bi.count
    for t in bi.coinv:
        lab = dict(zip(edges, t))
        out = rel.evaluate(bi.group, bi.pivot, lab)
        ot = tuple(out[e] for e in edges)
        if ot not in bi.orbit_of:
            raise NotWellDefined(f"image of {t} is not coinvariant")
        o = bi.orbit_of[ot]
        k = bi.orbit_of[t]
        if img[k] is None:
            img[k] = o
        elif img[k] != o:
            raise NotWellDefined(f"orbit {k} is sent to two orbits")
    return tuple(img)


def brute_force_commutator_count(group, genus):
    """Independent count of tuples with [a1^-1,b1]...[ag^-1,bg] = e."""
    m, inv = group.mul, group.inv
    n = 0
    for tup in itertools.product(range(group.order), repeat=2 * genus):
        acc = group.identity
        for i in range(genus):
            a, b = tup[2 * i], tup[2 * i + 1]
            c = m(m(m(inv(a), b), a), inv(b))
            acc = m(acc, c)
        n += acc == group.identity
    return n


def class_function_count(group, genus):
    """Same count as above, by convolving the distribution of one commutator g times."""
    n = group.order
    m, inv = group.mul, group.inv
    # distribution of single commutators [a^-1, b]
    dist = [0] * n
    for a in range(n):
        for b in range(n):
            dist[m(m(m(inv(a), b), a), inv(b))] += 1
    cur = [0] * n
    cur[group.identity] = 1
    for _ in range(genus):
        nxt = [0] * n
        for x in range(n):
            if cur[x]:
                for y in range(n):
                    if dist[y]:
                        nxt[m(x, y)] += cur[x] * dist[y]
        cur = nxt
    return cur[group.identity]
