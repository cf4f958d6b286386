"""Executable relation suites with JSON reports.

Each case yields an exact verdict.  Cases marked as controls are expected to
fail; a suite is green iff every ordinary case passes and every control fails.
"""
from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field
from functools import reduce as _fold
from importlib import resources

from . import graph as G
from . import groups as GR
from . import hopf as HO
from . import linear as LI
from . import mcg as M
from .graph import GraphError, GraphPath
from .words import PivotWord, Relabeling, compose, parse_word


class PreconditionError(ValueError):
    """Inputs rule the suite out (reported separately from relation failures)."""


# ---------------------------------------------------------------------------
# reports

@dataclass
class CaseResult:
    suite: str
    case: str
    verdict: str  # pass | fail | error
    expected: str = "pass"
    witness: object = None
    millis: float = 0.0
    tags: tuple = ()

    @property
    def ok(self):
        return self.verdict == self.expected

    def to_json(self):
        d = {"suite": self.suite, "case": self.case, "verdict": self.verdict,
             "millis": round(self.millis, 3)}
        if self.expected != "pass":
            d["expected"] = self.expected
        if self.witness is not None:
            d["witness"] = self.witness
        if self.tags:
            d["tags"] = list(self.tags)
        return d


@dataclass
class Report:
    suite: str
    results: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(r.ok for r in self.results)

    @property
    def failures(self):
        return [r for r in self.results if not r.ok]

    def to_json(self, timings=True):
        cases = sorted((r.to_json() for r in self.results), key=lambda d: d["case"])
        if not timings:
            for c in cases:
                c.pop("millis", None)
        return {"suite": self.suite, "ok": self.ok, "info": self.info,
                "passed": sum(r.ok for r in self.results), "total": len(self.results),
                "cases": cases}

    def dumps(self, timings=True):
        return json.dumps(self.to_json(timings), sort_keys=True, indent=1, default=str)

    def summary(self):
        bad = self.failures
        head = f"{self.suite}: {len(self.results) - len(bad)}/{len(self.results)} as expected"
        return head + "".join(f"\n  UNEXPECTED {r.verdict}: {r.case} {r.witness}" for r in bad)


@dataclass
class Case:
    name: str
    run: object  # () -> (ok, witness)
    control: bool = False
    tags: tuple = ()


def run_cases(suite, cases, info=None):
    rep = Report(suite, info=dict(info or {}))
    for c in cases:
        t0 = time.perf_counter()
        try:
            ok, wit = c.run()
            verdict = "pass" if ok else "fail"
        except (GraphError, ValueError, KeyError, RuntimeError, AssertionError) as exc:
            verdict, wit = "error", f"{type(exc).__name__}: {exc}"
        ms = (time.perf_counter() - t0) * 1000
        rep.results.append(CaseResult(suite, c.name, verdict, "fail" if c.control else "pass",
                                      wit, ms, tuple(c.tags)))
    return rep


# ---------------------------------------------------------------------------
# backends for operator equality

def _graph_check(a, b):
    if a.domain != b.domain:
        return "domain graphs differ"
    if a.codomain != b.codomain:
        return "codomain graphs differ"
    return None


class SymbolicBackend:
    name = "symbolic"

    def equal(self, a, b):
        bad = _graph_check(a, b)
        if bad:
            return False, bad
        ra, rb = M.symbolic(a), M.symbolic(b)
        for e in a.codomain.edge_ids:
            if ra[e] != rb[e]:
                return False, {"edge": e, "lhs": str(ra[e]), "rhs": str(rb[e])}
        return True, None


class LinearBackend:
    def __init__(self, H, max_dim=LI.DEFAULT_MAX_DIM):
        self.H = H
        self.calc = LI.Calculus(H)
        self.max_dim = max_dim
        self.name = f"linear:{H.name}"

    def equal(self, a, b):
        bad = _graph_check(a, b)
        if bad:
            return False, bad
        ok, key = LI.operators_equal(self.calc, a, b, self.max_dim)
        if ok:
            return True, None
        if isinstance(key, tuple):
            return False, {"basis": dict(zip(a.domain.edge_ids, (self.H.basis[k] for k in key)))}
        return False, key


class GroupBackend:
    """Equality by evaluation on every labeling of a finite group (cross-check only)."""

    def __init__(self, group, pivot=None, max_states=GR.DEFAULT_MAX_STATES):
        self.group = group
        self.pivot = group.checked_pivot(pivot)
        self.max_states = max_states
        self.name = f"group:{group.name}:{group.names[self.pivot]}"

    def equal(self, a, b):
        bad = _graph_check(a, b)
        if bad:
            return False, bad
        ra, rb = M.symbolic(a), M.symbolic(b)
        edges = a.domain.edge_ids
        for tup in GR.labelings(self.group, edges, self.max_states):
            lab = dict(zip(edges, tup))
            x, y = ra.evaluate(self.group, self.pivot, lab), rb.evaluate(self.group, self.pivot, lab)
            if x != y:
                return False, {"labeling": {e: self.group.names[v] for e, v in lab.items()}}
        return True, None


def make_backend(spec, max_dim=LI.DEFAULT_MAX_DIM, pivot=None):
    """``symbolic`` or ``linear`` / ``linear:<instance>``."""
    if spec in (None, "symbolic"):
        return SymbolicBackend()
    if spec.startswith("linear"):
        inst = spec.split(":", 1)[1] if ":" in spec else "sweedler4"
        return LinearBackend(hopf_instance(inst, pivot), max_dim)
    raise ValueError(f"unknown backend {spec!r}")


def hopf_instance(name, pivot=None, field=HO.QQ):
    """Named Hopf instance: ``sweedler4`` or a group name (group algebra)."""
    if name.endswith(".json"):
        H = HO.load_hopf(name)
        return H if pivot is None else H.with_pivot(H.element(pivot))
    if name.lower() in ("sweedler4", "sweedler"):
        H = HO.sweedler4(field)
        if pivot is not None:
            H = H.with_pivot(H.element(pivot))
        return H
    grp = GR.named_group(name)
    return HO.group_algebra(grp, field, grp.checked_pivot(pivot))


# ---------------------------------------------------------------------------
# small graph helpers

def graph_of(vertices, edges=None):
    """``vertices``: {vid: [half-edge ids e.s / e.t]} in linear order."""
    if edges is None:
        edges = sorted({h.rsplit(".", 1)[0] for hs in vertices.values() for h in hs})
    spec = {"vertices": [{"id": v, "order": list(hs)} for v, hs in vertices.items()],
            "edges": [{"id": e, "start": f"{e}.s", "target": f"{e}.t"} for e in edges]}
    return G.build_graph(spec)


def ops_from(g, *steps):
    """Chain of elementary slides ``(along, variant[, moved])`` applied left to right."""
    moves, cur = [], g
    for st in steps:
        d = G.slide_descriptor(cur, st[0], st[1])
        if len(st) > 2 and d.moved != st[2]:
            raise GraphError(f"slide {st} would move {d.moved}")
        cur, _ = G.slide(cur, d)
        moves.append(M.Slide(d))
    return M.Operator.from_moves(g, moves)


def face_slide(g, path, moved=None):
    """(operator, path map) of a slide along a face path."""
    descs, _ = G.face_slide_descriptors(g, path, moved)
    pm = {e: GraphPath(((e, 1),)) for e in g.edge_ids}
    cur = g
    for d in descs:
        cur, m = G.slide(cur, d)
        pm = G.compose_path_maps(pm, m)
    return M.Operator.from_moves(g, [M.Slide(d) for d in descs]), pm


def face_paths(g, max_len=2):
    """All face paths of length 1..max_len (walks that turn maximally left)."""
    out = []
    for h in sorted(g.half_edges):
        steps = []
        cur = h
        for _ in range(max_len):
            st = g.step_for_leaving(cur)
            if st in steps:
                break
            steps.append(st)
            out.append(GraphPath(tuple(steps)))
            _, arr = g.step_ends(st)
            cur = g.prev_cyclic(arr)
    return out


# the configurations of the slide relations
TORUS = G.torus_graph()
TRIANGLE = graph_of({"L": ["a.s", "b.t"], "U": ["b.s"], "R": ["a.t"]})
LEFT_PENTAGON = graph_of({"L": ["b.s", "c.t"], "U": ["c.s", "a.t"], "R": ["a.s"], "D": ["b.t"]})
RIGHT_PENTAGON = graph_of({"L": ["b.s"], "U": ["b.t", "c.s"], "R": ["c.t", "a.s"], "D": ["a.t"]})
COMMUTING = graph_of({"x": ["x.t", "a.s", "a.t", "y.t", "b.s", "b.t", "x.s", "y.s"]})
OPPOSITE = graph_of({"x": ["x.t", "a.s", "a.t", "x.s", "b.s", "b.t"]})
ADJACENT = graph_of({"x": ["x.t", "c.s", "y.t", "w.s", "c.t", "w.t", "x.s", "y.s"]})
# an end of b slid along g3, g2^-1, g1
FACE_SLIDE = graph_of({"TL": ["g3.s", "b.t"], "BL": ["g2.t", "g3.t"], "BR": ["g1.s", "g2.s"],
                       "TR": ["g1.t"], "M": ["b.s"]})
# a loop b enclosing a loop c, which encloses the end of a pendant a
NESTED = graph_of({"x": ["b.s", "c.s", "a.s", "c.t", "b.t"], "y": ["a.t"]})


def bene_cases(backend):
    eq = backend.equal
    cases = []

    # involutivity: every defined slide followed by its inverse
    for name, g in (("torus", TORUS), ("std11", G.standard_graph(1, 1)), ("triangle", TRIANGLE)):
        for e in g.edge_ids:
            for v in G.VARIANTS:
                try:
                    d = G.slide_descriptor(g, e, v)
                except GraphError:
                    continue
                if g.half_edges[d.moved].edge == e:
                    continue
                s = M.slide_op(g, d)
                cases.append(Case(f"involutivity/{name}/{e}^{v}",
                                  lambda s=s: eq(s.then(s.inverse()), M.Operator.identity(s.domain)),
                                  tags=("involutivity",)))

    def commute(g, x, y):
        a = ops_from(g, x, y)
        b = ops_from(g, y, x)
        return eq(a, b)

    cases.append(Case("commutativity/distinct-chords",
                      lambda: commute(COMMUTING, ("a", "R", "x.t"), ("b", "R", "y.t")),
                      tags=("commutativity",)))

    def triangle():
        g = TRIANGLE
        lhs = ops_from(g, ("a", "L", "b.t"), ("b", "-R", "a.t"), ("a", "-R", "b.s"))
        rhs = M.Operator.from_moves(g, [M.Reverse("b"),
                                        M.Rename((("a", "b"), ("b", "a")),
                                                 (("a.s", "b.s"), ("a.t", "b.t"), ("b.t", "a.s"), ("b.s", "a.t")),
                                                 ("a", "b"))])
        return eq(lhs, rhs)

    cases.append(Case("triangle", triangle, tags=("triangle",)))

    def left_pentagon():
        g = LEFT_PENTAGON
        return eq(ops_from(g, ("b", "L"), ("c", "L")),
                  ops_from(g, ("c", "L"), ("b", "L"), ("b", "L")))

    def right_pentagon():
        g = RIGHT_PENTAGON
        return eq(ops_from(g, ("a", "R"), ("c", "R")),
                  ops_from(g, ("c", "R"), ("a", "R"), ("a", "R")))

    cases.append(Case("pentagon/left", left_pentagon, tags=("pentagon",)))
    cases.append(Case("pentagon/right", right_pentagon, tags=("pentagon",)))
    cases.append(Case("opposite-end",
                      lambda: commute(OPPOSITE, ("a", "R", "x.t"), ("b", "R", "x.s")),
                      tags=("opposite-end",)))
    cases.append(Case("adjacent",
                      lambda: commute(ADJACENT, ("c", "R", "x.t"), ("c", "L", "y.t")),
                      tags=("adjacent",)))

    # controls: a perturbed slide must be detected
    def perturbed_involutivity():
        s = M.slide_op(TORUS, ("b", "L"))
        return eq(s.then(s), M.Operator.identity(TORUS))

    def perturbed_pentagon():
        g = LEFT_PENTAGON
        return eq(ops_from(g, ("b", "L"), ("c", "L")), ops_from(g, ("c", "L"), ("b", "L")))

    cases.append(Case("control/perturbed-involutivity", perturbed_involutivity, control=True))
    cases.append(Case("control/perturbed-pentagon", perturbed_pentagon, control=True))
    return cases


def bene_suite(backend=None):
    backend = backend or SymbolicBackend()
    return run_cases("bene", bene_cases(backend), {"backend": backend.name})


# ---------------------------------------------------------------------------
# slide / twist lemmas

LEMMA_GRAPHS = (("torus", TORUS), ("std11", G.standard_graph(1, 1)),
                ("left-pentagon", LEFT_PENTAGON), ("right-pentagon", RIGHT_PENTAGON),
                ("face-slide", FACE_SLIDE), ("nested", NESTED))


def _try(f, *a):
    try:
        return f(*a)
    except GraphError:
        return None


def slide_commutativity_configs(g, max_len=2):
    """(γ, ρ) with both slides and both image slides defined and face paths."""
    out = []
    fps = face_paths(g, max_len)
    for gam, rho in itertools.product(fps, fps):
        sg = _try(face_slide, g, gam)
        sr = _try(face_slide, g, rho)
        if sg is None or sr is None:
            continue
        rho2 = G.apply_path_map(sg[1], rho)
        gam2 = G.apply_path_map(sr[1], gam)
        if not rho2.steps or not gam2.steps:
            continue
        if not G.is_face_path(sg[0].codomain, rho2) or not G.is_face_path(sr[0].codomain, gam2):
            continue
        a = _try(face_slide, sr[0].codomain, gam2)
        b = _try(face_slide, sg[0].codomain, rho2)
        if a is None or b is None:
            continue
        out.append((gam, rho, sr[0].then(a[0]), sg[0].then(b[0])))
    return out


def pentagon_configs(g, max_len=3):
    """γ = γ1∘γ2∘γ3 (γ3, γ2 non-trivial) with S_γ and S_{γ2} defined."""
    out = []
    for gam in face_paths(g, max_len):
        k = len(gam.steps)
        sg = _try(face_slide, g, gam)
        if sg is None:
            continue
        for k3 in range(1, k):
            for k2 in range(1, k - k3 + 1):
                g3 = gam.steps[:k3]
                g2 = GraphPath(gam.steps[k3:k3 + k2])
                g1 = gam.steps[k3 + k2:]
                s2 = _try(face_slide, g, g2)
                if s2 is None:
                    continue
                image = G.apply_path_map(s2[1], gam)
                expect = GraphPath(g3 + g1).reduced()
                lhs_tail = _try(face_slide, sg[0].codomain, g2)
                rhs_tail = _try(face_slide, s2[0].codomain, image) if image.steps else None
                if lhs_tail is None or rhs_tail is None:
                    continue
                out.append((gam, g2, image == expect, sg[0].then(lhs_tail[0]), s2[0].then(rhs_tail[0])))
    return out


def slide_twist_configs(g):
    """(γ single step, ρ loop) with the moved end not on ρ and S_γ(ρ) a face path."""
    out = []
    loops = [e for e in g.edge_ids if g.is_loop(e)]
    for rho_e in loops:
        rho = GraphPath(((rho_e, 1),)) if g.index_of(g.st(rho_e)) < g.index_of(g.ta(rho_e)) \
            else GraphPath(((rho_e, -1),))
        for gam in face_paths(g, 1):
            sg = _try(face_slide, g, gam)
            if sg is None:
                continue
            moved = sg[0].moves[0].desc.moved
            if g.half_edges[moved].edge == rho_e:
                continue
            image = G.apply_path_map(sg[1], rho)
            g2 = sg[0].codomain
            if not image.steps or not G.is_face_path(g2, image):
                continue
            d_rho = _try(M.twist_facepath_op, g, rho)
            d_img = _try(M.twist_facepath_op, g2, image)
            if d_rho is None or d_img is None:
                continue
            out.append((gam, rho, d_rho.then(sg[0]), sg[0].then(d_img)))
    return out


def _edge_paths(g):
    return [GraphPath(((e, s),)) for e in g.edge_ids for s in (1, -1)]


def lemma_cases(backend, graphs=LEMMA_GRAPHS, limit=None):
    eq = backend.equal
    lin = isinstance(backend, LinearBackend)
    cases = []

    def capped(items):
        return items if limit is None else items[:limit]

    for gname, g in graphs:
        for gam, rho, lhs, rhs in capped(slide_commutativity_configs(g)):
            cases.append(Case(f"slide-commutativity/{gname}/{gam}|{rho}",
                              lambda l=lhs, r=rhs: eq(l, r), tags=("slide-commutativity",)))
        for gam, g2, img_ok, lhs, rhs in capped(pentagon_configs(g)):
            def pent(l=lhs, r=rhs, ok=img_ok):
                if not ok:
                    return False, "image of the path is not γ1∘γ3"
                return eq(l, r)
            cases.append(Case(f"generalized-pentagon/{gname}/{gam}/{g2}", pent, tags=("generalized-pentagon",)))
        for gam, rho, lhs, rhs in capped(slide_twist_configs(g)):
            cases.append(Case(f"slide-twist/{gname}/{gam}|D{rho}", lambda l=lhs, r=rhs: eq(l, r),
                              tags=("slide-twist",)))
        fps = [p for p in face_paths(g, 3)]
        for gam in capped(fps):
            c = _try(M.add_edge_op, g, gam, "cc")
            if c is None:
                continue
            c = c[0]
            cases.append(Case(f"remove-after-add/{gname}/{gam}",
                              lambda c=c: eq(c.then(M.remove_edge_op(c.codomain, "cc")), M.Operator.identity(c.domain)),
                              tags=("epsilon-C",)))
            cases.append(Case(f"flat-face/{gname}/{gam}",
                              lambda c=c, gam=gam: flat_face_check(backend, c, gam, "cc"), tags=("flat-face",)))
            sg = _try(face_slide, g, gam)
            if sg is not None:
                def via_edge(c=c, sg=sg):
                    g2 = c.codomain
                    s = M.slide_op(g2, ("cc", "L"))
                    r = M.remove_edge_op(s.codomain, "cc")
                    return eq(c.then(s).then(r), sg[0])
                cases.append(Case(f"slide-via-added-edge/{gname}/{gam}", via_edge, tags=("slide-via-C",)))
        for p in capped(_edge_paths(g)):
            cases.append(Case(f"remove-original/{gname}/{p}", lambda p=p, g=g: remove_original_check(backend, g, p),
                              tags=("epsilon-alpha-C",)))
        for e in g.edge_ids:
            if g.is_loop(e):
                cases.append(Case(f"twist-orientation/{gname}/{e}",
                                  lambda g=g, e=e: eq(M.twist_loop_op(g, e), _reversed_twist(g, e)),
                                  tags=("twist-orientation",)))

    # label of b after the three-step slide along g3, g2^-1, g1
    if not lin:
        def three_step():
            op, _ = face_slide(FACE_SLIDE, GraphPath((("g3", 1), ("g2", -1), ("g1", 1))))
            got = M.symbolic(op)["b"]
            want = parse_word("g1 p g2^-1 g3 b")
            return got == want, None if got == want else str(got)
        cases.append(Case("three-step-face-slide", three_step, tags=("three-step",)))

    # controls
    def bad_flat():
        g = TORUS
        c, _ = M.add_edge_op(g, GraphPath((("a", 1),)), "cc")
        # swap the target end of cc back: use a path that is not the added face
        return flat_face_check(backend, c, GraphPath((("a", 1),)), "cc", face_override=GraphPath((("cc", -1),)))

    def bad_twist():
        g = NESTED
        return eq(M.twist_loop_op(g, "b"), M.twist_loop_op(g, "b", 2))

    cases.append(Case("control/flat-face-wrong-path", bad_flat, control=True))
    cases.append(Case("control/twist-vs-square", bad_twist, control=True))
    return cases


def _reversed_twist(g, e):
    r = M.reverse_op(g, e)
    d = M.twist_loop_op(r.codomain, e)
    return r.then(d).then(M.reverse_op(d.codomain, e))


def remove_original_check(backend, g, path):
    """ε_α∘C_α = id and ε_α∘C_{α⁻¹} = T_α (the new edge takes α's name and ends)."""
    e, s = path.steps[0]
    c, cid = M.add_edge_op(g, path, "cc")
    r = M.remove_edge_op(c.codomain, e)
    ed = g.edge(e)
    if s > 0:
        halves = (("cc.s", ed.start), ("cc.t", ed.target))
        rhs = M.Operator.identity(g)
    else:
        halves = (("cc.s", ed.target), ("cc.t", ed.start))
        rhs = M.reverse_op(g, e)
    ren = M.Operator.from_moves(r.codomain, [M.Rename((("cc", e),), halves, rhs.codomain.edge_ids)])
    return backend.equal(c.then(r).then(ren), rhs)


def flat_face_check(backend, c, gam, eid, face_override=None):
    """After adding an edge along γ the right coaction of the face γ'⁻¹∘γ is trivial."""
    g2 = c.codomain
    face = face_override or GraphPath(gam.steps + ((eid, -1),))
    if face_override is None and not G.is_face_path(g2, face):
        return False, "added face is not a face path"
    if isinstance(backend, LinearBackend):
        calc = backend.calc
        H = calc.H
        n = len(c.domain.edge_ids)
        LI.check_dim(calc.d, n, backend.max_dim)
        for key in LI.basis_states(calc.d, n):
            v = LI.run_linear(calc, c, {key: H.field(1)})
            co = LI.face_coaction(calc, g2, face, v)
            got = {}
            for (h, k), x in co.items():
                for t, ct in H.T_table[h].items():
                    HO._add(got, (t, k), x * ct)
            want = {}
            for k, x in v.items():
                for u, cu in H.unit.items():
                    HO._add(want, (u, k), x * cu)
            if got != want:
                return False, {"basis": [H.basis[i] for i in key]}
        return True, None
    if isinstance(backend, GroupBackend):
        rel = M.symbolic(c)
        grp, p = backend.group, backend.pivot
        edges = c.domain.edge_ids
        for tup in GR.labelings(grp, edges, backend.max_states):
            lab = rel.evaluate(grp, p, dict(zip(edges, tup)))
            if GR.face_holonomy(g2, face, lab, grp, p) != p:
                return False, {"labeling": [grp.names[x] for x in tup]}
        return True, None
    labels = M.run_symbolic_labels(c, {e: PivotWord.gen(e) for e in c.domain.edge_ids})
    w = M.T_word(M.holonomy(g2, face, labels))
    return w.is_identity(), None if w.is_identity() else str(w)


def lemma_suite(backend=None, limit=None):
    backend = backend or SymbolicBackend()
    return run_cases("lemmas", lemma_cases(backend, limit=limit), {"backend": backend.name})


# ---------------------------------------------------------------------------
# Hopf axioms

def hopf_cases(instances=None):
    if instances is None:
        instances = [HO.group_algebra(GR.cyclic(2), pivot="e"), HO.group_algebra(GR.cyclic(3), pivot="e"),
                     HO.group_algebra(GR.symmetric(3), pivot="e"), HO.sweedler4()]
    cases = []
    for H in instances:
        def axioms(H=H):
            bad = [(n, w) for n, ok, w in HO.check_hopf_axioms(H) if not ok]
            return not bad, bad or None

        def pivot(H=H):
            bad = [n for n, ok, _ in HO.check_pivot(H) if not ok]
            return not bad, bad or None

        def tmap(H=H):
            bad = [n for n, ok, _ in HO.check_T(H) if not ok]
            return not bad, bad or None

        cases += [Case(f"{H.name}/axioms", axioms), Case(f"{H.name}/pivot", pivot),
                  Case(f"{H.name}/T", tmap)]
        cases.append(Case(f"{H.name}/pivot-search", lambda H=H: _pivot_search(H)))
    bad = HO.corrupted(HO.group_algebra(GR.cyclic(2)))

    def corrupted():
        res = {n: ok for n, ok, _ in HO.check_hopf_axioms(bad)}
        return all(res.values()), sorted(n for n, ok in res.items() if not ok)

    cases.append(Case("control/corrupted-product", corrupted, control=True))
    return cases


def _pivot_search(H):
    found = HO.find_pivots(H)
    names = sorted(H.fmt(p) for p in found)
    if H.pivot is not None and H.pivot not in found:
        return False, {"found": names}
    return True, {"found": names}


def hopf_suite(instances=None):
    return run_cases("hopf", hopf_cases(instances))


# ---------------------------------------------------------------------------
# Gervais relations

def _rot(s):
    return [s[i:] + s[:i] for i in range(len(s))]


def _strict(s):
    return any(all(a < b for a, b in zip(r, r[1:])) for r in _rot(list(s)))


def _weak(s):
    return any(all(a <= b for a, b in zip(r, r[1:])) for r in _rot(list(s)))


def intersection(c1, c2, g, n):
    """Intersection number of two generating curves ('alpha', i) / ('delta', j) / ('gamma', i, j)."""
    order = {"alpha": 0, "delta": 1, "gamma": 2}
    if order[c1[0]] > order[c2[0]]:
        c1, c2 = c2, c1
    k1, k2 = c1[0], c2[0]
    if k1 == k2 and k1 in ("alpha", "delta"):
        return 0
    if (k1, k2) == ("alpha", "delta"):
        i, j = c1[1], c2[1]
        return 1 if (i == g or j == n + 2 * i) else 0
    if (k1, k2) == ("alpha", "gamma"):
        i = c1[1]
        return 1 if n + 2 * i in c2[1:] else 0
    if (k1, k2) == ("delta", "gamma"):
        i = c1[1]
        j, k = c2[1:]
        return 2 if _strict((k, i, j)) else 0
    i, j = c1[1:]
    k, l = c2[1:]
    if _strict((j, k, l, i)):
        return 4
    if _weak((j, l, k, i)) or _weak((l, j, i, k)) or _weak((j, i, l, k)):
        return 0
    return 2


def curve_list(g, n):
    N = G.curve_count(g, n)
    return ([("alpha", i) for i in range(1, g + 1)] + [("delta", j) for j in range(N)]
            + [("gamma", i, j) for i in range(N) for j in range(N) if i != j])


def curve_name(c):
    return "_".join(map(str, c))


def iv_triples(g, n):
    N = G.curve_count(g, n)
    out = []
    for i, j, k in itertools.product(range(N), repeat=3):
        if i == j == k:
            continue
        if j <= i <= k or k <= j <= i or i <= k <= j:
            out.append((i, j, k))
    return out


@dataclass
class RelationCase:
    name: str
    lhs: tuple  # curve names / None for identity, composition right-to-left
    rhs: tuple
    tags: tuple = ()
    control: bool = False


def gervais_cases(g, n):
    if g < 1:
        raise PreconditionError("Gervais relations need genus >= 1")
    if n < 0:
        raise PreconditionError("n must be non-negative")
    N = G.curve_count(g, n)
    out = []
    if g + n == 1:
        out.append(RelationCase("iii/braid/alpha_1|delta_0", ("alpha_1", "delta_0", "alpha_1"),
                                ("delta_0", "alpha_1", "delta_0"), ("iii", "intersection=1")))
        return out
    for j in range(1, g):
        a = (n + 2 * j + 1) % N
        tags = ("i",) + (("wraparound",) if a == 0 else ())
        out.append(RelationCase(f"i/gamma_{a}_{n + 2 * j}=gamma_{n + 2 * j}_{n + 2 * j - 1}",
                                (f"gamma_{a}_{n + 2 * j}",), (f"gamma_{n + 2 * j}_{n + 2 * j - 1}",), tags))
    curves = curve_list(g, n)
    for c1, c2 in itertools.combinations(curves, 2):
        x = intersection(c1, c2, g, n)
        a, b = curve_name(c1), curve_name(c2)
        if x == 0:
            out.append(RelationCase(f"ii/commute/{a}|{b}", (a, b), (b, a), ("ii", "intersection=0")))
        elif x == 1:
            out.append(RelationCase(f"iii/braid/{a}|{b}", (a, b, a), (b, a, b), ("iii", "intersection=1")))
        else:
            out.append(RelationCase(f"control/commute/{a}|{b}", (a, b), (b, a),
                                    ("ii-control", f"intersection={x}"), control=True))

    def gam(i, j):
        return () if i == j else (f"gamma_{i}_{j}",)

    for i, j, k in iv_triples(g, n):
        x = (f"delta_{k}", f"delta_{i}", f"delta_{j}", f"alpha_{g}")
        rhs = gam(i, j) + gam(j, k) + gam(k, i)
        out.append(RelationCase(f"iv/{i},{j},{k}", x * 3, rhs, ("iv",)))
    i, j, k = iv_triples(g, n)[0]
    x = (f"delta_{j}", f"delta_{k}", f"delta_{i}", f"alpha_{g}")
    out.append(RelationCase(f"iv-permuted/{i},{j},{k}", x * 3, gam(i, j) + gam(j, k) + gam(k, i),
                            ("iv", "permuted")))
    x = (f"delta_{k}", f"delta_{i}", f"delta_{j}", f"alpha_{g}")
    out.append(RelationCase(f"control/iv-squared/{i},{j},{k}", x * 2, gam(i, j) + gam(j, k) + gam(k, i),
                            ("iv-control",), control=True))
    return out


def _word_relabeling(R, names, edges):
    out = Relabeling.identity(edges)
    for nm in names:  # names listed left to right = composition order
        out = compose(out, R[nm])
    return out


def _word_op(T, names, g0):
    op = M.Operator.identity(g0)
    for nm in reversed(names):
        op = op.then(T[nm])
    return op


def run_suite(cases, g, n, backend=None, crosscheck=None, sample=40, seed=0):
    """Run relation cases.  ``crosscheck``: list of (group, pivot) for metamorphic evaluation."""
    backend = backend or SymbolicBackend()
    g0 = G.standard_graph(g, n)
    edges = g0.edge_ids
    items = []
    if isinstance(backend, SymbolicBackend):
        R = M.generating_relabelings(g, n)

        def check(rc):
            a = _word_relabeling(R, rc.lhs, edges)
            b = _word_relabeling(R, rc.rhs, edges)
            for e in edges:
                if a[e] != b[e]:
                    return False, {"edge": e, "lhs": str(a[e]), "rhs": str(b[e])}
            return True, None
    else:
        T = M.generating_twists(g, n)

        def check(rc):
            return backend.equal(_word_op(T, rc.lhs, g0), _word_op(T, rc.rhs, g0))

    for rc in cases:
        items.append(Case(rc.name, lambda rc=rc: check(rc), rc.control, rc.tags))
    if crosscheck:
        R = M.generating_relabelings(g, n)
        rng = random.Random(seed)
        for grp, piv in crosscheck:
            p = grp.checked_pivot(piv)
            labs = [tuple(rng.randrange(grp.order) for _ in edges) for _ in range(sample)]
            for rc in cases:
                if rc.control:
                    continue

                def meta(rc=rc, grp=grp, p=p, labs=labs):
                    a = _word_relabeling(R, rc.lhs, edges)
                    b = _word_relabeling(R, rc.rhs, edges)
                    for tup in labs:
                        lab = dict(zip(edges, tup))
                        if a.evaluate(grp, p, lab) != b.evaluate(grp, p, lab):
                            return False, {"labeling": [grp.names[x] for x in tup]}
                    return True, None
                items.append(Case(f"metamorphic/{grp.name}:{grp.names[p]}/{rc.name}", meta,
                                  tags=("metamorphic",) + rc.tags))
    info = {"genus": g, "boundaries": n, "backend": backend.name}
    return run_cases("gervais", items, info)


def gervais_suite(g, n, backend=None, crosscheck=None):
    cases = gervais_cases(g, n)
    rep = run_suite(cases, g, n, backend, crosscheck)
    if (g, n) == (2, 0) and isinstance(backend or SymbolicBackend(), SymbolicBackend):
        for r in table_check_cases():
            t0 = time.perf_counter()
            ok, wit = r.run()
            rep.results.append(CaseResult("gervais", r.name, "pass" if ok else "fail", "pass", wit,
                                          (time.perf_counter() - t0) * 1000, r.tags))
    return rep


# ---------------------------------------------------------------------------
# the genus-2 substitution table

def load_genus2_table():
    txt = resources.files("ribbonmcg").joinpath("data/genus2_table.json").read_text()
    return json.loads(txt)


def genus2_table_words():
    """{curve: {edge: PivotWord}} for the changed edges listed in the table."""
    data = load_genus2_table()
    out = {}
    for curve, images in data.items():
        subs = {k[1:]: parse_word(w) for k, w in images.items() if k.startswith("_")}
        out[curve] = {e: parse_word(w, subs) for e, w in images.items() if not e.startswith("_")}
    return out


def table_check_cases():
    R = M.generating_relabelings(2, 0)
    cases = []
    for curve, images in genus2_table_words().items():
        def run(curve=curve, images=images):
            rel = R[curve]
            changed = rel.changed()
            if set(changed) != set(images):
                return False, {"changed": sorted(changed), "table": sorted(images)}
            for e, w in images.items():
                if rel[e] != w:
                    return False, {"edge": e, "computed": str(rel[e]), "table": str(w)}
            return True, None
        cases.append(Case(f"table/{curve}", run, tags=("table",)))
    return cases


def table_suite():
    return run_cases("table", table_check_cases())


# ---------------------------------------------------------------------------
# torus

def torus_cases(backend, instance=None):
    g = TORUS
    eq = backend.equal
    Da, Db = M.twist_loop_op(g, "a"), M.twist_loop_op(g, "b")
    aba = Da.then(Db).then(Da)
    bab = Db.then(Da).then(Db)
    full = bab ** 4
    vf = M.vertex_face_twist_op(g, "x")
    cases = [
        Case("braid", lambda: eq(aba, bab), tags=("braid",)),
        Case("full-twist=vertex-face", lambda: eq(full, vf), tags=("sl2",)),
        Case("(DaDb)^6=(DbDaDb)^4", lambda: eq((Db.then(Da)) ** 6, full), tags=("sl2",)),
        Case("control/braid-perturbed", lambda: eq(aba, Da.then(Db).then(Db)), control=True),
    ]
    if isinstance(backend, SymbolicBackend):
        words = {
            "D_b": ({"a": "b a", "b": "b"}, Db),
            "D_a": ({"a": "a", "b": "b a^-1"}, Da),
            "D_bD_aD_b": ({"a": "b", "b": "b a^-1 b^-1"}, bab),
            "(D_bD_aD_b)^4": ({"a": "[b,a^-1] a [a^-1,b]", "b": "[b,a^-1] b [a^-1,b]"}, full),
        }
        for name, (want, op) in words.items():
            def run(want=want, op=op):
                rel = M.symbolic(op)
                for e, w in want.items():
                    if rel[e] != parse_word(w):
                        return False, {"edge": e, "computed": str(rel[e]), "expected": w}
                return True, None
            cases.append(Case(f"formula/{name}", run, tags=("formula",)))
    for name, op in (("D_a", Da), ("D_b", Db), ("(D_bD_aD_b)^4", full)):
        cases.append(Case(f"biinvariants/{name}", lambda op=op, name=name: _torus_biinv(backend, op, name),
                          tags=("biinvariants",)))
    return cases


def _torus_biinv(backend, op, name):
    """The full twist induces the identity on biinvariants; every twist descends."""
    if isinstance(backend, LinearBackend):
        bi = LI.biinvariants(backend.calc, TORUS, "x", backend.max_dim)
        phi = LI.induced_on_biinv(bi, op)
        if name.endswith("^4"):
            return LI.is_identity_map(phi), {"dim": bi.dim}
        return True, {"dim": bi.dim}
    grp, p = (backend.group, backend.pivot) if isinstance(backend, GroupBackend) else (GR.symmetric(3), 0)
    bi = GR.biinvariants(grp, TORUS, "x", p)
    perm = GR.induced_action(M.symbolic(op), bi)
    if name.endswith("^4"):
        return perm == tuple(range(bi.count)), {"orbits": bi.count, "group": grp.name}
    return True, {"orbits": bi.count, "group": grp.name}


def torus_suite(backend=None):
    backend = backend or SymbolicBackend()
    return run_cases("torus", torus_cases(backend), {"backend": backend.name})


# ---------------------------------------------------------------------------
# closed surfaces

def closed_relations(g, n):
    """Extra relations after capping the face at the cilium of x: (name, lhs, rhs)."""
    N = G.curve_count(g, n)
    if N < 2:
        raise PreconditionError("closed-surface relations need n + 2g - 1 >= 2 (use the torus suite for g=1, n=0)")
    ag = f"alpha_{g}"
    rels = [
        ("gamma_1_0=1", ("gamma_1_0",), ()),
        ("delta_0=delta_1", ("delta_0",), ("delta_1",)),
        ("gamma_0_1=(delta_0^3 alpha_g)^3", ("gamma_0_1",), ("delta_0", "delta_0", "delta_0", ag) * 3),
    ]
    for k in range(2, N):
        rels.append((f"gamma_0_{k}=gamma_1_{k}", (f"gamma_0_{k}",), (f"gamma_1_{k}",)))
        rels.append((f"gamma_{k}_0=gamma_{k}_1", (f"gamma_{k}_0",), (f"gamma_{k}_1",)))
    return rels


def _pivot_square_ok_group(grp, p):
    return grp.mul(p, p) == grp.identity


def closed_cases_group(g, n, grp, pivot=None, max_states=GR.DEFAULT_MAX_STATES, coinv_oracle=None):
    p = grp.checked_pivot(pivot)
    if not _pivot_square_ok_group(grp, p):
        raise PreconditionError(f"pivot {grp.names[p]} does not satisfy p*p = e")
    g0 = G.standard_graph(g, n)
    R = M.generating_relabelings(g, n)
    edges = g0.edge_ids
    state = {}

    def bi():
        if "bi" not in state:
            state["bi"] = GR.biinvariants(grp, g0, "x", p, max_states)
        return state["bi"]

    cases = []

    def count():
        b = bi()
        wit = {"coinvariants": len(b.coinv), "orbits": b.count}
        if n == 0:
            brute = GR.brute_force_commutator_count(grp, g) if grp.order ** (2 * g) <= max_states else None
            conv = GR.class_function_count(grp, g)
            wit.update(brute=brute, class_function=conv)
            ok = len(b.coinv) == conv and (brute is None or brute == conv)
            if coinv_oracle is not None:
                ok = ok and len(b.coinv) == coinv_oracle
            return ok, wit
        return True, wit

    cases.append(Case("coinvariant-count", count, tags=("count",)))

    def perm(names):
        return GR.induced_action(_word_relabeling(R, names, edges), bi())

    for name, lhs, rhs in closed_relations(g, n):
        def run(lhs=lhs, rhs=rhs):
            a, b = perm(lhs), perm(rhs)
            if a != b:
                k = next(i for i in range(len(a)) if a[i] != b[i])
                rep = bi().reps[k]
                return False, {"orbit_rep": [grp.names[x] for x in rep], "lhs": a[k], "rhs": b[k]}
            return True, None
        cases.append(Case(f"relation/{name}", run, tags=("closed",)))

    def face_twist():
        face = G.ciliated_face(g0, "x")
        op = M.twist_facepath_op(g0, face)
        a = GR.induced_action(M.symbolic(op), bi())
        return a == tuple(range(bi().count)), None

    cases.append(Case("face-lemma/twist-along-ciliated-face=1", face_twist, tags=("face-lemma",)))

    def full_space():
        """D_delta_0 and D_delta_1 differ on the full labeling space (expected)."""
        a, b = R["delta_0"], R["delta_1"]
        for tup in GR.labelings(grp, edges, max_states):
            lab = dict(zip(edges, tup))
            if a.evaluate(grp, p, lab) != b.evaluate(grp, p, lab):
                return True, {"labeling": [grp.names[x] for x in tup]}
        return False, None

    abelian = all(grp.mul(x, y) == grp.mul(y, x) for x in range(grp.order) for y in range(grp.order))
    if not abelian:
        cases.append(Case("full-space/delta_0!=delta_1", full_space, tags=("negative-witness",)))
    return cases


def closed_cases_linear(g, n, H, max_dim=LI.DEFAULT_MAX_DIM):
    if H.pivot is None or H.mul(H.pivot, H.pivot) != H.unit:
        raise PreconditionError("pivot does not satisfy m(p⊗p) = 1")
    g0 = G.standard_graph(g, n)
    calc = LI.Calculus(H)
    T = M.generating_twists(g, n)
    state = {}

    def bi():
        if "bi" not in state:
            state["bi"] = LI.biinvariants(calc, g0, "x", max_dim)
        return state["bi"]

    def induced(names):
        return LI.induced_on_biinv(bi(), _word_op(T, names, g0))

    cases = [Case("biinvariant-dimension", lambda: (True, {"coinvariants": bi().dim_coinv, "biinvariants": bi().dim}))]
    for name, lhs, rhs in closed_relations(g, n):
        cases.append(Case(f"relation/{name}", lambda lhs=lhs, rhs=rhs: (induced(lhs) == induced(rhs), None),
                          tags=("closed",)))
    return cases


def torus_closed_cases_group(grp, pivot=None):
    p = grp.checked_pivot(pivot)
    if not _pivot_square_ok_group(grp, p):
        raise PreconditionError(f"pivot {grp.names[p]} does not satisfy p*p = e")
    g = TORUS
    bi = GR.biinvariants(grp, g, "x", p)
    Da, Db = M.symbolic(M.twist_loop_op(g, "a")), M.symbolic(M.twist_loop_op(g, "b"))
    bab = compose(Db, compose(Da, Db))
    full = _fold(compose, [bab] * 4)
    S = compose(Da, compose(Db, Da))

    def run_full():
        return GR.induced_action(full, bi) == tuple(range(bi.count)), {"orbits": bi.count}

    def run_s4():
        s4 = _fold(compose, [S] * 4)
        return GR.induced_action(s4, bi) == tuple(range(bi.count)), None

    return [Case("sl2/(D_bD_aD_b)^4=1", run_full, tags=("closed",)),
            Case("sl2/(D_aD_bD_a)^4=1", run_s4, tags=("closed",)),
            Case("braid", lambda: (GR.induced_action(compose(Da, compose(Db, Da)), bi)
                                   == GR.induced_action(bab, bi), None), tags=("closed",))]


def closed_suite(g, n=0, group=None, pivot=None, hopf=None, max_states=GR.DEFAULT_MAX_STATES,
                 max_dim=LI.DEFAULT_MAX_DIM, coinv_oracle=None):
    if g < 1:
        raise PreconditionError("closed-surface suite needs genus >= 1")
    if hopf is not None:
        if (g, n) == (1, 0):
            be = LinearBackend(hopf, max_dim)
            cases = [c for c in torus_cases(be) if c.name.startswith("biinvariants")]
        else:
            cases = closed_cases_linear(g, n, hopf, max_dim)
        info = {"genus": g, "boundaries": n, "instance": hopf.name, "pivot": hopf.fmt(hopf.pivot)}
    else:
        grp = group or GR.symmetric(3)
        if (g, n) == (1, 0):
            cases = torus_closed_cases_group(grp, pivot)
        else:
            cases = closed_cases_group(g, n, grp, pivot, max_states, coinv_oracle)
        info = {"genus": g, "boundaries": n, "group": grp.name,
                "pivot": grp.names[grp.checked_pivot(pivot)]}
    return run_cases("closed", cases, info)


# ---------------------------------------------------------------------------
# equivariance

def equivariance_cases(g, n, backend):
    g0 = G.standard_graph(g, n)
    T = M.generating_twists(g, n)
    cilia = [v.id for v in g0.vertices]
    cases = []
    if isinstance(backend, LinearBackend):
        for name, op in sorted(T.items()):
            for v in cilia:
                cases.append(Case(f"{name}@{v}", lambda op=op, v=v: LI.equivariance(backend.calc, op, v, backend.max_dim),
                                  tags=("linear",)))
        return cases
    grp, p = (backend.group, backend.pivot) if isinstance(backend, GroupBackend) else (GR.symmetric(3), 0)
    edges = g0.edge_ids
    faces = {v: G.ciliated_face(g0, v) for v in cilia}
    labs = [dict(zip(edges, t)) for t in GR.labelings(grp, edges)]
    hol = {v: [GR.face_holonomy(g0, faces[v], lab, grp, p) for lab in labs] for v in cilia}
    for name, op in sorted(T.items()):
        rel = M.symbolic(op)
        imgs = [rel.evaluate(grp, p, lab) for lab in labs]
        for v in cilia:
            def run(rel=rel, imgs=imgs, v=v):
                for lab, img, h0 in zip(labs, imgs, hol[v]):
                    if GR.face_holonomy(g0, faces[v], img, grp, p) != h0:
                        return False, {"coaction": {e: grp.names[x] for e, x in lab.items()}}
                    for h in range(grp.order):
                        if h == grp.identity:
                            continue
                        lhs = rel.evaluate(grp, p, GR.vertex_action(g0, v, h, lab, grp))
                        rhs = GR.vertex_action(g0, v, h, img, grp)
                        if lhs != rhs:
                            return False, {"action": grp.names[h], "labeling": {e: grp.names[x] for e, x in lab.items()}}
                return True, None
            cases.append(Case(f"{name}@{v}", run, tags=(f"group:{grp.name}",)))
    return cases


def equivariance_suite(g, n, backend=None):
    backend = backend or SymbolicBackend()
    name = backend.name if not isinstance(backend, SymbolicBackend) else "group:S3:e"
    return run_cases("equivariance", equivariance_cases(g, n, backend), {"genus": g, "boundaries": n,
                                                                           "backend": name})
