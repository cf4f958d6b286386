"""Acceptance criteria 1-9, each with its time limit.

Run with ``pytest tests/test_acceptance.py`` (a line per criterion is printed in
the terminal summary) or ``python tests/test_acceptance.py``.
"""
import random
import time

import pytest

from ribbonmcg import graph as G
from ribbonmcg import groups as GR
from ribbonmcg import hopf as HO
from ribbonmcg import linear as LI
from ribbonmcg import mcg as M
from ribbonmcg import standard_form as SF
from ribbonmcg import verify as V
from ribbonmcg.words import parse_word

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = []


def record(n, title, ok, seconds, limit, detail=""):
    status = "PASS" if ok and seconds < limit else "FAIL"
    line = f"criterion {n}: {status}  {title}  ({seconds:.2f}s, limit {limit:g}s){'  ' + detail if detail else ''}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line
    assert seconds < limit, line


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def test_criterion_1_hopf_axioms():
    insts = [lambda: HO.group_algebra(GR.cyclic(2), pivot="e"), lambda: HO.group_algebra(GR.cyclic(3), pivot="e"),
             lambda: HO.group_algebra(GR.symmetric(3), pivot="e"), lambda: HO.sweedler4()]
    worst, ok, names = 0.0, True, []
    for mk in insts:
        def check():
            H = mk()
            res = HO.check_hopf_axioms(H) + HO.check_pivot(H) + HO.check_T(H)
            tt = all(H.T(H.T(H.e(i))) == H.e(i) for i in range(H.dim))
            return H.name, all(r[1] for r in res) and tt
        (name, good), dt = timed(check)
        names.append(name)
        ok &= good
        worst = max(worst, dt)
    record(1, "Hopf and pivotal axioms, T∘T = id", ok, worst, 1, "slowest of " + ", ".join(names))


def test_criterion_2_torus_braid():
    def run():
        g = G.torus_graph()
        Da, Db = M.twist_loop_op(g, "a"), M.twist_loop_op(g, "b")
        lhs, rhs = Da.then(Db).then(Da), Db.then(Da).then(Db)
        sym = M.symbolic(lhs) == M.symbolic(rhs)
        calc = LI.Calculus(HO.sweedler4())
        A = LI.LinOperator(calc, lhs).matrix()
        B = LI.LinOperator(calc, rhs).matrix()
        return sym and A == B and len(A) == 16
    ok, dt = timed(run)
    record(2, "D_aD_bD_a = D_bD_aD_b symbolic and 16x16 Sweedler", ok, dt, 1)


def test_criterion_3_torus_sl2():
    def run():
        g = G.torus_graph()
        full = M.mcg_word_op(g, "(D_b D_a D_b)^4")
        vf = M.vertex_face_twist_op(g, "x")
        sym = V.SymbolicBackend().equal(full, vf)[0]
        lin = V.LinearBackend(HO.sweedler4())
        lin_ok = lin.equal(full, vf)[0]
        bi = LI.biinvariants(lin.calc, g, "x")
        ident = LI.is_identity_map(LI.induced_on_biinv(bi, full))
        grp = GR.symmetric(3)
        gbi = GR.biinvariants(grp, g, "x", grp.identity)
        gident = GR.induced_action(M.symbolic(full), gbi) == tuple(range(gbi.count))
        return sym and lin_ok and ident and gident, bi.dim
    (ok, dim), dt = timed(run)
    record(3, "(D_bD_aD_b)^4 = vertex-face twist, identity on biinvariants", ok, dt, 5, f"biinvariant dim {dim}")


def test_criterion_4_genus2_table():
    def run():
        R = M.generating_relabelings(2, 0)
        table = V.genus2_table_words()
        rows = 0
        for curve, images in table.items():
            rel = R[curve]
            if set(rel.changed()) != set(images):
                return False, rows
            for e, w in images.items():
                if str(rel[e]) != str(w):
                    return False, rows
            rows += 1
        return rows == len(R) == 11, rows
    (ok, rows), dt = timed(run)
    record(4, "genus-2 generator table reproduced", ok, dt, 5, f"{rows} rows (all generators)")


def test_criterion_5_gervais():
    def run():
        out = []
        for g, n in [(2, 0), (1, 1), (1, 2), (3, 0)]:
            rep = V.gervais_suite(g, n)
            iv = sum("iv" in r.tags and "permuted" not in r.tags for r in rep.results)
            out.append((rep.ok and iv == len(V.iv_triples(g, n)), f"({g},{n}) {len(rep.results)} cases"))
        return all(o for o, _ in out), "; ".join(d for _, d in out)
    (ok, detail), dt = timed(run)
    record(5, "Gervais relations (i)-(iv)", ok, dt, 120, detail)


def test_criterion_6_bene_and_lemmas():
    def run():
        reps = []
        for be in (V.SymbolicBackend(), V.make_backend("linear")):
            reps += [V.bene_suite(be), V.lemma_suite(be)]
        tags = {t for r in reps for c in r.results for t in c.tags}
        need = {"involutivity", "commutativity", "triangle", "pentagon", "opposite-end", "adjacent",
                "slide-commutativity", "generalized-pentagon", "epsilon-C", "flat-face", "slide-via-C", "slide-twist"}
        return all(r.ok for r in reps) and need <= tags, sum(len(r.results) for r in reps)
    (ok, n), dt = timed(run)
    record(6, "slide relations and lemma suite, both backends", ok, dt, 60, f"{n} cases")


def test_criterion_7_closed_surface():
    def run():
        grp = GR.symmetric(3)
        brute = GR.brute_force_commutator_count(grp, 2)
        rep = V.closed_suite(2, 0, grp, "e", coinv_oracle=brute)
        rel = [r for r in rep.results if r.case.startswith("relation/")]
        neg = [r for r in rep.results if r.case.startswith("full-space/")]
        cnt = next(r for r in rep.results if r.case == "coinvariant-count")
        ok = (rep.ok and brute == 486 and cnt.witness["coinvariants"] == 486 and len(rel) == 5
              and neg and neg[0].witness)
        return ok, cnt.witness["orbits"]
    (ok, orbits), dt = timed(run)
    record(7, "S3 genus 2: 486 coinvariants, closed relations on orbits, negative witness", ok, dt, 30,
           f"{orbits} orbits")


def test_criterion_8_equivariance():
    def run():
        reps = []
        for g, n in [(2, 0), (1, 1)]:
            reps.append(V.equivariance_suite(g, n, V.GroupBackend(GR.symmetric(3))))
            reps.append(V.equivariance_suite(g, n, V.make_backend("linear:Z2")))
        return all(r.ok for r in reps), sum(len(r.results) for r in reps)
    (ok, n), dt = timed(run)
    record(8, "generating twists commute with every cilium's action and coaction", ok, dt, 60, f"{n} cases")


def test_criterion_9_standard_form():
    def run():
        rng = random.Random(2024)
        shapes = [(1, 0), (1, 1), (2, 0), (2, 1), (1, 2), (3, 0), (2, 2)]
        good = 0
        for k in range(100):
            genus, n = shapes[k % len(shapes)]
            g = SF.random_admissible(genus, n, rng)
            sf = SF.standard_form(g)
            _, crossings = SF.replay(sf.moves, g)
            good += (sf.standard == G.standard_graph(genus, n) and crossings == 0
                     and sf.genus == G.genus(g) == genus)
        return good == 100, good
    (ok, good), dt = timed(run)
    record(9, "100 random graphs reduce to the standard chord diagram", ok, dt, 30, f"{good}/100")


if __name__ == "__main__":
    fails = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                fails += 1
    raise SystemExit(1 if fails else 0)
