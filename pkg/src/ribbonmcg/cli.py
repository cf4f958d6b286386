"""Command-line front end.

    ribbonmcg graph new --genus 2 --boundaries 1 --out g.json
    ribbonmcg graph faces g.json
    ribbonmcg act --torus --script "D_b" --group S3 --state r,s
    ribbonmcg verify gervais --genus 2 --boundaries 1
    ribbonmcg biinv --group S3 --genus 2

Structured output is JSON with sorted keys; a short summary goes to stdout.
Exit status: 0 success, 1 verification failure, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import graph as G
from . import groups as GR
from . import linear as LI
from . import mcg as M
from . import standard_form as SF
from . import verify as V
from .graph import GraphError, GraphPath

SUITES = ("hopf", "bene", "lemmas", "gervais", "torus", "closed", "equivariance")


class UsageError(Exception):
    pass


def _dump(obj):
    return json.dumps(obj, sort_keys=True, indent=1, default=str)


def _emit(obj, out):
    text = _dump(obj)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load_graph(path):
    with open(path) as fh:
        return G.build_graph(json.load(fh))


def _group(name):
    if name.endswith(".json"):
        return GR.load_group(name)
    return GR.named_group(name)


def parse_path(text):
    """``a,-b,c``: steps in traversal order, ``-`` for reversed traversal."""
    steps = []
    for tok in text.replace(" ", "").split(","):
        if not tok:
            continue
        steps.append((tok[1:], -1) if tok.startswith("-") else (tok.lstrip("+"), 1))
    if not steps:
        raise UsageError(f"empty path {text!r}")
    return GraphPath(tuple(steps))


# ---------------------------------------------------------------------------
# graph

def cmd_graph(args):
    if args.action == "new":
        if args.torus:
            g = G.torus_graph()
        else:
            if args.genus is None:
                raise UsageError("graph new needs --genus (or --torus)")
            g = G.standard_graph(args.genus, args.boundaries)
        _emit(g.to_json(), args.out)
        return 0
    if not args.file:
        raise UsageError(f"graph {args.action} needs a graph file")
    g = _load_graph(args.file)
    if args.action == "faces":
        fs = G.faces(g)
        _emit({"faces": [[list(s) for s in f.steps] for f in fs], "count": len(fs)}, args.out)
    elif args.action == "genus":
        _emit({"genus": G.genus(g), "vertices": len(g.vertices), "edges": len(g.edges),
               "faces": len(G.faces(g)), "cilium_bijection": G.has_cilium_bijection(g)}, args.out)
    else:
        sf = SF.standard_form(g)
        _, crossings = SF.replay(sf.moves, g)
        _emit({"genus": sf.genus, "boundaries": sf.boundaries, "slides": sf.slide_count,
               "moves": [_move_json(m) for m in sf.moves], "edge_names": sf.edge_names,
               "cilium_crossings": crossings, "graph": sf.standard.to_json()}, args.out)
    return 0


def _move_json(m):
    if isinstance(m, M.Slide):
        d = m.desc
        return {"slide": d.variant, "along": d.along, "moved": d.moved}
    if isinstance(m, M.Reverse):
        return {"reverse": m.edge}
    return {"move": type(m).__name__}


# ---------------------------------------------------------------------------
# act

def script_statements(text):
    return [s.strip() for line in text.splitlines() for s in line.split(";") if s.strip()]


def build_script(g, text, gn=None):
    """Operator for a script; statements apply in the order written."""
    op = M.Operator.identity(g)
    for stmt in script_statements(text):
        cur = op.codomain
        w = stmt.split()
        head = w[0].lower()
        if head == "slide":
            if len(w) not in (3, 4):
                raise UsageError(f"expected 'slide VARIANT EDGE [MOVED]': {stmt!r}")
            if len(w) == 4:
                d = G.SlideDescriptor(w[2], w[1], _half(cur, w[3]))
            else:
                d = G.slide_descriptor(cur, w[2], w[1])
            step = M.slide_op(cur, d)
        elif head == "face-slide":
            step = M.face_slide_op(cur, parse_path(w[1]), _half(cur, w[2]) if len(w) > 2 else None)
        elif head == "reverse":
            step = M.reverse_op(cur, w[1])
        elif head == "remove":
            step = M.remove_edge_op(cur, w[1])
        elif head == "add-edge":
            step, _ = M.add_edge_op(cur, parse_path(w[2]), w[1])
        elif head == "vertex-face":
            step = M.vertex_face_twist_op(cur, w[1])
        else:
            body = stmt[len(w[0]):].strip() if head == "twist" else stmt
            step = M.mcg_word_op(cur, body, gn if cur == g else None)
        op = op.then(step)
    return op


def _half(g, spec):
    """Half-edge by id or as ``st(e)`` / ``ta(e)``."""
    if spec.startswith(("st(", "ta(")) and spec.endswith(")"):
        e = spec[3:-1]
        return g.st(e) if spec.startswith("st") else g.ta(e)
    if spec not in g.half_edges:
        raise UsageError(f"no half-edge {spec!r}")
    return spec


def cmd_act(args):
    if args.graph:
        g, gn = _load_graph(args.graph), None
    elif args.torus:
        g, gn = G.torus_graph(), None
    elif args.genus is not None:
        g, gn = G.standard_graph(args.genus, args.boundaries), (args.genus, args.boundaries)
    else:
        raise UsageError("act needs --graph, --torus or --genus")
    script = args.script or ""
    if args.script_file:
        with open(args.script_file) as fh:
            script = fh.read()
    op = build_script(g, script, gn)
    rel = M.symbolic(op)
    out = {"relabeling": {e: str(rel[e]) for e in op.codomain.edge_ids}, "graph": op.codomain.to_json(),
           "slides": op.slide_count()}
    if args.state is not None:
        vals = [v.strip() for v in args.state.split(",")]
        edges = g.edge_ids
        if len(vals) != len(edges):
            raise UsageError(f"state has {len(vals)} entries, graph has {len(edges)} edges")
        if args.backend == "linear" or args.hopf:
            H = V.hopf_instance(args.hopf or "sweedler4", args.pivot)
            key = tuple(H.basis.index(v) for v in vals)
            res = LI.run_linear(LI.Calculus(H), op, {key: H.field(1)})
            out["state"] = {" ".join(H.basis[i] for i in k): str(c) for k, c in sorted(res.items())}
        else:
            if not args.group:
                raise UsageError("a group state needs --group")
            grp = _group(args.group)
            p = grp.checked_pivot(args.pivot)
            lab = {e: grp.element(v) for e, v in zip(edges, vals)}
            res = rel.evaluate(grp, p, lab)
            out["state"] = [grp.names[res[e]] for e in op.codomain.edge_ids]
    _emit(out, args.out)
    return 0


# ---------------------------------------------------------------------------
# verify

def _backend(args):
    if args.backend == "symbolic":
        return V.SymbolicBackend()
    if args.backend == "linear":
        return V.LinearBackend(V.hopf_instance(args.hopf or "sweedler4", args.pivot), args.max_dim)
    if args.backend == "group":
        return V.GroupBackend(_group(args.group or "S3"), args.pivot, args.max_states)
    raise UsageError(f"unknown backend {args.backend!r}")


def run_verify(args):
    s = args.suite
    if s in ("gervais", "closed", "equivariance") and args.genus is None:
        raise UsageError(f"verify {s} needs --genus")
    if args.genus is not None and args.genus < 1:
        raise UsageError("--genus must be at least 1")
    if args.boundaries < 0:
        raise UsageError("--boundaries must be non-negative")
    if s == "hopf":
        inst = [V.hopf_instance(args.hopf, args.pivot)] if args.hopf else None
        return V.hopf_suite(inst)
    if s == "bene":
        return V.bene_suite(_backend(args))
    if s == "lemmas":
        return V.lemma_suite(_backend(args))
    if s == "torus":
        return V.torus_suite(_backend(args))
    if s == "gervais":
        cross = [(_group(args.group), args.pivot)] if args.group and args.backend != "group" else None
        be = _backend(args)
        if isinstance(be, V.GroupBackend):
            return V.run_suite(V.gervais_cases(args.genus, args.boundaries), args.genus, args.boundaries, be)
        return V.gervais_suite(args.genus, args.boundaries, be, cross)
    if s == "closed":
        if args.backend == "linear":
            H = V.hopf_instance(args.hopf or "Z2", args.pivot)
            return V.closed_suite(args.genus, args.boundaries, hopf=H, max_dim=args.max_dim)
        return V.closed_suite(args.genus, args.boundaries, _group(args.group or "S3"), args.pivot,
                              max_states=args.max_states)
    if args.backend == "symbolic":
        be = V.GroupBackend(_group(args.group or "S3"), args.pivot, args.max_states)
    else:
        be = _backend(args)
    return V.equivariance_suite(args.genus, args.boundaries, be)


def cmd_verify(args):
    rep = run_verify(args)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(rep.dumps(timings=not args.no_timings) + "\n")
    print(rep.summary())
    return 0 if rep.ok else 1


# ---------------------------------------------------------------------------
# biinv

def biinv_report(grp, genus, boundaries, pivot=None, max_states=GR.DEFAULT_MAX_STATES):
    if genus < 1:
        raise UsageError("--genus must be at least 1")
    p = grp.checked_pivot(pivot)
    g = G.standard_graph(genus, boundaries)
    bi = GR.biinvariants(grp, g, "x", p, max_states)
    gens = {}
    for name, rel in sorted(M.generating_relabelings(genus, boundaries).items()):
        gens[name] = list(GR.induced_action(rel, bi))
    out = {"group": grp.name, "genus": genus, "boundaries": boundaries, "pivot": grp.names[p],
           "coinvariants": len(bi.coinv), "orbits": bi.count, "generators": gens}
    if boundaries == 0 and p == grp.identity:
        out["class_function_count"] = GR.class_function_count(grp, genus)
    return out


def cmd_biinv(args):
    out = biinv_report(_group(args.group), args.genus, args.boundaries, args.pivot, args.max_states)
    _emit(out, args.out)
    return 0


# ---------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="ribbonmcg", description="Mapping class group actions on ribbon graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(q):
        q.add_argument("--genus", type=int)
        q.add_argument("--boundaries", type=int, default=0)
        q.add_argument("--group", help="group name (Z3, D4, S3, V4, Q8) or JSON file")
        q.add_argument("--hopf", help="Hopf instance: sweedler4, a group name, or JSON file")
        q.add_argument("--pivot", help="central (grouplike) pivot; default trivial")
        q.add_argument("--max-states", type=int, default=GR.DEFAULT_MAX_STATES)
        q.add_argument("--max-dim", type=int, default=LI.DEFAULT_MAX_DIM)
        q.add_argument("--out", help="write JSON here")

    q = sub.add_parser("graph", help="build and inspect ribbon graphs")
    q.add_argument("action", choices=("new", "faces", "genus", "standardize"))
    q.add_argument("file", nargs="?")
    q.add_argument("--torus", action="store_true")
    common(q)

    q = sub.add_parser("act", help="run a script of slides and twists")
    q.add_argument("--graph")
    q.add_argument("--torus", action="store_true")
    q.add_argument("--script", default="")
    q.add_argument("--script-file")
    q.add_argument("--state", help="comma-separated labels in edge order")
    q.add_argument("--backend", choices=("symbolic", "group", "linear"), default="symbolic")
    common(q)

    q = sub.add_parser("verify", help="run a verification suite")
    q.add_argument("suite", choices=SUITES)
    q.add_argument("--backend", choices=("symbolic", "linear", "group"), default="symbolic")
    q.add_argument("--no-timings", action="store_true", help="omit timing fields from the JSON report")
    common(q)

    q = sub.add_parser("biinv", help="coinvariants and orbits for a finite group")
    common(q)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "biinv" and (args.group is None or args.genus is None):
        parser.error("biinv needs --group and --genus")
    handlers = {"graph": cmd_graph, "act": cmd_act, "verify": cmd_verify, "biinv": cmd_biinv}
    try:
        return handlers[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))
    except (V.PreconditionError, GR.PivotError, GR.BudgetExceeded, LI.DimensionBudget,
            GraphError, KeyError, ValueError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
