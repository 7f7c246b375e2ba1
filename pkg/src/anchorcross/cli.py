"""Command-line front end.

Subcommands: gen frame|sat|compose, transform almost-planar,
solve exact|anchored|pp-special|decide, verify pp|frame|thm21|drawing,
render, eval gamma|gamma-plus|shift.

Results go to stdout as a JSON envelope; human-readable logging goes to
stderr (verbosity via the XNUM_LOG environment variable).  Exit codes:
0 success, 1 domain failure (invalid instance, or a solver budget that
ends in an honest "unknown"), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import cmgadget, frame as frame_mod, gio, render, transform
from .graph import PPInstance, AnchoredInstance, validate_pp
from .omega import OmegaPoly
from .solver import (anchored_crossing_number_exact, crossing_number_exact,
                     decide_crossing_le, drawing_weight, pp_special_case,
                     verify_drawing)


def _log(msg: str) -> None:
    if os.environ.get("XNUM_LOG", "1") != "0":
        print(msg, file=sys.stderr)


def _poly_json(p: OmegaPoly):
    return {"terms": gio.poly_to_terms(p), "text": repr(p)}


def _emit(payload: dict, code: int = 0) -> int:
    print(json.dumps(payload, indent=1, sort_keys=True, default=str))
    return code


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_instance(path: str):
    obj = gio.parse_graph(_read(path))
    return obj


def _omega_arg(text: str):
    return "symbolic" if text == "symbolic" else int(text)


def cmd_gen(args) -> int:
    if args.what == "frame":
        fr = frame_mod.build_frame(frame_mod.FrameParams(args.k,
                                                         _omega_arg(args.omega)))
        doc = gio.serialize_graph(fr.instance,
                                  planarization=frame_mod.normal_drawing(fr),
                                  features=fr.features)
        _write_out(args.out, doc)
        report = frame_mod.counting_report(fr)
        return _emit({"kind": "frame", "k": args.k,
                      "gamma": _poly_json(frame_mod.gamma(args.k)),
                      "gamma_plus": _poly_json(frame_mod.gamma_plus(args.k)),
                      "normal_drawing_weight": _poly_json(report["normal_weight"]),
                      "residue": _poly_json(report["residue"]),
                      "crossings": report["crossings"],
                      "out": args.out})
    if args.what == "sat":
        phi = gio.parse_dimacs(_read(args.cnf))
        w = OmegaPoly.omega(4) if args.w == "omega4" else OmegaPoly.const(int(args.w))
        ci = cmgadget.build_cm_instance(phi, w, k=args.k)
        doc = gio.serialize_graph(ci.instance, features=ci.features)
        _write_out(args.out, doc)
        rep = cmgadget.theorem21_check(ci)
        return _emit({"kind": "sat-instance", "k": ci.k,
                      "violations": rep.violations, "out": args.out},
                     0 if rep.ok else 1)
    if args.what == "compose":
        phi = gio.parse_dimacs(_read(args.cnf))
        ci = cmgadget.build_cm_instance(phi, OmegaPoly.omega(4), k=args.k)
        comp = cmgadget.compose_with_frame(
            ci, identify_r0_b0=args.identify_r0_b0)
        doc = gio.serialize_graph(comp.instance,
                                  planarization=cmgadget.pasted_drawing(comp))
        _write_out(args.out, doc)
        return _emit({"kind": "composed", "k": ci.k,
                      "anchors": list(comp.instance.anchors),
                      "certificate_offset": _poly_json(comp.certificate_offset),
                      "out": args.out})
    raise AssertionError


def cmd_transform(args) -> int:
    inst = _load_instance(args.infile)
    if not isinstance(inst, PPInstance):
        _log("input is not a two-part anchored instance")
        return 1
    m = None if args.m == "default" else int(args.m)
    h = None if args.h == "default" else int(args.h)
    try:
        api = transform.almost_planar_instance(inst, m=m, h=h,
                                               scaled=args.scaled)
    except ValueError as exc:
        _log(str(exc))
        return 1
    doc = gio.serialize_graph(api.graph)
    _write_out(args.out, doc)
    degs = sorted(v for v in api.graph.vertices
                  if api.graph.degree(v) > 3)
    return _emit({"kind": "almost-planar", "u": api.u, "v": api.v,
                  "m": api.m, "h": api.h, "scaled": api.scaled,
                  "vertices": len(api.graph.vertices),
                  "edges": len(api.graph.edges),
                  "high_degree_vertices": degs, "out": args.out})


def _solver_budget_args(args):
    return {"node_cap": args.node_cap, "time_cap": args.time_cap}


def cmd_solve(args) -> int:
    inst = _load_instance(args.infile)
    if args.what == "pp-special":
        if not isinstance(inst, PPInstance):
            _log("pp-special needs a two-part instance")
            return 1
        value = pp_special_case(inst)
        if value is None:
            return _emit({"status": "hard-regime", "value": None}, 0)
        return _emit({"status": "closed-form", "value": _poly_json(value)})
    if args.what == "anchored":
        if isinstance(inst, PPInstance):
            inst = inst.base
        if not isinstance(inst, AnchoredInstance):
            _log("anchored solve needs anchors")
            return 1
        res = anchored_crossing_number_exact(inst, **_solver_budget_args(args))
    elif args.what == "exact":
        g = getattr(inst, "graph", inst)
        res = crossing_number_exact(g, **_solver_budget_args(args))
    else:  # decide
        g = getattr(inst, "graph", inst)
        if isinstance(inst, (PPInstance, AnchoredInstance)):
            from .planarity import augment_anchored
            base = inst.base if isinstance(inst, PPInstance) else inst
            g = augment_anchored(base)
        ok = decide_crossing_le(g, args.k, **_solver_budget_args(args))
        return _emit({"status": "decided", "at_most": args.k, "answer": ok})
    payload = {"status": res.status,
               "nodes": res.stats.nodes,
               "planarity_checks": res.stats.planarity_checks,
               "elapsed": round(res.stats.elapsed, 3)}
    if res.status == "optimal":
        payload["value"] = _poly_json(res.value)
        payload["crossings"] = res.witness.crossing_count()
        return _emit(payload)
    return _emit(payload, 1)


def cmd_verify(args) -> int:
    if args.what == "pp":
        inst = _load_instance(args.infile)
        if not isinstance(inst, PPInstance):
            _log("verify pp needs a two-part instance")
            return 1
        rep = validate_pp(inst)
        return _emit({"valid": rep.valid, "violations": rep.violations},
                     0 if rep.valid else 1)
    if args.what == "frame":
        fr = frame_mod.build_frame(frame_mod.FrameParams(args.k))
        report = frame_mod.counting_report(fr)
        nd = frame_mod.normal_drawing(fr)
        ok = verify_drawing(fr.graph, nd)
        pp_ok = validate_pp(fr.instance).valid
        clean = ok and pp_ok and not report["unexplained"]
        return _emit({"k": args.k, "drawing_ok": ok, "pp_ok": pp_ok,
                      "residue": _poly_json(report["residue"]),
                      "unexplained": {str(e): str(c) for e, c in
                                      report["unexplained"].items()}},
                     0 if clean else 1)
    if args.what == "thm21":
        phi = gio.parse_dimacs(_read(args.cnf))
        w = OmegaPoly.omega(4) if args.w == "omega4" else OmegaPoly.const(int(args.w))
        ci = cmgadget.build_cm_instance(phi, w, k=args.k)
        rep = cmgadget.theorem21_check(ci)
        return _emit({"violations": rep.violations, "ok": rep.ok},
                     0 if rep.ok else 1)
    if args.what == "drawing":
        text = _read(args.infile)
        inst = gio.parse_graph(text)
        g = getattr(inst, "graph", inst)
        p = gio.parse_planarization(text)
        if p is None:
            _log("no planarization block in the file")
            return 1
        ok = verify_drawing(g, p)
        payload = {"valid": ok}
        if ok:
            payload["weight"] = _poly_json(drawing_weight(g, p))
        return _emit(payload, 0 if ok else 1)
    raise AssertionError


def cmd_render(args) -> int:
    inst = _load_instance(args.infile)
    g = getattr(inst, "graph", inst)
    out = render.to_dot(g) if args.format == "dot" else render.to_svg(g)
    _write_out(args.out, out)
    return _emit({"format": args.format, "out": args.out})


def cmd_eval(args) -> int:
    if args.what == "gamma":
        return _emit({"k": args.k, "gamma": _poly_json(frame_mod.gamma(args.k))})
    if args.what == "gamma-plus":
        return _emit({"k": args.k,
                      "gamma_plus": _poly_json(frame_mod.gamma_plus(args.k))})
    if args.what == "shift":
        w = OmegaPoly.omega(4) if args.w == "omega4" else OmegaPoly.const(int(args.w))
        return _emit({"k": args.k,
                      "shift": _poly_json(cmgadget.shift_constant(args.k, w))})
    raise AssertionError


def _write_out(path, text: str) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stderr.write(text)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="anchorcross")
    ap.add_argument("--threads", type=int, default=1,
                    help="solver worker cap (the search is deterministic and "
                         "currently single-threaded)")
    sub = ap.add_subparsers(dest="cmd", required=True)

    gen = sub.add_parser("gen")
    gsub = gen.add_subparsers(dest="what", required=True)
    gf = gsub.add_parser("frame")
    gf.add_argument("--k", type=int, required=True)
    gf.add_argument("--omega", default="symbolic")
    gf.add_argument("--out", default=None)
    gs = gsub.add_parser("sat")
    gs.add_argument("--cnf", required=True)
    gs.add_argument("--w", default="omega4")
    gs.add_argument("--k", type=int, default=None)
    gs.add_argument("--out", default=None)
    gc = gsub.add_parser("compose")
    gc.add_argument("--cnf", required=True)
    gc.add_argument("--k", type=int, default=None)
    gc.add_argument("--identify-r0-b0", action="store_true")
    gc.add_argument("--out", default=None)
    gen.set_defaults(func=cmd_gen)

    tr = sub.add_parser("transform")
    tsub = tr.add_subparsers(dest="what", required=True)
    ta = tsub.add_parser("almost-planar")
    ta.add_argument("--in", dest="infile", required=True)
    ta.add_argument("--m", default="default")
    ta.add_argument("--h", default="default")
    ta.add_argument("--scaled", action="store_true")
    ta.add_argument("--out", default=None)
    tr.set_defaults(func=cmd_transform)

    so = sub.add_parser("solve")
    ssub = so.add_subparsers(dest="what", required=True)
    for name in ("exact", "anchored", "pp-special", "decide"):
        sp = ssub.add_parser(name)
        sp.add_argument("--in", dest="infile", required=True)
        sp.add_argument("--node-cap", type=int, default=None)
        sp.add_argument("--time-cap", type=float, default=None)
        if name == "decide":
            sp.add_argument("--k", type=int, required=True)
    so.set_defaults(func=cmd_solve)

    ve = sub.add_parser("verify")
    vsub = ve.add_subparsers(dest="what", required=True)
    vp = vsub.add_parser("pp")
    vp.add_argument("--in", dest="infile", required=True)
    vf = vsub.add_parser("frame")
    vf.add_argument("--k", type=int, required=True)
    vf.add_argument("--in", dest="infile", default=None)
    vt = vsub.add_parser("thm21")
    vt.add_argument("--cnf", required=True)
    vt.add_argument("--w", default="omega4")
    vt.add_argument("--k", type=int, default=None)
    vd = vsub.add_parser("drawing")
    vd.add_argument("--in", dest="infile", required=True)
    ve.set_defaults(func=cmd_verify)

    re = sub.add_parser("render")
    re.add_argument("--in", dest="infile", required=True)
    re.add_argument("--format", choices=("dot", "svg"), default="dot")
    re.add_argument("--seed", type=int, default=0)
    re.add_argument("--out", default=None)
    re.set_defaults(func=cmd_render)

    ev = sub.add_parser("eval")
    esub = ev.add_subparsers(dest="what", required=True)
    for name in ("gamma", "gamma-plus", "shift"):
        ep = esub.add_parser(name)
        ep.add_argument("--k", type=int, required=True)
        if name == "shift":
            ep.add_argument("--w", default="omega4")
    ev.set_defaults(func=cmd_eval)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (gio.ParseError, FileNotFoundError, ValueError) as exc:
        _log("error: %s" % exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
