"""``hypersteiner`` command line.

Subcommands::

    fs-solve INSTANCE                  Fermat-Steiner report
    net-solve [TOPOLOGY] INSTANCE      shortest network on a topology, or smt with --smt
    verify --suite NAME [INSTANCE]     property suite, random cases unless an instance is given
    render INSTANCE REPORT             SVG of a convex scene at the report's radius vector

Exit codes: 0 success, 1 verification failure, 2 input error.

SVG palette: boundary sets fill #9dc3e6 / stroke #1f4e79; offsets dashed
#7f7f7f, unfilled; K_d fill #f4b183 / stroke #c00000. Points are drawn as
small discs in the stroke colour.

``HYPERSTEINER_THREADS`` caps the worker threads used for smt.
"""

from __future__ import annotations

import argparse
import sys

from . import fermat_steiner as fs
from . import networks as nw
from .extended import fmt
from .io import (FS_REPORT_SCHEMA, NET_REPORT_SCHEMA, InputError, dumps, load_instance,
                 parse_topology, read_json, validate, write_atomic, _rational)
from .render import render_scene
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _emit(text: str, out):
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def _class_entry(inst, M, rep) -> dict:
    enc = inst.backend.encode
    far = {}
    for name, pts in zip(inst.names, rep.d_far):
        far[name] = list(pts) if inst.kind == "finite" else [[fmt(x), fmt(y)] for x, y in pts]
    entry = {
        "d": [fmt(x) for x in rep.d],
        "K_d": enc(rep.K_d),
        "minimal": None if rep.minimal_elements is None else [enc(X) for X in rep.minimal_elements],
        "one_sided": list(rep.one_sided_witnesses),
        "reverse": list(rep.reverse_witnesses),
        "d_far": far,
    }
    if rep.members is not None:
        entry["members"] = [enc(X) for X in rep.members]
    return entry


def cmd_fs_solve(args) -> int:
    inst = load_instance(args.instance, args.backend)
    try:
        M = fs.Boundary(inst.sets, inst.backend)
    except fs.InfeasibleBoundary as exc:
        raise InputError(f"instance.sets: {exc}") from None
    method = args.method or ("brute" if inst.kind == "finite" and inst.space.n <= fs.BRUTE_LIMIT
                             else "radius" if inst.kind == "finite" else "simplex")
    if inst.kind == "convex2d" and method == "brute":
        raise InputError("--method: brute needs the finite backend")
    if inst.kind == "finite" and method == "simplex":
        raise InputError("--method: simplex needs the convex2d backend")
    solver = {}
    if method == "brute":
        if inst.space.n > fs.BRUTE_LIMIT:
            raise InputError(f"--method: brute supports at most {fs.BRUTE_LIMIT} points")
        brute = fs.solve_bruteforce(M)
        value, omega = brute.value, brute.omega
        classes = [_class_entry(inst, M, fs.enumerate_class(M, d, brute)) for d in omega]
    else:
        budget = args.budget if args.budget is not None else 10_000
        sol = fs.solve_radius_search(M, seed=args.seed, max_evals=budget)
        value = sol.value
        omega = sorted({d for d, _ in sol.optima})
        if inst.kind == "finite" and inst.space.n <= fs.BRUTE_LIMIT:
            brute = fs.solve_bruteforce(M)
            classes = [_class_entry(inst, M, fs.enumerate_class(M, d, brute)) for d in omega]
        else:
            classes = [_class_entry(inst, M, fs.class_report(M, d)) for d in omega]
        if sol.report is not None:
            r = sol.report
            solver = {"source": r.source, "starts": r.starts, "evaluations": r.evaluations,
                      "converged": r.converged, "lp_certified": r.lp_certified,
                      "snapshot_within_tau": r.snapshot_gap <= fs.TAU}
    report = {
        "command": "fs-solve",
        "backend": inst.kind,
        "method": method,
        "seed": args.seed,
        "sets": list(inst.names),
        "value": fmt(value),
        "omega": [[fmt(x) for x in d] for d in omega],
        "classes": classes,
    }
    if solver:
        report["solver"] = solver
    _emit(dumps(validate(report, FS_REPORT_SCHEMA)), args.out)
    return EXIT_OK


def _network_json(inst, g: nw.Network) -> dict:
    def name(S):
        return next(n for n, T in zip(inst.names, inst.sets) if T == S)

    G = g.graph
    return {
        "vertices": list(G.vertices),
        "edges": [[u, v] for u, v in G.edges],
        "boundary": {v: name(G.boundary[v]) for v in G.boundary_vertices},
        "images": {v: inst.backend.encode(g.image(v)) for v in G.vertices},
    }


def cmd_net_solve(args) -> int:
    paths = args.paths
    if args.smt:
        if len(paths) != 1:
            raise InputError("net-solve --smt takes exactly one instance path")
        inst = load_instance(paths[0], args.backend)
        if not 2 <= len(inst.sets) <= 6:
            raise InputError("instance.sets: smt needs 2..6 boundary sets")
        try:
            nw.BoundaryGraph([f"v{i}" for i in range(len(inst.sets))],
                             [(f"v{i}", f"v{i + 1}") for i in range(len(inst.sets) - 1)],
                             {f"v{i}": S for i, S in enumerate(inst.sets)})
        except nw.GraphError as exc:
            raise InputError(f"instance.sets: {exc}") from None
        tops = nw.enumerate_topologies(len(inst.sets))
        res = nw.smt_solve(inst.sets, inst.backend, topologies=tops, seed=args.seed)
        report = {
            "command": "net-solve", "backend": inst.kind, "mode": "smt", "seed": args.seed,
            "value": fmt(res.value), "exact": res.exact,
            "method": "enumerate-topologies",
            "topologies": len(tops),
            "optimal_topologies": [i for i, _ in res.optima],
            "network": _network_json(inst, res.network),
        }
    else:
        if len(paths) != 2:
            raise InputError("net-solve takes TOPOLOGY INSTANCE (or --smt INSTANCE)")
        inst = load_instance(paths[1], args.backend)
        G = parse_topology(read_json(paths[0]), inst)
        res = nw.mpn_solve(G, inst.backend, seed=args.seed,
                           max_sweeps=args.budget if args.budget is not None else 50)
        report = {
            "command": "net-solve", "backend": inst.kind, "mode": "mpn", "seed": args.seed,
            "value": fmt(res.value), "exact": res.exact, "method": res.method,
            "network": _network_json(inst, res.network),
        }
        if res.report:
            report["report"] = dict(res.report)
    _emit(dumps(validate(report, NET_REPORT_SCHEMA)), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = load_instance(args.instance, args.backend) if args.instance else None
    try:
        res = run_suite(args.suite, args.backend, args.seed, args.budget, inst)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit(dumps(res.report()), args.out)
    for name, p in sorted(res.properties.items()):
        mark = "obs" if res.observational else ("ok" if p["failed"] == 0 else "FAIL")
        print(f"{mark:4s} {name}: {p['checked']} checked, {p['failed']} failed", file=sys.stderr)
    if res.counterexample and not res.observational:
        print(f"first counterexample: {res.counterexample}", file=sys.stderr)
    return EXIT_OK if res.passed else EXIT_FAIL


def cmd_render(args) -> int:
    inst = load_instance(args.instance)
    if inst.kind != "convex2d":
        raise InputError("render: needs a convex2d scene")
    report = read_json(args.report)
    try:
        d_raw = report["classes"][0]["d"]
    except (KeyError, IndexError, TypeError):
        raise InputError("report.classes[0].d: missing") from None
    if not isinstance(d_raw, list) or len(d_raw) != len(inst.sets):
        raise InputError(f"report.classes[0].d: expected {len(inst.sets)} radii")
    d = [_rational(x, f"report.classes[0].d[{i}]") for i, x in enumerate(d_raw)]
    _emit(render_scene(inst.sets, inst.norm, d, inst.names), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--backend", choices=["finite", "convex2d"])
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int,
                        help="evaluation cap (fs-solve), sweep cap (net-solve), case count (verify)")
    common.add_argument("--out", help="output file, written atomically; stdout if omitted")

    p = argparse.ArgumentParser(prog="hypersteiner", description="Fermat-Steiner problems in hyperspaces")
    sub = p.add_subparsers(dest="command", required=True)
    fsp = sub.add_parser("fs-solve", parents=[common])
    fsp.add_argument("instance")
    fsp.add_argument("--method", choices=["brute", "radius", "simplex"])
    fsp.set_defaults(func=cmd_fs_solve)

    net = sub.add_parser("net-solve", parents=[common])
    net.add_argument("paths", nargs="+", metavar="PATH")
    net.add_argument("--smt", action="store_true")
    net.set_defaults(func=cmd_net_solve)

    ver = sub.add_parser("verify", parents=[common])
    ver.add_argument("--suite", required=True, choices=sorted(SUITES))
    ver.add_argument("instance", nargs="?")
    ver.set_defaults(func=cmd_verify)

    ren = sub.add_parser("render", parents=[common])
    ren.add_argument("instance")
    ren.add_argument("report")
    ren.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
