"""Command-line interface.

Every verb reads one JSON document (``-`` for stdin) and writes one
document (``-o -`` for stdout, the default), so verbs chain with pipes::

    graphtwistor generate cube | graphtwistor verify --mode holomorphic

Exit codes: 0 success, 1 verification failed, 2 usage or format error,
3 search budget exhausted.  Every output echoes the effective
configuration, seed included, under ``"config"``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import io
from .calculus import DEFAULT_TOL, differential, isotropy_residuals
from .dual import dual_function, pull_back_dual, verify_clique_condition
from .gaussian import magnitude
from .generators import FAMILIES, GraphData, generate
from .graph import RecognitionBudgetError, line_graph, proper_edge_coloring, recognize_line_graph
from .holomorphy import LatticeOverflowError, holomorphy_residuals, lattice_extend
from .solver import SolveConfig, solve_holomorphic, solve_isotropic
from .spinor import (DegenerateVertexError, direction_field, sign_search,
                     spinor_field, xi_field)

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

GRAPH_OUTPUT_VERBS = ("generate", "color", "export", "linegraph", "rootgraph")


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", default="-", help="output path, - for stdout")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common.add_argument("--exact", action="store_true",
                        help="force Gaussian-rational arithmetic")
    common.add_argument("--seed", type=int, default=None,
                        help="64-bit seed (default: $DT_SEED, else 0)")
    common.add_argument("--restarts", type=int, default=None)
    common.add_argument("--format", choices=("json", "dot"), default="json")
    common.add_argument("--steps", type=int, default=1)
    common.add_argument("--colors", type=int, default=None)

    p = argparse.ArgumentParser(prog="graphtwistor",
                                description="Holomorphic functions, isotropic forms and line graphs.")
    sub = p.add_subparsers(dest="verb", required=True)

    def add(name, help, with_input=True):
        sp = sub.add_parser(name, parents=[common], help=help)
        if with_input:
            sp.add_argument("input", nargs="?", default="-")
        return sp

    g = add("generate", "build a named graph family", with_input=False)
    g.add_argument("family", choices=FAMILIES)
    g.add_argument("--n", type=int)
    g.add_argument("--dims", help="lattice window shape, e.g. 5,4")
    g.add_argument("--rows", help="JSON file with g0, g1 (and optional branches) for lattice_window")

    v = add("verify", "check holomorphy, isotropy or the clique condition")
    v.add_argument("--mode", choices=("holomorphic", "isotropic", "clique"), default="holomorphic")

    s = add("solve", "search for holomorphic functions or isotropic 1-forms")
    s.add_argument("--kind", choices=("holomorphic", "isotropic"), default="holomorphic")
    s.add_argument("--config", help="JSON file of solver options")
    s.add_argument("--workers", type=int, default=1)

    add("linegraph", "line graph with its vertex cliques")
    add("rootgraph", "recognize a line graph and recover its root")
    d = add("dual", "dual function on the line graph (or back with --inverse)")
    d.add_argument("--inverse", action="store_true")
    add("spinor", "xi triples, spinors and directions on a coloured cubic graph")
    add("evolve", "iterate the evolution equation with sign search")
    add("color", "proper edge colouring by backtracking")
    add("export", "re-emit a graph document as JSON or DOT")
    return p


def _seed(args) -> int:
    if args.seed is not None:
        seed = args.seed
    else:
        env = os.environ.get("DT_SEED")
        try:
            seed = int(env) if env not in (None, "") else 0
        except ValueError:
            raise UsageError(f"DT_SEED={env!r} is not an integer") from None
    if not 0 <= seed < 2 ** 64:
        raise UsageError("seed must be an unsigned 64-bit integer")
    return seed


def _read(path: str):
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return io.loads(text)


def _write(path: str, text: str):
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _config(args, seed: int, **extra) -> dict:
    cfg = {"verb": args.verb, "tol": args.tol, "exact": args.exact, "seed": seed}
    cfg.update(extra)
    return cfg


def _graph_data(doc, args) -> GraphData:
    return io.read_graph_document(doc, exact=True if args.exact else None)


def _form_from(doc, data: GraphData, args):
    if isinstance(doc, dict) and "form" in doc:
        return io.read_form(doc, data.graph, exact=True if args.exact else None)
    if data.values is None:
        raise UsageError("document has neither \"values\" nor \"form\"")
    return differential(data.values)


def _coloring_for(data: GraphData):
    if data.coloring is not None:
        return data.coloring
    return proper_edge_coloring(data.graph, 3)


def _residual_report(res, tol) -> dict:
    worst = max(res.graph.vertices, key=lambda x: magnitude(res[x]), default=None)
    ok = res.all_zero(0.0 if res.exact else tol)
    return {
        "ok": ok,
        "exact": res.exact,
        "worst_vertex": worst,
        "worst_residual": io.encode_value(res[worst]) if worst is not None else None,
        "residuals": {x: io.encode_value(r) for x, r in res.items()},
    }


def _emit_graph(args, config, data: GraphData, extra: dict | None = None) -> str:
    if args.format == "dot":
        return "// config: " + json.dumps(config, sort_keys=False) + "\n" + \
            io.to_dot(data.graph, data.values, data.coloring)
    doc = {"config": config}
    doc.update(io.graph_document(data.graph, data.values, data.coloring))
    if extra:
        doc.update(extra)
    return io.dumps(doc)


# -- verbs -----------------------------------------------------------------------------


def cmd_generate(args, seed):
    params = {}
    if args.n is not None:
        params["n"] = args.n
    if args.dims is not None:
        try:
            params["dims"] = tuple(int(t) for t in args.dims.split(","))
        except ValueError:
            raise UsageError(f"--dims expects comma-separated integers, got {args.dims!r}") from None
    config = _config(args, seed, family=args.family,
                     params={k: list(v) if isinstance(v, tuple) else v for k, v in params.items()})
    data = generate(args.family, **params)
    if args.rows is not None:
        if args.family != "lattice_window":
            raise UsageError("--rows only applies to lattice_window")
        rows = _read(args.rows)
        if not isinstance(rows, dict) or "g0" not in rows or "g1" not in rows:
            raise UsageError("--rows file needs keys g0 and g1")
        g0 = _row_array(rows["g0"], "g0")
        g1 = _row_array(rows["g1"], "g1")
        branches = rows.get("branches")
        phi = lattice_extend(g0, g1, params["dims"], branches)
        data = GraphData(data.graph, phi)
        config["rows"] = rows
    return EXIT_OK, _emit_graph(args, config, data)


def _row_array(obj, where):
    def conv(o):
        if isinstance(o, list) and len(o) == 2 and all(isinstance(t, (int, float)) for t in o):
            return complex(o[0], o[1])
        if isinstance(o, list):
            return [conv(t) for t in o]
        raise io.DocumentError(where, f"expected nested arrays of [re, im], got {o!r}")
    return np.array(conv(obj), dtype=complex)


def cmd_verify(args, seed):
    doc = _read(args.input)
    config = _config(args, seed, mode=args.mode)
    if args.mode == "clique":
        psi = io.read_dual(doc, exact=True if args.exact else None)
        rep = verify_clique_condition(psi, args.tol)
        worst = max(rep.residuals, key=lambda x: magnitude(rep.residuals[x]), default=None)
        out = {"config": config, "mode": args.mode, "ok": rep.ok, "exact": rep.exact,
               "failing": list(rep.failing), "worst_vertex": worst,
               "residuals": {x: io.encode_value(r) for x, r in rep.residuals.items()}}
        return (EXIT_OK if rep.ok else EXIT_FAILED), io.dumps(out)
    data = _graph_data(doc, args)
    if args.mode == "holomorphic":
        if data.values is None:
            raise UsageError("holomorphic verification needs \"values\"")
        res = holomorphy_residuals(data.values)
    else:
        res = isotropy_residuals(_form_from(doc, data, args))
    out = {"config": config, "mode": args.mode}
    out.update(_residual_report(res, args.tol))
    return (EXIT_OK if out["ok"] else EXIT_FAILED), io.dumps(out)


def cmd_solve(args, seed):
    data = _graph_data(_read(args.input), args)
    opts = {}
    if args.config:
        opts = _read(args.config)
        if not isinstance(opts, dict):
            raise UsageError("solver config must be a JSON object")
    opts.setdefault("seed", seed)
    if args.seed is not None or "DT_SEED" in os.environ:
        opts["seed"] = seed
    if args.restarts is not None:
        opts["restarts"] = args.restarts
    if args.tol != DEFAULT_TOL or "target" not in opts:
        opts["target"] = args.tol
    opts["workers"] = args.workers
    try:
        cfg = SolveConfig.from_dict(opts)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    solve = solve_holomorphic if args.kind == "holomorphic" else solve_isotropic
    report = solve(data.graph, cfg)
    sols = []
    for s in report.solutions:
        entry = {"restart": s.restart, "residual": s.residual}
        if args.kind == "holomorphic":
            entry["values"] = {x: io.encode_value(v) for x, v in s.value.items()}
        else:
            entry.update(io.form_document(s.value))
        sols.append(entry)
    config = _config(args, cfg.seed, kind=args.kind, solver=cfg.to_dict())
    out = {"config": config, "kind": args.kind, "found": report.found, "message": report.message,
           "solutions": sols, "statuses": report.statuses, "classes": report.classes}
    return (EXIT_OK if report.found else EXIT_BUDGET), io.dumps(out)


def cmd_linegraph(args, seed):
    data = _graph_data(_read(args.input), args)
    line, corr = line_graph(data.graph)
    config = _config(args, seed)
    extra = {"root": io.graph_document(data.graph),
             "edge_to_vertex": io.correspondence_document(corr)["edge_to_vertex"],
             "cliques": {x: list(corr.clique_of[x]) for x in data.graph.vertices}}
    return EXIT_OK, _emit_graph(args, config, GraphData(line), extra)


def cmd_rootgraph(args, seed):
    data = _graph_data(_read(args.input), args)
    config = _config(args, seed)
    if not data.graph.is_connected():
        raise UsageError("rootgraph needs a connected graph")
    found = recognize_line_graph(data.graph)
    if found is None:
        return EXIT_FAILED, io.dumps({"config": config, "line_graph": False})
    root, corr = found
    extra = {"line_graph": True,
             "line": io.graph_document(data.graph),
             "edge_to_vertex": io.correspondence_document(corr)["edge_to_vertex"],
             "cliques": {x: list(corr.clique_of[x]) for x in root.vertices}}
    return EXIT_OK, _emit_graph(args, config, GraphData(root), extra)


def cmd_dual(args, seed):
    doc = _read(args.input)
    config = _config(args, seed, inverse=args.inverse)
    if args.inverse:
        psi = io.read_dual(doc, exact=True if args.exact else None)
        rep = verify_clique_condition(psi, args.tol)
        if not rep.ok:
            out = {"config": config, "ok": False, "failing": list(rep.failing)}
            return EXIT_FAILED, io.dumps(out)
        omega = pull_back_dual(psi, args.tol)
        out = {"config": config, "ok": True}
        out.update(io.graph_document(omega.graph))
        out.update(io.form_document(omega))
        return EXIT_OK, io.dumps(out)
    data = _graph_data(doc, args)
    omega = _form_from(doc, data, args)
    _, corr = line_graph(data.graph)
    psi = dual_function(omega, corr)
    rep = verify_clique_condition(psi, args.tol)
    out = {"config": config, "clique_ok": rep.ok}
    out.update(io.dual_document(psi))
    return EXIT_OK, io.dumps(out)


def cmd_spinor(args, seed):
    doc = _read(args.input)
    data = _graph_data(doc, args)
    omega = _form_from(doc, data, args)
    coloring = _coloring_for(data)
    config = _config(args, seed)
    if coloring is None:
        return EXIT_FAILED, io.dumps({"config": config, "ok": False,
                                      "error": "no proper 3-edge-colouring"})
    xis = xi_field(omega, coloring, args.tol)
    mus = spinor_field(xis)
    U = direction_field(xis)
    out = {"config": config, "ok": True,
           "xi": {x: [io.encode_value(c) for c in xi] for x, xi in xis.items()},
           "mu": {x: [io.encode_value(c) for c in mus[x]] for x in data.graph.vertices},
           "U": {x: [float(c) for c in U[x]] for x in data.graph.vertices}}
    return EXIT_OK, io.dumps(out)


def cmd_evolve(args, seed):
    data = _graph_data(_read(args.input), args)
    if data.values is None:
        raise UsageError("evolve needs \"values\"")
    if args.steps < 1:
        raise UsageError("--steps must be >= 1")
    coloring = _coloring_for(data)
    config = _config(args, seed, steps=args.steps)
    if coloring is None:
        return EXIT_FAILED, io.dumps({"config": config, "ok": False,
                                      "error": "no proper 3-edge-colouring"})
    phi = data.values.to_float()
    trace = [{"step": 0, "values": {x: io.encode_value(v) for x, v in phi.items()},
              "eps": None, "residual": 0.0, "consistent": True}]
    ok = True
    for n in range(1, args.steps + 1):
        try:
            U = direction_field(xi_field(differential(phi), coloring, args.tol))
        except ValueError as exc:
            # the previous step did not stay holomorphic
            trace.append({"step": n, "error": str(exc)})
            ok = False
            break
        found = sign_search(phi, U, coloring, tol=args.tol, seed=seed)
        res = found.result
        phi = res.values
        trace.append({"step": n, "values": {x: io.encode_value(v) for x, v in phi.items()},
                      "eps": found.eps, "residual": res.residual, "consistent": res.consistent,
                      "holomorphic_residual": res.holomorphic_residual})
        if not res.consistent:
            ok = False
            break
    return (EXIT_OK if ok else EXIT_FAILED), io.dumps({"config": config, "ok": ok, "trace": trace})


def cmd_color(args, seed):
    data = _graph_data(_read(args.input), args)
    m = args.colors if args.colors is not None else data.graph.max_degree()
    config = _config(args, seed, colors=m)
    col = proper_edge_coloring(data.graph, m)
    if col is None:
        return EXIT_FAILED, io.dumps({"config": config, "ok": False})
    return EXIT_OK, _emit_graph(args, config, GraphData(data.graph, data.values, col))


def cmd_export(args, seed):
    data = _graph_data(_read(args.input), args)
    return EXIT_OK, _emit_graph(args, _config(args, seed, format=args.format), data)


COMMANDS = {
    "generate": cmd_generate, "verify": cmd_verify, "solve": cmd_solve,
    "linegraph": cmd_linegraph, "rootgraph": cmd_rootgraph, "dual": cmd_dual,
    "spinor": cmd_spinor, "evolve": cmd_evolve, "color": cmd_color, "export": cmd_export,
}


def run(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.format == "dot" and args.verb not in GRAPH_OUTPUT_VERBS:
            raise UsageError(f"--format dot is not available for {args.verb}")
        if not args.tol > 0:
            raise UsageError("--tol must be positive")
        seed = _seed(args)
        code, text = COMMANDS[args.verb](args, seed)
    except (UsageError, io.DocumentError) as exc:
        print(f"graphtwistor {args.verb}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RecognitionBudgetError as exc:
        print(f"graphtwistor {args.verb}: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (DegenerateVertexError, LatticeOverflowError) as exc:
        print(f"graphtwistor {args.verb}: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except ValueError as exc:
        # library precondition failures (non-cubic graph, non-isotropic form, ...)
        print(f"graphtwistor {args.verb}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _write(args.output, text)
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
