"""Command-line interface: ``baryspec {gen,refine,spectrum,check,converge,fvector}``.

Exit codes: 0 success, 1 a check failed, 2 usage or input error, 3 a size
cap would be exceeded. Caps and seed resolve as flag > ``BARYSPEC_*``
environment variable > built-in default.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from baryspec import barycentric, counting, graph, operators, spectral
from baryspec.complex import (
    DEFAULT_MAX_SIMPLICES,
    build_complex,
    check_gauss_bonnet,
    check_handshake,
    curvature_csv,
    euler_characteristic,
)
from baryspec.errors import CapacityError, GraphError, NumericError
from baryspec.plot import line_plot, step_points

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3

SUITES = ("euler", "gaussbonnet", "handshake", "dd", "dirac", "schur", "grone", "mckean", "susy",
          "lidskii", "renorm", "betti")
GRAPHLESS = {"lidskii", "renorm"}
MCKEAN_TIMES = (0.0, 0.5, 1.0, 5.0)
LIDSKII_SIZES = (4, 6, 8, 12)


class UsageError(Exception):
    pass


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"environment variable {name}={raw!r} is not an integer") from None


def resolve_config(args: argparse.Namespace) -> dict:
    cfg = {k: v for k, v in sorted(vars(args).items()) if k != "func"}
    cfg["max_complex"] = args.max_complex if args.max_complex is not None else _env_int(
        "BARYSPEC_MAX_COMPLEX", DEFAULT_MAX_SIMPLICES)
    cfg["max_eig"] = args.max_eig if args.max_eig is not None else _env_int(
        "BARYSPEC_MAX_EIG", operators.DEFAULT_MAX_EIG)
    cfg["seed"] = args.seed if args.seed is not None else _env_int("BARYSPEC_SEED", 0)
    return cfg


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        return f if math.isfinite(f) else None
    return obj


def dump_json(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n"


def stamp(cfg: dict) -> str:
    return "# baryspec " + json.dumps(_jsonable(cfg), sort_keys=True, separators=(",", ":")) + "\n"


def emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


# ---------------------------------------------------------------------------
# graph input

def _family_params(args) -> dict:
    return {k: getattr(args, k) for k in ("k", "n", "p", "q") if getattr(args, k, None) is not None}


def load_input(args) -> graph.SimpleGraph:
    if args.input and args.family:
        raise UsageError("give either --in or --family, not both")
    if args.input:
        try:
            return graph.load(args.input)
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc}") from None
    if args.family:
        return graph.generate(args.family, **_family_params(args))
    raise UsageError("a graph is required: use --in PATH or --family NAME")


def _add_graph_source(p: argparse.ArgumentParser, required_family: bool = False) -> None:
    g = p.add_argument_group("graph source")
    g.add_argument("--in", dest="input", metavar="PATH", help="Graph JSON or edge-list file")
    g.add_argument("--family", choices=graph.FAMILIES, required=required_family)
    g.add_argument("--k", type=int, help="complete graph size")
    g.add_argument("--n", type=int, help="cycle/wheel size (also the renorm size for check)")
    g.add_argument("--p", type=int, help="torus rows")
    g.add_argument("--q", type=int, help="torus columns")


def _add_caps(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-complex", type=int, help="cap on clique complex size [BARYSPEC_MAX_COMPLEX]")
    p.add_argument("--max-eig", type=int, help="cap on dense eigensolve size [BARYSPEC_MAX_EIG]")
    p.add_argument("--seed", type=int, help="seed for randomized checks [BARYSPEC_SEED]")


def _refined(g: graph.SimpleGraph, levels: int, cfg: dict) -> graph.SimpleGraph:
    return barycentric.refine_iter(g, levels, cfg["max_complex"]).graph if levels else g


# ---------------------------------------------------------------------------
# commands

def cmd_gen(args, cfg) -> int:
    g = graph.generate(args.family, **_family_params(args))
    emit(graph.dumps(g), args.out)
    return EXIT_OK


def cmd_refine(args, cfg) -> int:
    g = load_input(args)
    r = barycentric.refine_iter(g, args.levels, cfg["max_complex"])
    emit(barycentric.dumps(r), args.out)
    if args.fvector_out:
        traj = barycentric.projected_fvectors(g, args.levels, cfg["max_complex"])
        final = build_complex(r.graph, cfg["max_complex"]).f_vector
        if final != traj[-1]:
            raise NumericError(f"refined f-vector {final} differs from prediction {traj[-1]}")
        width = max(len(f) for f in traj)
        lines = [",".join(["level"] + [f"v{k}" for k in range(width)])]
        lines += [",".join(map(str, [m, *f])) for m, f in enumerate(traj)]
        emit(stamp(cfg) + "\n".join(lines) + "\n", args.fvector_out)
    return EXIT_OK


def _operator_for(c, name: str) -> operators.OperatorMatrix:
    if name == "scalar":
        return operators.scalar_laplacian(c.host)
    if name == "dirac":
        return operators.dirac(c)
    if name.startswith("hodge:"):
        try:
            k = int(name.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad operator {name!r}; expected hodge:<k>") from None
        return operators.hodge_laplacian(c, k)
    raise UsageError(f"unknown operator {name!r}; use scalar, hodge:<k> or dirac")


def cmd_spectrum(args, cfg) -> int:
    g = _refined(load_input(args), args.levels, cfg)
    c = build_complex(g, cfg["max_complex"])
    op = _operator_for(c, args.operator)
    if args.matrix_out:
        emit(operators.matrix_market(op), args.matrix_out)
    spec = operators.eigenvalues(op, cfg["max_eig"])
    emit(stamp(cfg) + operators.spectrum_csv(spec), args.out)
    return EXIT_OK


def _random_symmetric(rng: np.random.Generator, size: int) -> np.ndarray:
    x = rng.standard_normal((size, size))
    return (x + x.T) / 2


def run_checks(g: graph.SimpleGraph | None, suites: list[str], cfg: dict) -> dict:
    """Run the selected identity checks; every entry carries an ``ok`` flag."""
    out: dict[str, dict] = {}
    caps = (cfg["max_complex"], cfg["max_eig"])
    c = build_complex(g, caps[0]) if g is not None else None
    spectra = None

    def hodge():
        nonlocal spectra
        if spectra is None:
            spectra = operators.hodge_spectra(c, caps[1])
        return spectra

    for suite in suites:
        if suite == "euler":
            r = barycentric.refine(g, caps[0])
            c1 = build_complex(r.graph, caps[0])
            predicted = counting.step(c.f_vector)
            out[suite] = {"chi": euler_characteristic(c), "chi_refined": euler_characteristic(c1),
                          "f_refined": c1.f_vector, "f_predicted": predicted,
                          "ok": euler_characteristic(c) == euler_characteristic(c1) and c1.f_vector == predicted}
        elif suite == "gaussbonnet":
            out[suite] = check_gauss_bonnet(c)
        elif suite == "handshake":
            reps = [check_handshake(c, k) for k in range(max(c.dim, 0) + 1)]
            out[suite] = {"per_k": reps, "ok": all(r["ok"] for r in reps)}
        elif suite == "dd":
            out[suite] = operators.check_dd_zero(c)
        elif suite == "dirac":
            blocks = operators.check_dirac_blocks(c)
            specs = spectral.check_dirac_spectrum(c, hodge(), max_size=caps[1])
            out[suite] = {"blocks_exact": blocks["ok"], "spectral_error": specs["max_error"],
                          "ok": blocks["ok"] and specs["ok"]}
        elif suite in ("schur", "grone"):
            rep = spectral.check_schur_grone(g, operators.eigenvalues(operators.scalar_laplacian(g), caps[1]))
            if suite == "schur":
                out[suite] = {"margin": rep["schur_margin"], "trace_gap": rep["trace_gap"], "ok": rep["schur_ok"]}
            else:
                out[suite] = {"margin": rep["grone_margin"], "applicable": rep["grone_ok"] is not None,
                              "ok": rep["grone_ok"] is not False}
        elif suite == "mckean":
            out[suite] = spectral.mckean_singer(c, MCKEAN_TIMES, spectra=hodge())
        elif suite == "susy":
            out[suite] = spectral.check_supersymmetry(hodge())
        elif suite == "betti":
            try:
                b = operators.betti_numbers(c, spectra=hodge())
                out[suite] = {"betti": b, "chi": euler_characteristic(c), "ok": True}
            except NumericError as exc:
                out[suite] = {"error": str(exc), "ok": False}
        elif suite == "lidskii":
            rng = np.random.default_rng(cfg["seed"])
            worst = -math.inf
            ok = True
            for size in LIDSKII_SIZES:
                for _ in range(cfg.get("trials") or 100):
                    rep = spectral.lidskii_bound(_random_symmetric(rng, size), _random_symmetric(rng, size))
                    ok &= rep["ok"]
                    worst = max(worst, rep["lhs"] - rep["rhs"])
            out[suite] = {"sizes": LIDSKII_SIZES, "trials": cfg.get("trials") or 100,
                          "max_lhs_minus_rhs": worst, "ok": ok}
        elif suite == "renorm":
            n = cfg.get("n") or 8
            out[suite] = spectral.check_renormalization_d1(n)
    return out


def cmd_check(args, cfg) -> int:
    suites = list(SUITES) if args.suite == "all" else [args.suite]
    needs_graph = any(s not in GRAPHLESS for s in suites)
    g = _refined(load_input(args), args.levels, cfg) if needs_graph else None
    if g is not None and g.n == 0:
        raise UsageError("checks need a nonempty graph")
    results = run_checks(g, suites, cfg)
    failed = [name for name, r in results.items() if not r["ok"]]
    report = {"config": cfg, "checks": results, "failed": failed, "ok": not failed}
    emit(dump_json(report), args.out)
    for name in failed:
        print(f"check failed: {name}", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


def _parse_compare(spec: str) -> tuple[str, graph.SimpleGraph, int]:
    """``family[,key=val...]@depth``, e.g. ``torus,p=4,q=4@3``."""
    try:
        head, depth = spec.rsplit("@", 1)
        family, *kv = head.split(",")
        params = {k: int(v) for k, v in (item.split("=") for item in kv)}
        return head, graph.generate(family, **params), int(depth)
    except ValueError as exc:
        raise UsageError(f"bad --compare {spec!r}: {exc}") from None


def cmd_converge(args, cfg) -> int:
    a, b = args.interval
    if args.compare:
        return _converge_compare(args, cfg, a, b)
    g = load_input(args)
    c = build_complex(g, cfg["max_complex"])
    limit = spectral.limit_curve_d1 if c.dim == 1 else None
    rep = spectral.convergence_experiment(g, args.depth, (a, b), cfg["max_complex"], cfg["max_eig"], limit)
    header = stamp(cfg)
    if args.json:
        body = rep.to_dict()
        body["config"] = cfg
        emit(dump_json(body), args.json)
    if args.svg:
        series = []
        for stats, p in zip(rep.levels, rep.profiles):
            xs, ys = step_points(p.values)
            series.append((f"m={stats.level} (n={p.n})", xs, ys))
        if limit is not None:
            xs = np.linspace(0, 1, 401)
            series.append(("4 sin^2(pi x/2)", xs, limit(xs)))
        emit(line_plot(series, title="Spectral functions of barycentric refinements",
                       comment=header.strip()), args.svg)
    if args.csv or not (args.json or args.svg):
        emit(header + rep.to_csv(), args.csv)
    return EXIT_OK


def _converge_compare(args, cfg, a, b) -> int:
    runs = [_parse_compare(s) for s in args.compare]
    now, before = {}, {}
    for name, g, depth in runs:
        if depth < 1:
            raise UsageError("--compare depths must be >= 1")
        size = barycentric.projected_fvectors(g, depth, cfg["max_complex"])[-1][0]
        cap = min(cfg["max_complex"], cfg["max_eig"])
        if size > cap:
            raise CapacityError(f"vertex count of {name} at depth {depth}", size, cap)
        rep = spectral.convergence_experiment(g, depth, (a, b), cfg["max_complex"], cfg["max_eig"])
        now[name], before[name] = rep.profiles[-1], rep.profiles[-2]
    d_now = spectral.pairwise_sup_distances(now, a, b)
    d_before = spectral.pairwise_sup_distances(before, a, b)
    shrinking = all(d_now[k] < d_before[k] for k in d_now)
    report = {"config": cfg, "interval": [a, b], "sup_distances": d_now,
              "sup_distances_previous_level": d_before, "shrinking": shrinking}
    emit(dump_json(report), args.json)
    if args.svg:
        series = [(name, *step_points(p.values)) for name, p in sorted(now.items())]
        emit(line_plot(series, title="Spectral functions across starting graphs",
                       comment=stamp(cfg).strip()), args.svg)
    return EXIT_OK


def cmd_fvector(args, cfg) -> int:
    g = load_input(args)
    f0 = build_complex(g, cfg["max_complex"]).f_vector
    emit(stamp(cfg) + counting.fvector_csv(f0, args.depth), args.out)
    if args.curvature_out:
        emit(stamp(cfg) + curvature_csv(build_complex(g, cfg["max_complex"])), args.curvature_out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="baryspec", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a named graph as Graph JSON")
    p.add_argument("--family", choices=graph.FAMILIES, required=True)
    for flag in ("k", "n", "p", "q"):
        p.add_argument(f"--{flag}", type=int)
    p.add_argument("--out")
    _add_caps(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("refine", help="iterate barycentric refinement")
    _add_graph_source(p)
    p.add_argument("--levels", type=int, default=1)
    p.add_argument("--out", help="refined Graph JSON (with parents, level)")
    p.add_argument("--fvector-out", help="CSV of f-vectors per level")
    _add_caps(p)
    p.set_defaults(func=cmd_refine)

    p = sub.add_parser("spectrum", help="eigenvalues of an operator")
    _add_graph_source(p)
    p.add_argument("--levels", type=int, default=0, help="refine this many times first")
    p.add_argument("--operator", default="scalar", help="scalar | hodge:<k> | dirac")
    p.add_argument("--out")
    p.add_argument("--matrix-out", help="also write the operator as Matrix Market triplets")
    _add_caps(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("check", help="verify identities; exit 1 if any fails")
    _add_graph_source(p)
    p.add_argument("--suite", choices=("all",) + SUITES, default="all")
    p.add_argument("--levels", type=int, default=0)
    p.add_argument("--trials", type=int, default=100, help="random pairs per size for lidskii")
    p.add_argument("--out")
    _add_caps(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("converge", help="spectral statistics across refinement levels")
    _add_graph_source(p)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--interval", type=float, nargs=2, default=(0.05, 0.95), metavar=("A", "B"))
    p.add_argument("--compare", action="append",
                   help="family[,key=val...]@depth; repeat to compare starting graphs")
    p.add_argument("--csv")
    p.add_argument("--json")
    p.add_argument("--svg")
    _add_caps(p)
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("fvector", help="exact f-vector table under refinement")
    _add_graph_source(p)
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--out")
    p.add_argument("--curvature-out", help="per-vertex sphere counts and curvature CSV")
    _add_caps(p)
    p.set_defaults(func=cmd_fvector)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        return args.func(args, cfg)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (UsageError, GraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
