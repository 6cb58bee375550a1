"""Command-line entry point.

Exit codes: 0 success, 1 validation mismatch, 2 usage error or invalid
parameters, 3 degenerate model (q = 0, p = 1).
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import sweeps
from .errors import DegenerateModelError, NetcritError
from .oracle import DEFAULT_ORACLE_CAP
from .optimizer import MIN_POWER, MIN_TAU, OptimizationProblem, PowerModel, solve
from .spectra import TopologySpec
from .walks import simulate_walk_betweenness

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_DEGENERATE = 3

TAU_MODELS = ("cycle", "torus", "mdtorus", "random-ring", "failure-ring", "switching-ring", "asym-ring")


class UsageError(Exception):
    pass


def _number(token: str):
    try:
        return int(token)
    except ValueError:
        return float(token)


def parse_grid(text: str) -> list:
    """``"4:16"`` or ``"4:16:2"`` (inclusive integer range), ``"0.2,0.5"``, or a single value."""
    text = text.strip()
    if ":" in text:
        parts = [int(p) for p in text.split(":")]
        if len(parts) == 2:
            start, stop, step = parts[0], parts[1], 1
        elif len(parts) == 3:
            start, stop, step = parts
        else:
            raise ValueError(f"bad range {text!r}")
        if step < 1:
            raise ValueError(f"range step must be >= 1 in {text!r}")
        return list(range(start, stop + 1, step))
    return [_number(tok) for tok in text.split(",") if tok.strip()]


def parse_dims(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.replace("x", ",").split(",") if tok.strip())


def _single(args, name, kind=float):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--{name} is required for this model")
    try:
        return kind(value)
    except ValueError:
        raise UsageError(f"--{name} expects a single {kind.__name__}, got {value!r}") from None


def _topology_from_args(args) -> TopologySpec:
    r = _single(args, "r", int)
    if args.dims:
        dims = parse_dims(args.dims)
        if len(dims) == 1:
            return TopologySpec.cycle(dims[0], r)
        return TopologySpec.torus(dims, r)
    return TopologySpec.cycle(_single(args, "n", int), r)


def _model_point(args) -> sweeps.Point:
    model = args.model
    if model == "cycle":
        return sweeps.cycle_point(_single(args, "n", int), _single(args, "r", int))
    if model in ("torus", "mdtorus"):
        if not args.dims:
            raise UsageError("--dims is required for this model")
        dims = parse_dims(args.dims)
        if model == "torus" and len(dims) != 2:
            raise UsageError("torus takes exactly two dimensions; use mdtorus for more")
        return sweeps.torus_point(dims, _single(args, "r", int))
    if model == "random-ring":
        return sweeps.random_point(_single(args, "n", int), _single(args, "q"))
    if model == "failure-ring":
        return sweeps.failure_point(_single(args, "n", int), _single(args, "p"))
    if model == "switching-ring":
        return sweeps.switching_point(_single(args, "n", int))
    return sweeps.asym_point(_single(args, "n", int), _single(args, "eps"))


def cmd_tau(args, out) -> int:
    point = _model_point(args)
    value = sweeps.evaluate(point.spec)
    print(f"model: {point.model}", file=out)
    for key, val in point.params.items():
        print(f"{key}: {sweeps.format_value(val)}", file=out)
    print(f"tau: {value.tau!r}", file=out)
    print(f"imag_residue: {value.imag_residue!r}", file=out)
    print(f"excluded_zeros: {value.excluded_zeros}", file=out)
    if args.oracle:
        ref = sweeps.oracle(point.spec, args.oracle_cap)
        print(f"oracle_tau: {ref.tau!r}", file=out)
        print(f"rel_err: {abs(value.tau / ref.tau - 1.0)!r}", file=out)
    return EXIT_OK


def cmd_sweep(args, out) -> int:
    ranges = {}
    for name in ("n", "r", "q", "p", "eps"):
        text = getattr(args, name)
        if text is not None:
            ranges[name] = parse_grid(text)
    if args.dims:
        ranges["dims"] = parse_dims(args.dims)
    target = args.preset or "custom"
    try:
        config = sweeps.SweepConfig(
            target=target,
            ranges=ranges,
            output_path=args.out,
            include_oracle=args.oracle,
            model=args.custom,
            stride=args.stride,
            oracle_cap=args.oracle_cap,
            workers=args.workers,
        )
        rows, meta = sweeps.run_sweep(config)
    except ValueError as exc:
        if isinstance(exc, DegenerateModelError):
            raise
        raise UsageError(str(exc)) from None
    text = sweeps.rows_to_csv(rows, meta, target, config.include_oracle)
    if args.out:
        try:
            sweeps.write_csv(text, args.out)
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc}") from None
        print(f"wrote {len(rows)} rows to {args.out}", file=out)
    else:
        out.write(text)
    return EXIT_OK


def cmd_validate(args, out) -> int:
    if args.cap > args.oracle_cap:
        raise UsageError(f"--cap {args.cap} exceeds --oracle-cap {args.oracle_cap}")
    scopes = sweeps.VALIDATION_SCOPES if args.scope == "all" else (args.scope,)
    status = EXIT_OK
    for scope in scopes:
        report = sweeps.validate(scope, args.cap, args.oracle_cap)
        verdict = "OK" if report.ok else "MISMATCH"
        print(
            f"{scope}: points={report.points} max_rel_err={report.max_rel_err:.3e} "
            f"max_imag_residue={report.max_imag_residue:.3e} {verdict}",
            file=out,
        )
        for model, params, closed, ref, err, imag in report.failures:
            print(f"  {model} {params} closed={closed!r} oracle={ref!r} rel_err={err:.3e} imag={imag:.3e}", file=out)
        if not report.ok:
            status = EXIT_MISMATCH
    return status


def cmd_optimize(args, out) -> int:
    if args.dims:
        dims = parse_dims(args.dims)
    else:
        dims = (_single(args, "n", int),)
    if args.mode == MIN_TAU and args.taumax is not None or args.mode == MIN_POWER and args.pmax is not None:
        raise UsageError(f"{args.mode} takes only {'--pmax' if args.mode == MIN_TAU else '--taumax'}")
    problem = OptimizationProblem(
        dims=dims,
        mode=args.mode,
        r_max=args.rmax,
        power=PowerModel(args.alpha),
        p_max=args.pmax if args.mode == MIN_TAU else None,
        tau_max=args.taumax if args.mode == MIN_POWER else None,
    )
    result = solve(problem)
    n = problem.node_count
    print(f"feasible: {str(result.feasible).lower()}", file=out)
    if result.feasible:
        print(f"r_star: {result.r_star}", file=out)
        print(f"tau: {result.tau_at_r!r}", file=out)
        print(f"power: {result.power_at_r!r}", file=out)
        print(f"total_power: {n * result.power_at_r!r}", file=out)
    if args.out:
        lines = [f"# mode={args.mode}", f"# dims={'x'.join(map(str, dims))}", f"# alpha={args.alpha!r}",
                 "r,tau,power,total_power"]
        lines += [f"{pt.r},{pt.tau!r},{pt.power!r},{n * pt.power!r}" for pt in result.frontier]
        try:
            sweeps.write_csv("\n".join(lines) + "\n", args.out)
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc}") from None
    return EXIT_OK


def cmd_walk_sim(args, out) -> int:
    spec = _topology_from_args(args)
    if args.walks_per_pair < 1:
        raise UsageError("--walks-per-pair must be >= 1")
    stats = simulate_walk_betweenness(spec, args.walks_per_pair, args.seed, args.workers, args.oracle_cap)
    print("node,betweenness,weight,criticality", file=out)
    for k in range(stats.node_betweenness.size):
        print(
            f"{k},{float(stats.node_betweenness[k])!r},{float(stats.node_weight[k])!r},"
            f"{float(stats.node_criticality[k])!r}",
            file=out,
        )
    eta = stats.node_criticality
    print(f"# walks={stats.walk_count} seed={stats.seed} mean_walk_length={stats.mean_walk_length!r}", file=out)
    print(f"# criticality_cv={stats.coefficient_of_variation!r} max_min_ratio={float(np.max(eta) / np.min(eta))!r}",
          file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="netcrit", description="Network criticality of r-nearest-neighbor WSN topologies.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tau", help="tau for a single model")
    p.add_argument("model", choices=TAU_MODELS)
    p.add_argument("--n")
    p.add_argument("--r")
    p.add_argument("--dims")
    p.add_argument("--q")
    p.add_argument("--p")
    p.add_argument("--eps")
    p.add_argument("--oracle", action="store_true", help="also compute the dense pseudoinverse value")
    p.add_argument("--oracle-cap", type=int, default=DEFAULT_ORACLE_CAP)
    p.set_defaults(func=cmd_tau)

    p = sub.add_parser("sweep", help="CSV parameter sweep")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--preset", choices=sweeps.PRESETS)
    which.add_argument("--custom", choices=sweeps.CUSTOM_MODELS)
    for name in ("n", "r", "q", "p", "eps"):
        p.add_argument(f"--{name}", help="grid: a:b[:step], comma list, or single value")
    p.add_argument("--dims")
    p.add_argument("--out")
    p.add_argument("--oracle", action="store_true", help="add oracle_tau and rel_err columns")
    p.add_argument("--oracle-cap", type=int, default=DEFAULT_ORACLE_CAP)
    p.add_argument("--stride", type=int, default=10, help="grid stride for the fig6 surface")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("validate", help="closed forms vs dense oracle")
    p.add_argument("scope", nargs="?", default="all", choices=sweeps.VALIDATION_SCOPES + ("all",))
    p.add_argument("--cap", type=int, default=256, help="skip grid points with more nodes")
    p.add_argument("--oracle-cap", type=int, default=DEFAULT_ORACLE_CAP)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("optimize", help="choose r under a power or criticality bound")
    p.add_argument("--mode", choices=(MIN_TAU, MIN_POWER), required=True)
    p.add_argument("--n")
    p.add_argument("--dims")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--rmax", type=int, required=True)
    p.add_argument("--pmax", type=float)
    p.add_argument("--taumax", type=float)
    p.add_argument("--out", help="write the (r, tau, P) frontier as CSV")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("walk-sim", help="Monte Carlo random-walk betweenness")
    p.add_argument("--n")
    p.add_argument("--r", default="1")
    p.add_argument("--dims")
    p.add_argument("--walks-per-pair", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--oracle-cap", type=int, default=DEFAULT_ORACLE_CAP)
    p.set_defaults(func=cmd_walk_sim)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except DegenerateModelError as exc:
        print(f"error: degenerate model: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (UsageError, NetcritError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
