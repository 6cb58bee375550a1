"""Parameter sweeps, figure presets, CSV output and oracle validation runs."""

from __future__ import annotations

import io
import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .criticality import tau_closed_form
from .oracle import DEFAULT_ORACLE_CAP, build_laplacian, pinv_trace_tau
from .spectra import TopologySpec
from .stochastic import (
    LINK_FAILURES,
    NEIGHBOR_SWITCHING,
    RANDOM_LINKS,
    AsymmetricRingSpec,
    StochasticRingModel,
    tau_asymmetric_ring,
    tau_model,
)

PRESETS = ("fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10", "fig11")
CUSTOM_MODELS = ("cycle", "torus", "random-ring", "failure-ring", "switching-ring", "asym-ring")
FIG8_DIMS = (16, 18, 20, 22)
VALIDATION_SCOPES = ("cycle", "torus", "stochastic", "asymmetric")
VALIDATION_TOL = 1e-9
STOCHASTIC_PROBS = (0.2, 0.5, 0.7)
ASYM_EPS = (0.0, 0.25, 0.5, 0.75, 1.0)


@dataclass(frozen=True)
class Point:
    """One grid point: a model label, the parameters shown in the CSV, and what to evaluate."""

    model: str
    params: dict
    spec: object


@dataclass(frozen=True)
class ResultRow:
    model: str
    params: dict
    tau: float
    oracle_tau: float | None = None
    relative_error: float | None = None


@dataclass
class SweepConfig:
    target: str
    ranges: dict = field(default_factory=dict)
    output_path: str | None = None
    include_oracle: bool = False
    model: str | None = None
    stride: int = 10
    oracle_cap: int = DEFAULT_ORACLE_CAP
    workers: int = 1

    def __post_init__(self):
        if self.target not in PRESETS + ("custom",):
            raise ValueError(f"unknown sweep target {self.target!r}")
        if self.target == "custom" and self.model not in CUSTOM_MODELS:
            raise ValueError(f"custom sweep needs a model from {CUSTOM_MODELS}")
        for name, grid in self.ranges.items():
            if len(grid) == 0:
                raise ValueError(f"grid for {name} is empty")
        if self.stride < 1:
            raise ValueError("stride must be >= 1")


def node_count(spec) -> int:
    if isinstance(spec, TopologySpec):
        return spec.node_count
    return spec.n


def evaluate(spec):
    """Closed-form CriticalityValue for any supported model."""
    if isinstance(spec, TopologySpec):
        return tau_closed_form(spec)
    if isinstance(spec, StochasticRingModel):
        return tau_model(spec)
    if isinstance(spec, AsymmetricRingSpec):
        return tau_asymmetric_ring(spec)
    raise TypeError(f"cannot evaluate {type(spec).__name__}")


def oracle(spec, cap: int = DEFAULT_ORACLE_CAP):
    return pinv_trace_tau(build_laplacian(spec, cap), cap)


def _dims_label(dims: Sequence[int]) -> str:
    return "x".join(str(k) for k in dims)


def cycle_point(n, r) -> Point:
    return Point("cycle", {"n": n, "r": r}, TopologySpec.cycle(n, r))


def torus_point(dims, r, **extra) -> Point:
    spec = TopologySpec.torus(dims, r)
    return Point("torus", {**extra, "dims": _dims_label(dims), "r": r, "n": spec.node_count}, spec)


def random_point(n, q) -> Point:
    return Point("random-ring", {"n": n, "q": q}, StochasticRingModel(n, RANDOM_LINKS, q=q))


def failure_point(n, p) -> Point:
    return Point("failure-ring", {"n": n, "p": p}, StochasticRingModel(n, LINK_FAILURES, p=p))


def switching_point(n) -> Point:
    return Point("switching-ring", {"n": n}, StochasticRingModel(n, NEIGHBOR_SWITCHING))


def asym_point(n, eps) -> Point:
    return Point("asym-ring", {"n": n, "eps": eps}, AsymmetricRingSpec(n, eps))


def _ring_series(prob: float, ns: Iterable[int]) -> list[Point]:
    ns = list(ns)
    return (
        [cycle_point(n, 1) for n in ns]
        + [random_point(n, prob) for n in ns]
        + [failure_point(n, prob) for n in ns]
        + [switching_point(n) for n in ns]
    )


def preset_points(target: str, stride: int = 10) -> tuple[list[Point], dict]:
    """Grid points of a figure preset plus the metadata written to the CSV header."""
    if target == "fig4":
        return [cycle_point(n, 1) for n in range(3, 501)], {"r": 1}
    if target == "fig5":
        return [cycle_point(300, r) for r in range(1, 150)], {"n": 300}
    if target == "fig6":
        ks = list(range(10, 301, stride))
        pts = [torus_point((k1, k2), 2) for k1, k2 in itertools.product(ks, ks)]
        return pts, {"r": 2, "stride": stride}
    if target == "fig7":
        return [torus_point((300, 300), r) for r in range(1, 150)], {"k1": 300, "k2": 300}
    if target == "fig8":
        pts = []
        for r in range(1, (FIG8_DIMS[0] - 1) // 2 + 1):
            for m in range(1, len(FIG8_DIMS) + 1):
                dims = FIG8_DIMS[:m]
                if m == 1:
                    pts.append(Point("cycle", {"m": 1, "dims": _dims_label(dims), "r": r, "n": dims[0]},
                                     TopologySpec.cycle(dims[0], r)))
                else:
                    pts.append(torus_point(dims, r, m=m))
        return pts, {"dims": _dims_label(FIG8_DIMS)}
    if target == "fig9":
        return _ring_series(0.2, range(3, 101)), {"p": 0.2, "q": 0.2}
    if target == "fig10":
        return _ring_series(0.7, range(3, 101)), {"p": 0.7, "q": 0.7}
    if target == "fig11":
        eps = [i / 10 for i in range(11)]
        return [asym_point(n, e) for e in eps for n in range(3, 101)], {}
    raise ValueError(f"unknown preset {target!r}")


def custom_points(model: str, ranges: dict) -> list[Point]:
    """Lexicographic product over the named grids of one model."""

    def grid(name, default=None):
        if name in ranges:
            return list(ranges[name])
        if default is None:
            raise ValueError(f"custom {model} sweep needs a grid for {name}")
        return list(default)

    if model == "cycle":
        return [cycle_point(n, r) for n, r in itertools.product(grid("n"), grid("r"))]
    if model == "torus":
        dims = tuple(ranges.get("dims") or ())
        if not dims:
            raise ValueError("custom torus sweep needs --dims")
        return [torus_point(dims, r) for r in grid("r")]
    if model == "random-ring":
        return [random_point(n, q) for n, q in itertools.product(grid("n"), grid("q"))]
    if model == "failure-ring":
        return [failure_point(n, p) for n, p in itertools.product(grid("n"), grid("p"))]
    if model == "switching-ring":
        return [switching_point(n) for n in grid("n")]
    if model == "asym-ring":
        return [asym_point(n, e) for n, e in itertools.product(grid("n"), grid("eps"))]
    raise ValueError(f"unknown custom model {model!r}")


def _evaluate_point(point: Point, include_oracle: bool, cap: int) -> ResultRow:
    tau = evaluate(point.spec).tau
    if include_oracle and node_count(point.spec) <= cap:
        ref = oracle(point.spec, cap).tau
        return ResultRow(point.model, point.params, tau, ref, abs(tau / ref - 1.0))
    return ResultRow(point.model, point.params, tau)


def run_points(points: Sequence[Point], include_oracle=False, cap=DEFAULT_ORACLE_CAP, workers=1):
    """Evaluate points, returning rows in input order regardless of ``workers``."""

    def job(pt):
        return _evaluate_point(pt, include_oracle, cap)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(job, points))
    return [job(pt) for pt in points]


def run_sweep(config: SweepConfig) -> tuple[list[ResultRow], dict]:
    if config.target == "custom":
        points = custom_points(config.model, config.ranges)
        meta = {"model": config.model}
    else:
        points, meta = preset_points(config.target, config.stride)
    rows = run_points(points, config.include_oracle, config.oracle_cap, config.workers)
    return rows, meta


def format_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def rows_to_csv(rows: Sequence[ResultRow], meta: dict, target: str, include_oracle: bool) -> str:
    """CSV text: ``#`` metadata lines, header, one line per row, LF endings."""
    columns: list[str] = []
    for row in rows:
        for key in row.params:
            if key not in columns:
                columns.append(key)
    out = io.StringIO(newline="")
    out.write(f"# target={target}\n")
    for key, value in meta.items():
        out.write(f"# {key}={format_value(value)}\n")
    header = ["model", *columns, "tau"] + (["oracle_tau", "rel_err"] if include_oracle else [])
    out.write(",".join(header) + "\n")
    for row in rows:
        cells = [row.model] + [format_value(row.params.get(c)) for c in columns] + [format_value(row.tau)]
        if include_oracle:
            cells += [format_value(row.oracle_tau), format_value(row.relative_error)]
        out.write(",".join(cells) + "\n")
    return out.getvalue()


def write_csv(text: str, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


@dataclass
class ValidationReport:
    scope: str
    points: int = 0
    max_rel_err: float = 0.0
    max_imag_residue: float = 0.0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def validation_points(scope: str) -> list[Point]:
    """The standard closed-form-vs-oracle grids."""
    if scope == "cycle":
        return [cycle_point(n, r) for n in range(3, 65) for r in range(1, (n - 1) // 2 + 1)]
    if scope == "torus":
        pts = [
            torus_point((k1, k2), r)
            for k1 in range(3, 13)
            for k2 in range(3, 13)
            for r in range(1, (min(k1, k2) - 1) // 2 + 1)
        ]
        return pts + [torus_point((3, 4, 5), 1)]
    if scope == "stochastic":
        pts = []
        for n in range(3, 65):
            pts += [random_point(n, q) for q in STOCHASTIC_PROBS]
            pts += [failure_point(n, p) for p in STOCHASTIC_PROBS]
            pts.append(switching_point(n))
        return pts
    if scope == "asymmetric":
        return [asym_point(n, e) for n in range(3, 33) for e in ASYM_EPS]
    raise ValueError(f"unknown validation scope {scope!r}")


def validate(scope: str, cap: int, oracle_cap: int = DEFAULT_ORACLE_CAP) -> ValidationReport:
    report = ValidationReport(scope)
    for pt in validation_points(scope):
        if node_count(pt.spec) > cap:
            continue
        closed = evaluate(pt.spec)
        ref = oracle(pt.spec, oracle_cap)
        err = abs(closed.tau / ref.tau - 1.0)
        imag = max(closed.imag_residue, ref.imag_residue)
        report.points += 1
        report.max_rel_err = max(report.max_rel_err, err)
        report.max_imag_residue = max(report.max_imag_residue, imag)
        if not (err < VALIDATION_TOL and imag < VALIDATION_TOL):
            report.failures.append((pt.model, pt.params, closed.tau, ref.tau, err, imag))
    return report
