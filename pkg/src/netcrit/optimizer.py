"""Robustness vs. transmit-power trade-off over the integer neighbor radius."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import inf, sqrt
from typing import NamedTuple, Sequence

from .criticality import tau_closed_form
from .errors import InvalidParameterError
from .spectra import CYCLE, TORUS, TopologySpec

MIN_TAU = "min-tau"
MIN_POWER = "min-power"


@dataclass(frozen=True)
class PowerModel:
    alpha: float

    def __post_init__(self):
        if not self.alpha >= 1:
            raise InvalidParameterError(f"path-loss exponent must be >= 1, got {self.alpha}")


def node_power(n: int, r: int, model: PowerModel) -> float:
    """Per-node transmit power ``(r / sqrt(n)) ** alpha``."""
    if n < 1 or r < 1:
        raise InvalidParameterError(f"need n >= 1 and r >= 1, got n={n}, r={r}")
    return (r / sqrt(n)) ** model.alpha


@dataclass(frozen=True)
class OptimizationProblem:
    """Choose r in ``[1, r_max]`` for a cycle (one dim) or torus of fixed size.

    ``min-tau`` minimizes tau subject to ``P <= p_max``; ``min-power``
    minimizes P subject to ``tau <= tau_max``. P is per-node power.
    """

    dims: tuple[int, ...]
    mode: str
    r_max: int
    power: PowerModel
    p_max: float | None = None
    tau_max: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(k) for k in self.dims))
        if not self.dims or min(self.dims) < 3:
            raise InvalidParameterError(f"every dimension needs at least 3 nodes, got {self.dims}")
        limit = (min(self.dims) - 1) // 2
        if not 1 <= self.r_max <= limit:
            raise InvalidParameterError(f"r_max must lie in [1, {limit}], got {self.r_max}")
        if self.mode == MIN_TAU:
            if self.p_max is None or self.tau_max is not None:
                raise InvalidParameterError("min-tau takes p_max and no tau_max")
            if not self.p_max > 0:
                raise InvalidParameterError(f"p_max must be positive, got {self.p_max}")
        elif self.mode == MIN_POWER:
            if self.tau_max is None or self.p_max is not None:
                raise InvalidParameterError("min-power takes tau_max and no p_max")
            if not self.tau_max > 0:
                raise InvalidParameterError(f"tau_max must be positive, got {self.tau_max}")
        else:
            raise InvalidParameterError(f"unknown mode {self.mode!r}")

    @property
    def node_count(self) -> int:
        n = 1
        for k in self.dims:
            n *= k
        return n

    def topology(self, r: int) -> TopologySpec:
        return TopologySpec(CYCLE if len(self.dims) == 1 else TORUS, self.dims, r)


class FrontierPoint(NamedTuple):
    r: int
    tau: float
    power: float


@dataclass(frozen=True)
class OptimizationResult:
    feasible: bool
    r_star: int | None
    tau_at_r: float | None
    power_at_r: float | None
    frontier: Sequence[FrontierPoint] = field(default_factory=tuple)


def solve(problem: OptimizationProblem) -> OptimizationResult:
    """Exhaustive scan of r = 1..r_max; ties go to the smaller r."""
    n = problem.node_count
    frontier = []
    for r in range(1, problem.r_max + 1):
        tau = tau_closed_form(problem.topology(r)).tau
        frontier.append(FrontierPoint(r, tau, node_power(n, r, problem.power)))

    if problem.mode == MIN_TAU:
        feasible = [pt for pt in frontier if pt.power <= problem.p_max]
        objective = lambda pt: pt.tau  # noqa: E731
    else:
        feasible = [pt for pt in frontier if pt.tau <= problem.tau_max]
        objective = lambda pt: pt.power  # noqa: E731

    best = None
    best_value = inf
    for pt in feasible:
        if objective(pt) < best_value:
            best, best_value = pt, objective(pt)
    if best is None:
        return OptimizationResult(False, None, None, None, tuple(frontier))
    return OptimizationResult(True, best.r, best.tau, best.power, tuple(frontier))
