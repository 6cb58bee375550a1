"""Expected-Laplacian ring models and the asymmetric-weight ring.

Each dynamic model averages i.i.d. per-slot ring topologies; tau is taken of
the averaged (expected) Laplacian, which is again circulant. No claim is made
that this equals the expectation of tau over realizations.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import pi

import numpy as np

from .criticality import CriticalityValue, tau_from_spectrum
from .errors import DegenerateModelError, InvalidParameterError

RANDOM_LINKS = "random-links"
LINK_FAILURES = "link-failures"
NEIGHBOR_SWITCHING = "neighbor-switching"
MODEL_KINDS = (RANDOM_LINKS, LINK_FAILURES, NEIGHBOR_SWITCHING)


def _check_n(n: int) -> None:
    if int(n) != n or n < 3:
        raise InvalidParameterError(f"ring needs n >= 3 nodes, got {n}")


def _check_q(q: float) -> None:
    if not 0.0 <= q <= 1.0:
        raise InvalidParameterError(f"link probability q must lie in [0, 1], got {q}")
    if q == 0.0:
        raise DegenerateModelError("q = 0: the expected ring has no links")


def _check_p(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise InvalidParameterError(f"failure probability p must lie in [0, 1], got {p}")
    if p == 1.0:
        raise DegenerateModelError("p = 1: every ring link fails")


@dataclass(frozen=True)
class StochasticRingModel:
    n: int
    kind: str
    q: float | None = None
    p: float | None = None

    def __post_init__(self):
        _check_n(self.n)
        if self.kind == RANDOM_LINKS:
            if self.q is None:
                raise InvalidParameterError("random-links model needs q")
            _check_q(self.q)
        elif self.kind == LINK_FAILURES:
            if self.p is None:
                raise InvalidParameterError("link-failures model needs p")
            _check_p(self.p)
        elif self.kind != NEIGHBOR_SWITCHING:
            raise InvalidParameterError(f"unknown model kind {self.kind!r}")


@dataclass(frozen=True)
class AsymmetricRingSpec:
    """Directed ring: forward links weigh 1, backward links weigh ``epsilon``."""

    n: int
    epsilon: float

    def __post_init__(self):
        _check_n(self.n)
        if not 0.0 <= self.epsilon <= 1.0:
            raise InvalidParameterError(f"epsilon must lie in [0, 1], got {self.epsilon}")


def expected_laplacian(model: StochasticRingModel) -> np.ndarray:
    """First row of the expected Laplacian of ``model`` (a circulant)."""
    n = model.n
    row = np.zeros(n)
    if model.kind == RANDOM_LINKS:
        row[:] = -model.q
        row[0] = model.q * (n - 1)
    elif model.kind == LINK_FAILURES:
        row[0] = 2 * (1 - model.p)
        row[1] = row[-1] = -(1 - model.p)
    else:
        row[:] = -2.0 / (n - 1)
        row[0] = 2.0
    return row


def asymmetric_row(spec: AsymmetricRingSpec) -> np.ndarray:
    """``circ{(1+eps), -1, 0 ... 0, -eps}``."""
    row = np.zeros(spec.n)
    row[0] = 1 + spec.epsilon
    row[1] = -1.0
    row[-1] = -spec.epsilon
    return row


def tau_random_links(n: int, q: float) -> CriticalityValue:
    """Ring whose every node pair is linked with probability q.

    ``lambda_j = q((n-1) - sum_{k=1}^{n-1} w^(jk))`` and the root-of-unity sum is
    ``-1`` for every j != 0, so all nonzero eigenvalues equal ``q n``.
    """
    _check_n(n)
    _check_q(q)
    lam = np.full(n, q * n)
    lam[0] = 0.0
    return tau_from_spectrum(lam)


def tau_link_failures(n: int, p: float) -> CriticalityValue:
    """Unit ring where each link fails independently with probability p."""
    _check_n(n)
    _check_p(p)
    j = np.arange(n)
    # 2(1-p)(1 - cos(2 pi j/n)) == 4(1-p) sin^2(pi j/n)
    lam = 4 * (1 - p) * np.sin(pi * np.minimum(j, n - j) / n) ** 2
    return tau_from_spectrum(lam)


def tau_neighbor_switching(n: int) -> CriticalityValue:
    """Each node picks two neighbors uniformly at random every slot.

    ``lambda_j = 2 - 2/(n-1) * sum_{i=1}^{n-1} w^(ij)``; for j != 0 the sum is
    ``-1``, leaving ``2n/(n-1)``.
    """
    _check_n(n)
    lam = np.full(n, 2.0 * n / (n - 1))
    lam[0] = 0.0
    return tau_from_spectrum(lam)


def asymmetric_spectrum(spec: AsymmetricRingSpec) -> np.ndarray:
    """``lambda_j = (1+eps)(1 - cos t) - i(1-eps) sin t`` with ``t = 2 pi j/n``."""
    n, eps = spec.n, spec.epsilon
    j = np.arange(n)
    theta = 2 * pi * j / n
    real = 2 * (1 + eps) * np.sin(pi * np.minimum(j, n - j) / n) ** 2
    return real - 1j * (1 - eps) * np.sin(theta)


def tau_asymmetric_ring(spec: AsymmetricRingSpec) -> CriticalityValue:
    return tau_from_spectrum(asymmetric_spectrum(spec))


def tau_model(model: StochasticRingModel) -> CriticalityValue:
    if model.kind == RANDOM_LINKS:
        return tau_random_links(model.n, model.q)
    if model.kind == LINK_FAILURES:
        return tau_link_failures(model.n, model.p)
    return tau_neighbor_switching(model.n)
