"""Network criticality tau = 2n * Tr(L+) for circulant-family topologies.

Three routes are provided: from an explicit spectrum, from the
Dirichlet-kernel closed forms (cycle and m-dimensional torus), and the
large-n growth estimates.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import log, pi

import numpy as np

from .errors import (
    DegenerateSpectrumError,
    DimensionTooSmallError,
    DisconnectedTopologyError,
    InvalidParameterError,
)
from .spectra import TORUS, Spectrum, TopologySpec, dirichlet_deficit

# Eigenvalues with modulus below this count as zero.
ZERO_TOL = 1e-9


@dataclass(frozen=True)
class CriticalityValue:
    """tau plus the diagnostics of how it was obtained.

    ``imag_residue`` is ``|Im(sum 1/lambda)|`` over the nonzero eigenvalues,
    i.e. what was thrown away when taking the real part.
    """

    tau: float
    imag_residue: float = 0.0
    excluded_zeros: int = 1

    def __float__(self) -> float:
        return float(self.tau)


def tau_from_spectrum(spectrum) -> CriticalityValue:
    """tau = 2n * Re(sum of 1/lambda over nonzero eigenvalues).

    Valid for normal Laplacians (every circulant is normal), where the trace of
    the pseudoinverse is the sum of reciprocal nonzero eigenvalues.
    """
    values = spectrum.flat() if isinstance(spectrum, Spectrum) else np.ravel(spectrum)
    n = values.size
    zero = np.abs(values) < ZERO_TOL
    zeros = int(zero.sum())
    if zeros == n:
        raise DegenerateSpectrumError("spectrum has no nonzero eigenvalue")
    if zeros == 0:
        raise InvalidParameterError("spectrum has no zero eigenvalue; not a Laplacian spectrum")
    if zeros > 1:
        raise DisconnectedTopologyError(f"{zeros} zero eigenvalues: topology is disconnected")
    total = np.sum(1.0 / values[~zero])
    return CriticalityValue(
        tau=float(2 * n * np.real(total)),
        imag_residue=float(abs(np.imag(total))),
        excluded_zeros=zeros,
    )


def _sum_reciprocals(lam: np.ndarray) -> float:
    if np.any(lam[1:] <= 0):
        raise DisconnectedTopologyError("nonpositive eigenvalue off the zero index")
    return float(np.sum(1.0 / lam[1:]))


def tau_cycle_closed_form(n: int, r: int) -> CriticalityValue:
    """tau of the r-nearest-neighbor cycle from the Dirichlet-kernel sum.

    ``tau = sum_{j=1}^{n-1} 2n / (2r + 1 - sin((2r+1)pi j/n) / sin(pi j/n))``
    """
    TopologySpec.cycle(n, r)
    lam = dirichlet_deficit(r, np.arange(n), n)
    return CriticalityValue(tau=2 * n * _sum_reciprocals(lam))


def tau_torus_closed_form(spec: TopologySpec) -> CriticalityValue:
    """tau of an m-dimensional r-nearest-neighbor torus.

    Sums ``2n / ((2r+1)m - sum_i D_r(2 pi j_i / k_i))`` over every multi-index
    except all-zeros, with ``n = prod k_i``.
    """
    if spec.kind != TORUS:
        raise DimensionTooSmallError("tau_torus_closed_form needs a torus spec with m >= 2")
    r = spec.radius
    lam = np.zeros(())
    for d, k in enumerate(spec.dims):
        shape = [1] * spec.m
        shape[d] = k
        lam = lam + dirichlet_deficit(r, np.arange(k), k).reshape(shape)
    n = spec.node_count
    return CriticalityValue(tau=2 * n * _sum_reciprocals(lam.ravel()))


def tau_closed_form(spec: TopologySpec) -> CriticalityValue:
    """Dispatch to the cycle or torus closed form."""
    if spec.kind == TORUS:
        return tau_torus_closed_form(spec)
    return tau_cycle_closed_form(spec.dims[0], spec.radius)


def tau_cycle_asymptotic(n: float, r: int) -> float:
    """Large-n estimate ``n^3 / (2 r (r+1) (2r+1))``.

    The exact r = 1 value is ``n(n^2-1)/6``, so the closed form divided by this
    estimate tends to 2 rather than 1.
    """
    if r < 1:
        raise InvalidParameterError(f"radius must be >= 1, got {r}")
    return n**3 / (2 * r * (r + 1) * (2 * r + 1))


def tau_torus_asymptotic(n: float, r: int) -> float:
    """Order-of-growth estimate ``3 n^3 log(n) / (8 r (r+1) (2r+1) pi^2)``.

    The hidden Theta(log n) constant is taken as 1 and the log is natural, so
    only the growth shape of this value means anything.
    """
    if r < 1:
        raise InvalidParameterError(f"radius must be >= 1, got {r}")
    if n <= 0:
        raise InvalidParameterError(f"node count must be positive, got {n}")
    return 3 * n**3 * log(n) / (8 * r * (r + 1) * (2 * r + 1) * pi**2)
