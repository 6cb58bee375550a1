"""Laplacian spectra of circulant-structured topologies.

Every topology handled here (r-nearest-neighbor cycles, tori, and the
expected-Laplacian rings) has a circulant or block-circulant Laplacian, so
its eigenvalues follow from the discrete Fourier basis and never need a
dense eigensolver.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial, pi
from typing import Sequence

import numpy as np

from .errors import DimensionTooSmallError, InvalidParameterError, RadiusOutOfRangeError

CYCLE = "cycle"
TORUS = "torus"

# |sin(x/2)| below this switches the Dirichlet kernel to its limit value.
KERNEL_SINGULAR_TOL = 1e-9

# Taylor terms used for the small-angle Dirichlet deficit; (N*y)**17/17! < 1e-19 for N*y <= 0.5.
_SERIES_TERMS = 10
_SERIES_CUTOFF = 0.5


@dataclass(frozen=True)
class TopologySpec:
    """An r-nearest-neighbor cycle (one dimension) or torus (two or more)."""

    kind: str
    dims: tuple[int, ...]
    radius: int

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(k) for k in self.dims))
        if self.kind not in (CYCLE, TORUS):
            raise InvalidParameterError(f"unknown topology kind {self.kind!r}")
        if self.kind == CYCLE and len(self.dims) != 1:
            raise InvalidParameterError("a cycle has exactly one dimension")
        if self.kind == TORUS and len(self.dims) < 2:
            raise DimensionTooSmallError(f"a torus needs m >= 2 dimensions, got {len(self.dims)}")
        if any(k < 3 for k in self.dims):
            raise InvalidParameterError(f"every dimension needs at least 3 nodes, got {self.dims}")
        if self.radius < 1:
            raise RadiusOutOfRangeError(f"radius must be >= 1, got {self.radius}")
        if 2 * self.radius + 1 > min(self.dims):
            raise RadiusOutOfRangeError(
                f"radius {self.radius} needs 2r+1 <= {min(self.dims)} (smallest dimension)"
            )

    @classmethod
    def cycle(cls, n: int, r: int) -> "TopologySpec":
        return cls(CYCLE, (n,), r)

    @classmethod
    def torus(cls, dims: Sequence[int], r: int) -> "TopologySpec":
        return cls(TORUS, tuple(dims), r)

    @property
    def m(self) -> int:
        return len(self.dims)

    @property
    def node_count(self) -> int:
        return int(np.prod(self.dims))


@dataclass(frozen=True)
class Spectrum:
    """Laplacian eigenvalues laid out by multi-index.

    ``values[j1, ..., jm]`` is the eigenvalue for Fourier index ``(j1, ..., jm)``;
    a plain circulant or cycle spectrum is one-dimensional. Values are real
    for symmetric sources and complex otherwise.
    """

    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def node_count(self) -> int:
        return int(self.values.size)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.values.shape

    def flat(self) -> np.ndarray:
        return self.values.ravel()

    def __getitem__(self, index):
        return self.values[index]

    def __len__(self) -> int:
        return self.node_count


def cycle_row(n: int, r: int) -> np.ndarray:
    """First row of the r-nearest-neighbor cycle Laplacian: ``[2r, -1 x r, 0..., -1 x r]``."""
    TopologySpec.cycle(n, r)
    row = np.zeros(n)
    row[0] = 2 * r
    row[1 : r + 1] = -1.0
    row[n - r :] = -1.0
    return row


def circulant_eigenvalues(row: Sequence[complex]) -> Spectrum:
    """Eigenvalues of ``circ(row)`` by direct O(n^2) summation.

    ``lambda_j = sum_k a_k * w**(k*j)`` with ``w = exp(2*pi*i/n)`` and k, j
    counted from zero. Exponents are reduced mod n before evaluating the
    root of unity, which keeps every angle in ``[0, 2*pi)``.
    """
    a = np.asarray(row, dtype=complex)
    if a.ndim != 1 or a.size == 0:
        raise InvalidParameterError("circulant row must be a nonempty 1-D sequence")
    n = a.size
    idx = np.arange(n)
    powers = np.outer(idx, idx) % n
    angles = 2.0 * pi * np.arange(n) / n
    roots = np.cos(angles) + 1j * np.sin(angles)
    return Spectrum(roots[powers] @ a)


def _cycle_eigs(k: int, r: int) -> np.ndarray:
    # 2r - 2*sum cos(2*pi*j*i/k) rewritten as 4*sum sin^2(pi*j*i/k): same value,
    # no cancellation near j = 0.
    j = np.arange(k)
    lam = np.zeros(k)
    for i in range(1, r + 1):
        m = (j * i) % k
        # sin(pi*m/k) loses relative accuracy as m -> k; use the mirror index
        lam += np.sin(pi * np.minimum(m, k - m) / k) ** 2
    return 4.0 * lam


def cycle_spectrum(n: int, r: int) -> Spectrum:
    TopologySpec.cycle(n, r)
    return Spectrum(_cycle_eigs(n, r))


def _outer_sum(parts: Sequence[np.ndarray]) -> np.ndarray:
    total = np.zeros(())
    for d, part in enumerate(parts):
        shape = [1] * len(parts)
        shape[d] = part.size
        total = total + part.reshape(shape)
    return total


def torus_spectrum(spec: TopologySpec) -> Spectrum:
    """Spectrum of an m-dimensional r-nearest-neighbor torus.

    The torus is a Cartesian product of cycles, so each eigenvalue is the sum
    of one eigenvalue per dimension (dimension i uses its own size k_i).
    """
    if spec.kind != TORUS:
        raise DimensionTooSmallError("torus_spectrum needs a torus spec with m >= 2")
    return Spectrum(_outer_sum([_cycle_eigs(k, spec.radius) for k in spec.dims]))


def dirichlet_kernel(r: int, x):
    """``1 + 2*sum_{j=1..r} cos(j*x)`` via its closed form ``sin((r+1/2)x) / sin(x/2)``.

    Where ``|sin(x/2)| < 1e-9`` the removable singularity is replaced by its
    limit ``2r + 1``. Accepts scalars or arrays.
    """
    if r < 0:
        raise InvalidParameterError(f"kernel order must be >= 0, got {r}")
    x = np.asarray(x, dtype=float)
    half = np.sin(x / 2.0)
    singular = np.abs(half) < KERNEL_SINGULAR_TOL
    safe = np.where(singular, 1.0, half)
    out = np.where(singular, 2.0 * r + 1.0, np.sin((r + 0.5) * x) / safe)
    return out if out.ndim else float(out)


def dirichlet_deficit(r: int, j, k: int) -> np.ndarray:
    """``(2r+1) - D_r(2*pi*j/k)``, the cycle eigenvalue in Dirichlet-kernel form.

    With ``y = pi*j/k`` and ``N = 2r+1`` this is ``(N sin y - sin(N y)) / sin y``.
    When ``N*y`` is small the numerator is a difference of nearly equal
    numbers, so there it is summed from its Taylor series instead.
    ``j`` may be an array of integers in ``[0, k)``; ``j = 0`` gives 0.
    """
    j = np.atleast_1d(np.asarray(j, dtype=np.int64))
    big_n = 2 * r + 1
    out = np.zeros(j.shape)
    nz = j % k != 0
    jr = j[nz] % k
    # the kernel is even, so fold j onto [1, k/2]; near y = pi the direct form cancels too
    jr = np.minimum(jr, k - jr)
    y = pi * jr / k
    sin_y = np.sin(y)
    # reduce N*j mod 2k so the argument stays in [0, 2*pi)
    numer = big_n * sin_y - np.sin(pi * ((big_n * jr) % (2 * k)) / k)

    small = big_n * y <= _SERIES_CUTOFF
    if np.any(small):
        ys = y[small]
        series = np.zeros(ys.shape)
        for m in range(_SERIES_TERMS, 0, -1):
            p = 2 * m + 1
            coeff = (float(big_n) ** p - big_n) / factorial(p)
            series += (-1) ** (m + 1) * coeff * ys**p
        numer[small] = series

    out[nz] = numer / sin_y
    return out
