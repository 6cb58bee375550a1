"""Brute-force reference: explicit dense Laplacians and full pseudoinverses.

Matrices are built edge by edge from the graph definitions, not from the
circulant rows used elsewhere, so agreement with the closed forms is a real
cross-check. Everything here is O(n^3) and refuses to run past a node cap.
"""

from __future__ import annotations

import itertools

import numpy as np

from .criticality import ZERO_TOL, CriticalityValue
from .errors import DisconnectedTopologyError, InvalidParameterError, SizeCapExceededError
from .spectra import TopologySpec
from .stochastic import (
    LINK_FAILURES,
    RANDOM_LINKS,
    AsymmetricRingSpec,
    StochasticRingModel,
)

DEFAULT_ORACLE_CAP = 4096


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise SizeCapExceededError(f"{n} nodes exceeds the oracle cap of {cap}")


def topology_adjacency(spec: TopologySpec, cap: int = DEFAULT_ORACLE_CAP) -> np.ndarray:
    """0/1 adjacency of a cycle or torus: nodes differing in one coordinate by 1..r (mod k)."""
    n = spec.node_count
    _check_cap(n, cap)
    coords = list(itertools.product(*(range(k) for k in spec.dims)))
    index = {c: i for i, c in enumerate(coords)}
    adj = np.zeros((n, n))
    for i, c in enumerate(coords):
        for axis, k in enumerate(spec.dims):
            for step in range(1, spec.radius + 1):
                for sign in (1, -1):
                    nb = list(c)
                    nb[axis] = (c[axis] + sign * step) % k
                    adj[i, index[tuple(nb)]] = 1.0
    return adj


def _model_adjacency(model: StochasticRingModel) -> np.ndarray:
    n = model.n
    if model.kind == RANDOM_LINKS:
        adj = np.full((n, n), model.q)
    elif model.kind == LINK_FAILURES:
        adj = np.zeros((n, n))
        for i in range(n):
            adj[i, (i + 1) % n] = adj[i, (i - 1) % n] = 1 - model.p
    else:
        # two neighbors chosen uniformly among the other n-1 nodes
        adj = np.full((n, n), 2.0 / (n - 1))
    np.fill_diagonal(adj, 0.0)
    return adj


def _asymmetric_adjacency(spec: AsymmetricRingSpec) -> np.ndarray:
    n = spec.n
    adj = np.zeros((n, n))
    for i in range(n):
        adj[i, (i + 1) % n] += 1.0
        adj[i, (i - 1) % n] += spec.epsilon
    return adj


def build_laplacian(spec, cap: int = DEFAULT_ORACLE_CAP) -> np.ndarray:
    """Dense ``L = D - A`` for a topology, stochastic model or asymmetric ring.

    For the asymmetric ring D holds out-weights, so L is not symmetric.
    """
    if isinstance(spec, TopologySpec):
        adj = topology_adjacency(spec, cap)
    elif isinstance(spec, StochasticRingModel):
        _check_cap(spec.n, cap)
        adj = _model_adjacency(spec)
    elif isinstance(spec, AsymmetricRingSpec):
        _check_cap(spec.n, cap)
        adj = _asymmetric_adjacency(spec)
    else:
        raise InvalidParameterError(f"cannot build a Laplacian from {type(spec).__name__}")
    return np.diag(adj.sum(axis=1)) - adj


def pseudoinverse(lap: np.ndarray, cap: int = DEFAULT_ORACLE_CAP) -> tuple[np.ndarray, int]:
    """Moore-Penrose pseudoinverse by full decomposition.

    Symmetric (Hermitian) input goes through ``eigh``; anything else through
    the SVD. Returns the pseudoinverse and the number of values treated as zero.
    """
    lap = np.asarray(lap)
    if lap.ndim != 2 or lap.shape[0] != lap.shape[1]:
        raise InvalidParameterError(f"Laplacian must be square, got shape {lap.shape}")
    _check_cap(lap.shape[0], cap)
    if np.allclose(lap, lap.conj().T, rtol=0.0, atol=1e-12):
        w, v = np.linalg.eigh(lap)
        keep = np.abs(w) >= ZERO_TOL
        inv_w = np.where(keep, 1.0 / np.where(keep, w, 1.0), 0.0)
        return (v * inv_w) @ v.conj().T, int((~keep).sum())
    u, s, vh = np.linalg.svd(lap)
    keep = s >= ZERO_TOL
    inv_s = np.where(keep, 1.0 / np.where(keep, s, 1.0), 0.0)
    return (vh.conj().T * inv_s) @ u.conj().T, int((~keep).sum())


def pinv_trace_tau(lap: np.ndarray, cap: int = DEFAULT_ORACLE_CAP) -> CriticalityValue:
    """Reference ``tau = 2n * Re(Tr(L+))`` at O(n^3) cost."""
    lap = np.asarray(lap)
    if lap.ndim != 2 or lap.shape[0] != lap.shape[1]:
        raise InvalidParameterError(f"Laplacian must be square, got shape {lap.shape}")
    n = lap.shape[0]
    _check_cap(n, cap)
    scale = max(1.0, float(np.abs(lap).max()))
    if np.abs(lap.sum(axis=1)).max() > 1e-12 * scale * n:
        raise InvalidParameterError("Laplacian rows must sum to zero")
    pinv, zeros = pseudoinverse(lap, cap)
    if zeros == n:
        raise InvalidParameterError("zero matrix has no criticality")
    if zeros > 1:
        raise DisconnectedTopologyError(f"{zeros} zero singular values: topology is disconnected")
    trace = np.trace(pinv)
    return CriticalityValue(
        tau=float(2 * n * np.real(trace)),
        imag_residue=float(abs(np.imag(trace))),
        excluded_zeros=zeros,
    )
