"""Monte Carlo random-walk betweenness on unit-weight topologies.

A walk starts at the source, moves to a uniformly chosen neighbor each step
and is absorbed at the destination. Betweenness of node t counts the visits
to t per walk, summed over ordered pairs with t as neither endpoint.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import DisconnectedTopologyError, InvalidParameterError
from .oracle import DEFAULT_ORACLE_CAP, topology_adjacency
from .spectra import TopologySpec

# Hard bound on steps per walk batch; a connected graph at oracle scale never gets near it.
MAX_STEPS = 10_000_000


@dataclass(frozen=True)
class WalkStatistics:
    node_betweenness: np.ndarray
    node_weight: np.ndarray
    node_criticality: np.ndarray
    walk_count: int
    seed: int
    mean_walk_length: float

    @property
    def coefficient_of_variation(self) -> float:
        eta = self.node_criticality
        return float(eta.std() / eta.mean())


def _neighbor_table(adj: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    deg = (adj > 0).sum(axis=1)
    table = np.zeros((adj.shape[0], int(deg.max())), dtype=np.int64)
    for i in range(adj.shape[0]):
        nbrs = np.flatnonzero(adj[i])
        table[i, : nbrs.size] = nbrs
    return table, deg


def _walk_pair(src, dst, table, deg, walks, rng):
    n = table.shape[0]
    counts = np.zeros(n, dtype=np.int64)
    pos = np.full(walks, src, dtype=np.int64)
    steps = 0
    while pos.size:
        if steps > MAX_STEPS:
            raise DisconnectedTopologyError(f"walk {src}->{dst} did not terminate")
        choice = (rng.random(pos.size) * deg[pos]).astype(np.int64)
        pos = table[pos, choice]
        steps += pos.size
        pos = pos[pos != dst]
        counts += np.bincount(pos, minlength=n)
    counts[src] = 0
    return counts, steps


def simulate_walk_betweenness(
    spec: TopologySpec,
    walks_per_pair: int,
    seed: int,
    workers: int = 1,
    cap: int = DEFAULT_ORACLE_CAP,
) -> WalkStatistics:
    """Estimate node betweenness and node criticality ``b_k / w_k``.

    The node weight ``w_k`` is the node degree. Every ordered pair gets its
    own Philox stream spawned from ``seed`` in pair order, and partial counts
    are combined in that same order, so results do not depend on ``workers``.
    """
    if walks_per_pair < 1:
        raise InvalidParameterError(f"walks_per_pair must be >= 1, got {walks_per_pair}")
    adj = topology_adjacency(spec, cap)
    n_comp, _ = connected_components(csr_matrix(adj), directed=False)
    if n_comp != 1:
        raise DisconnectedTopologyError(f"topology has {n_comp} components")

    table, deg = _neighbor_table(adj)
    n = adj.shape[0]
    pairs = [(s, d) for s in range(n) for d in range(n) if s != d]
    streams = np.random.SeedSequence(seed).spawn(len(pairs))

    def run(i):
        s, d = pairs[i]
        rng = np.random.Generator(np.random.Philox(streams[i]))
        return _walk_pair(s, d, table, deg, walks_per_pair, rng)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, range(len(pairs))))
    else:
        results = [run(i) for i in range(len(pairs))]

    visits = np.zeros(n, dtype=np.int64)
    total_steps = 0
    for counts, steps in results:
        visits += counts
        total_steps += steps
    betweenness = visits / walks_per_pair
    weight = adj.sum(axis=1)
    return WalkStatistics(
        node_betweenness=betweenness,
        node_weight=weight,
        node_criticality=betweenness / weight,
        walk_count=len(pairs) * walks_per_pair,
        seed=seed,
        mean_walk_length=total_steps / (len(pairs) * walks_per_pair),
    )
