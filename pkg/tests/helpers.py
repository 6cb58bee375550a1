"""Independent reference computations shared by the tests."""

import numpy as np


def explicit_circulant(row):
    """Dense circ(row): row i is row 0 shifted right by i."""
    row = np.asarray(row)
    return np.array([np.roll(row, i) for i in range(row.size)])


def same_multiset(a, b, atol):
    """Greedy nearest matching of two complex multisets."""
    a = list(np.ravel(a).astype(complex))
    b = list(np.ravel(b).astype(complex))
    if len(a) != len(b):
        return False
    for x in a:
        dists = [abs(x - y) for y in b]
        i = int(np.argmin(dists))
        if dists[i] > atol:
            return False
        b.pop(i)
    return True


def rel_err(value, reference):
    return abs(value / reference - 1.0)
