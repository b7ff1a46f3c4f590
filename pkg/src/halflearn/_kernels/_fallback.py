"""Pure-NumPy implementation of the monomial chain kernel."""

import numpy as np

# Cap on chunk_rows * chain_length, keeps the scratch matrix ~100 MB.
_SCRATCH_BUDGET = 12_000_000


def chain_sums(points: np.ndarray, parents: np.ndarray,
               coords: np.ndarray) -> np.ndarray:
    """Sum each chain node's monomial over all rows of ``points``.

    Node j evaluates to points[:, coords[j]] times the value of node
    parents[j]; a parent of -1 denotes the empty product. Parents always
    precede children, so a single left-to-right pass suffices.
    """
    points = np.ascontiguousarray(points, dtype=np.float64)
    n = points.shape[0]
    m = parents.shape[0]
    sums = np.zeros(m, dtype=np.float64)
    if m == 0:
        return sums
    chunk = max(1, _SCRATCH_BUDGET // m)
    values = np.empty((min(chunk, n), m), dtype=np.float64)
    for start in range(0, n, chunk):
        block = points[start:start + chunk]
        v = values[: block.shape[0]]
        for j in range(m):
            col = block[:, coords[j]]
            if parents[j] < 0:
                v[:, j] = col
            else:
                np.multiply(v[:, parents[j]], col, out=v[:, j])
        sums += v.sum(axis=0)
    return sums
