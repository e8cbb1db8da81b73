"""Markov Cluster algorithm (van Dongen)."""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from ..errors import ArgumentError, DetectorError
from ..graph import Graph
from ..partition import Partition
from ..rng import RngStream
from .result import DetectionResult


def mcl(g: Graph, rng: RngStream, inflation: float = 2.0,
        prune: float = 1e-5, tol: float = 1e-8,
        max_iter: int = 200) -> DetectionResult:
    """Alternate expansion (matrix squaring) and inflation (entrywise
    power + column renormalisation) of the self-loop-augmented random
    walk matrix until the flow stabilises; clusters are the connected
    components of the limit flow."""
    if g.m < 1:
        raise ArgumentError("detection needs at least one edge")
    if inflation <= 1.0:
        raise ArgumentError("inflation must exceed 1")
    n = g.n
    M = g.csr().astype(np.float64) + sp.identity(n, format="csr")
    M = M.multiply(1.0 / M.sum(axis=0)).tocsr()

    def inflate(X):
        X = X.power(inflation)
        X.data[X.data < prune] = 0.0
        X.eliminate_zeros()
        colsum = np.asarray(X.sum(axis=0)).ravel()
        colsum[colsum == 0.0] = 1.0
        return X.multiply(1.0 / colsum).tocsr()

    for _ in range(max_iter):
        prev = M
        M = inflate((M @ M).tocsr())
        diff = abs(M - prev)
        if diff.nnz == 0 or diff.max() < tol:
            break
    else:
        raise DetectorError("flow matrix did not converge")
    flow = M + M.T
    _, labels = connected_components(flow, directed=False)
    return DetectionResult(Partition(labels.astype(np.int64)))
