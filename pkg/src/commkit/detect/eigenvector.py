"""Leading-eigenvector bisection of the modularity matrix (Newman)."""

from __future__ import annotations

import numpy as np

from ..errors import ArgumentError
from ..graph import Graph
from ..partition import Partition
from ..rng import RngStream
from .result import DetectionResult


def _leading_eigen(A_sub, d_sub, two_m, gen, tol=1e-9, max_iter=2000):
    """Leading eigenpair of the generalised modularity matrix

        B(g)_ij = A_ij - d_i d_j / 2m - delta_ij (k_i(g) - d_i D_g / 2m)

    restricted to a group, via shifted power iteration (matrix-free)."""
    ng = d_sub.size
    D_g = d_sub.sum()
    k_in = np.asarray(A_sub.sum(axis=1)).ravel()
    diag = k_in - d_sub * D_g / two_m

    def bx(x):
        return A_sub @ x - d_sub * (d_sub @ x) / two_m - diag * x

    # Gershgorin bound keeps the shifted operator positive semidefinite
    row_abs = k_in + d_sub * D_g / two_m + np.abs(diag)
    shift = float(row_abs.max()) + 1.0
    x = gen.standard_normal(ng)
    x /= np.linalg.norm(x)
    lam = 0.0
    for _ in range(max_iter):
        y = bx(x) + shift * x
        ny = np.linalg.norm(y)
        if ny < 1e-15:
            return 0.0, x
        y /= ny
        if np.linalg.norm(y - x) < tol:
            x = y
            break
        x = y
    lam = float(x @ bx(x))
    return lam, x


def leading_eigenvector(g: Graph, rng: RngStream,
                        tol: float = 1e-7) -> DetectionResult:
    """Recursively split groups by the sign of the leading eigenvector,
    stopping when the split is indivisible or does not raise modularity."""
    if g.m < 1:
        raise ArgumentError("detection needs at least one edge")
    gen = rng.generator()
    A = g.csr().astype(np.float64)
    d = g.degrees().astype(np.float64)
    two_m = 2.0 * g.m
    labels = np.zeros(g.n, dtype=np.int64)
    next_label = 1
    stack = [np.arange(g.n, dtype=np.int64)]
    while stack:
        group = stack.pop()
        if group.size < 2:
            continue
        A_sub = A[group][:, group]
        lam, vec = _leading_eigen(A_sub, d[group], two_m, gen)
        if lam <= tol:
            continue
        side = vec > 0
        if side.all() or not side.any():
            continue
        # modularity change of the proposed bisection
        s = np.where(side, 1.0, -1.0)
        diag = np.asarray(A_sub.sum(axis=1)).ravel() - d[group] * d[group].sum() / two_m
        bs = A_sub @ s - d[group] * (d[group] @ s) / two_m - diag * s
        dq = float(s @ bs) / (2.0 * two_m)
        if dq <= tol / two_m:
            continue
        part_b = group[side]
        labels[part_b] = next_label
        next_label += 1
        stack.append(group[~side])
        stack.append(part_b)
    return DetectionResult(Partition(labels))
