"""Short-random-walk agglomeration (Pons-Latapy)."""

from __future__ import annotations

import heapq

import numpy as np

from ..errors import ArgumentError
from ..graph import Graph
from ..rng import RngStream
from .dendrogram import Dendrogram
from .result import DetectionResult


def walktrap(g: Graph, rng: RngStream, t: int = 4) -> DetectionResult:
    """Ward-style merging of adjacent communities under the walk metric

        r_AB^2 = sum_k (P_Ak - P_Bk)^2 / d_k

    where P_C is the t-step transition profile averaged over C."""
    if g.m < 1:
        raise ArgumentError("detection needs at least one edge")
    if t < 1:
        raise ArgumentError("walk length must be positive")
    n = g.n
    d = g.degrees().astype(np.float64)
    if (d == 0).any():
        raise ArgumentError("walk metric is undefined for isolated nodes")
    A = g.csr().astype(np.float64).toarray()
    T = A / d[:, None]
    P = np.linalg.matrix_power(T, t)
    inv_d = 1.0 / d

    # community state
    profiles = {i: P[i].copy() for i in range(n)}
    size = {i: 1 for i in range(n)}
    nbrs = {i: set() for i in range(n)}
    for u, v in g.edges():
        nbrs[int(u)].add(int(v))
        nbrs[int(v)].add(int(u))

    def delta(a, b):
        diff = profiles[a] - profiles[b]
        r2 = float((diff * diff * inv_d).sum())
        return size[a] * size[b] / (size[a] + size[b]) * r2 / n

    heap = []
    for i in range(n):
        for j in nbrs[i]:
            if i < j:
                heapq.heappush(heap, (delta(i, j), i, j))
    merges = []
    alive = set(range(n))
    while len(alive) > 1:
        pair = None
        while heap:
            dq, i, j = heapq.heappop(heap)
            if i in alive and j in alive and j in nbrs[i] \
                    and abs(dq - delta(i, j)) < 1e-12:
                pair = (i, j)
                break
        if pair is None:
            rest = sorted(alive)
            pair = (rest[0], rest[1])  # disconnected: join components
        i, j = pair
        new = n + len(merges)
        merges.append((i, j))
        profiles[new] = (size[i] * profiles[i] + size[j] * profiles[j]) \
            / (size[i] + size[j])
        size[new] = size[i] + size[j]
        nbrs[new] = (nbrs[i] | nbrs[j]) - {i, j}
        for k in nbrs[new]:
            nbrs[k].discard(i)
            nbrs[k].discard(j)
            nbrs[k].add(new)
            heapq.heappush(heap, (delta(min(new, k), max(new, k)),
                                  min(new, k), max(new, k)))
        for old in (i, j):
            alive.discard(old)
            del profiles[old], nbrs[old]
        alive.add(new)
    dendro = Dendrogram(n, np.array(merges, dtype=np.int64))
    part, q, level = dendro.best_modularity_cut(g)
    return DetectionResult(part, dendrogram=dendro,
                           info={"modularity": q, "level": level})
