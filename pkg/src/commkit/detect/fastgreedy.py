"""Greedy modularity agglomeration (Clauset-Newman-Moore)."""

from __future__ import annotations

import heapq

import numpy as np

from ..errors import ArgumentError
from ..graph import Graph
from ..rng import RngStream
from .dendrogram import Dendrogram
from .result import DetectionResult


def fastgreedy(g: Graph, rng: RngStream) -> DetectionResult:
    """Merge the community pair with the largest modularity gain until one
    cluster remains, then cut the dendrogram at the maximum-Q level."""
    if g.m < 1:
        raise ArgumentError("detection needs at least one edge")
    n, m = g.n, g.m
    two_m = 2.0 * m
    # e[i][j]: number of edges between live clusters i and j
    e = [dict() for _ in range(2 * n - 1)]
    for u, v in g.edges():
        u, v = int(u), int(v)
        e[u][v] = e[u].get(v, 0) + 1
        e[v][u] = e[v].get(u, 0) + 1
    a = np.zeros(2 * n - 1)
    a[:n] = g.degrees() / two_m
    alive = [True] * (2 * n - 1)

    def gain(i, j):
        return e[i][j] / m - 2.0 * a[i] * a[j]

    heap = []
    for i in range(n):
        for j in e[i]:
            if i < j:
                heapq.heappush(heap, (-gain(i, j), i, j))
    merges = []
    live = n
    while live > 1:
        pair = None
        while heap:
            negdq, i, j = heapq.heappop(heap)
            if alive[i] and alive[j] and j in e[i] and -negdq == gain(i, j):
                pair = (i, j)
                break
        if pair is None:
            # connect remaining components in index order (zero-gain merges)
            rest = [i for i in range(n + len(merges)) if alive[i]]
            i, j = rest[0], rest[1]
            pair = (i, j)
            e[i][j] = e[j].setdefault(i, 0)
            e[i].setdefault(j, 0)
        i, j = pair
        new = n + len(merges)
        merges.append((i, j))
        alive[i] = alive[j] = False
        alive[new] = True
        a[new] = a[i] + a[j]
        for old in (i, j):
            for k, w in e[old].items():
                if k in (i, j) or not alive[k]:
                    continue
                e[new][k] = e[new].get(k, 0) + w
                e[k].pop(old, None)
                e[k][new] = e[new][k]
        for k in e[new]:
            lo, hi = min(new, k), max(new, k)
            heapq.heappush(heap, (-gain(lo, hi), lo, hi))
        e[i] = e[j] = None
        live -= 1
    dendro = Dendrogram(n, np.array(merges, dtype=np.int64))
    part, q, level = dendro.best_modularity_cut(g)
    return DetectionResult(part, dendrogram=dendro,
                           info={"modularity": q, "level": level})
