"""Divisive detectors: edge betweenness (Girvan-Newman) and edge
clustering coefficient (Radicchi et al.)."""

from __future__ import annotations

import heapq

import numpy as np

from ..errors import ArgumentError
from ..graph import Graph, edge_betweenness as _edge_betweenness_scores
from ..rng import RngStream
from .dendrogram import dendrogram_from_removals
from .result import DetectionResult


def edge_betweenness(g: Graph, rng: RngStream,
                     batch: int = 1) -> DetectionResult:
    """Remove the highest-betweenness edge (recomputing after every
    `batch` removals), build the implied dendrogram and cut it at the
    maximum-modularity level."""
    if g.m < 1:
        raise ArgumentError("detection needs at least one edge")
    if batch < 1:
        raise ArgumentError("batch must be positive")
    n = g.n
    edges = {(int(u), int(v)) for u, v in g.edges()}
    removals = []
    while edges:
        cur = Graph.from_edges(n, sorted(edges))
        scores = _edge_betweenness_scores(cur)
        ranked = sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))
        for (u, v), _ in ranked[:batch]:
            edges.discard((u, v))
            removals.append((u, v))
    dendro = dendrogram_from_removals(n, removals)
    part, q, level = dendro.best_modularity_cut(g)
    return DetectionResult(part, dendrogram=dendro,
                           info={"modularity": q, "level": level})


def radetal(g: Graph, rng: RngStream) -> DetectionResult:
    """Remove the edge with the smallest edge clustering coefficient

        C_uv = (z_uv + 1) / min(d_u - 1, d_v - 1)

    (z_uv = triangles through the edge; edges with a degree-1 endpoint
    score +inf), updating scores locally, then cut the implied
    dendrogram at the maximum-modularity level."""
    if g.m < 1:
        raise ArgumentError("detection needs at least one edge")
    n = g.n
    adj = g.adjacency_sets()
    deg = {v: len(adj[v]) for v in range(n)}

    def score(u, v):
        lo = min(deg[u], deg[v]) - 1
        if lo <= 0:
            return np.inf
        z = len(adj[u] & adj[v])
        return (z + 1.0) / lo

    version = {}
    heap = []
    for u, v in g.edges():
        u, v = int(u), int(v)
        version[(u, v)] = 0
        heapq.heappush(heap, (score(u, v), u, v, 0))
    removals = []
    alive = set(version)
    while alive:
        c, u, v, ver = heapq.heappop(heap)
        if (u, v) not in alive or version[(u, v)] != ver:
            continue
        alive.discard((u, v))
        removals.append((u, v))
        adj[u].discard(v)
        adj[v].discard(u)
        deg[u] -= 1
        deg[v] -= 1
        for w in (u, v):
            for x in adj[w]:
                key = (min(w, x), max(w, x))
                if key in alive:
                    version[key] += 1
                    heapq.heappush(heap, (score(*key), key[0], key[1],
                                          version[key]))
    dendro = dendrogram_from_removals(n, removals)
    part, q, level = dendro.best_modularity_cut(g)
    return DetectionResult(part, dendrogram=dendro,
                           info={"modularity": q, "level": level})
