"""Multilevel modularity optimisation (Blondel et al.)."""

from __future__ import annotations

import numpy as np

from ..errors import ArgumentError
from ..graph import Graph
from ..partition import Partition
from ..rng import RngStream
from .result import DetectionResult


class _WeightedGraph:
    """Adjacency-dict multigraph used for the aggregation phase.

    Self-loops carry the internal weight of a collapsed community and
    contribute twice to the node strength, so modularity is preserved
    exactly across levels.
    """

    def __init__(self, n):
        self.n = n
        self.adj = [dict() for _ in range(n)]
        self.strength = np.zeros(n)
        self.total = 0.0  # sum of edge weights (self-loops once)

    def add(self, u, v, w):
        self.adj[u][v] = self.adj[u].get(v, 0.0) + w
        if u != v:
            self.adj[v][u] = self.adj[v].get(u, 0.0) + w
            self.strength[u] += w
            self.strength[v] += w
        else:
            self.strength[u] += 2.0 * w
        self.total += w

    @classmethod
    def from_graph(cls, g: Graph) -> "_WeightedGraph":
        wg = cls(g.n)
        for u, v in g.edges():
            wg.add(int(u), int(v), 1.0)
        return wg

    def modularity(self, labels) -> float:
        two_m = 2.0 * self.total
        internal = 0.0
        for u in range(self.n):
            for v, w in self.adj[u].items():
                if v < u:
                    continue
                if labels[u] == labels[v]:
                    internal += w
        degsum = np.zeros(int(labels.max()) + 1)
        np.add.at(degsum, labels, self.strength)
        return internal / self.total - float(((degsum / two_m) ** 2).sum())


def _local_moving(wg: _WeightedGraph, gen) -> np.ndarray:
    n = wg.n
    labels = np.arange(n, dtype=np.int64)
    comm_strength = wg.strength.copy()
    two_m = 2.0 * wg.total
    improved = True
    while improved:
        improved = False
        order = gen.permutation(n)
        for v in order:
            cv = labels[v]
            kv = wg.strength[v]
            # weight from v to each neighbouring community
            link = {}
            for u, w in wg.adj[v].items():
                if u == v:
                    continue
                link[labels[u]] = link.get(labels[u], 0.0) + w
            comm_strength[cv] -= kv
            best_c, best_gain = cv, link.get(cv, 0.0) - comm_strength[cv] * kv / two_m
            for c, w in link.items():
                gain = w - comm_strength[c] * kv / two_m
                if gain > best_gain + 1e-12:
                    best_c, best_gain = c, gain
            comm_strength[best_c] += kv
            if best_c != cv:
                labels[v] = best_c
                improved = True
    return labels


def _aggregate(wg: _WeightedGraph, labels: np.ndarray):
    uniq, dense = np.unique(labels, return_inverse=True)
    out = _WeightedGraph(uniq.size)
    for u in range(wg.n):
        for v, w in wg.adj[u].items():
            if v < u:
                continue
            a, b = int(dense[u]), int(dense[v])
            out.add(min(a, b), max(a, b), w)
    return out, dense


def louvain(g: Graph, rng: RngStream) -> DetectionResult:
    """Local moving plus graph aggregation, repeated until modularity
    stops improving."""
    if g.m < 1:
        raise ArgumentError("detection needs at least one edge")
    gen = rng.generator()
    wg = _WeightedGraph.from_graph(g)
    mapping = np.arange(g.n, dtype=np.int64)
    best_q = -1.0
    levels = 0
    while True:
        labels = _local_moving(wg, gen)
        q = wg.modularity(labels)
        if q <= best_q + 1e-12:
            break
        best_q = q
        levels += 1
        wg, dense = _aggregate(wg, labels)
        mapping = dense[mapping]
        if wg.n == 1:
            break
    part = Partition(mapping)
    return DetectionResult(part, info={"modularity": best_q, "levels": levels})
