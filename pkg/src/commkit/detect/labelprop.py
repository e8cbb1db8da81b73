"""Asynchronous label propagation (Raghavan-Albert-Kumara)."""

from __future__ import annotations

import numpy as np

from ..errors import ArgumentError
from ..graph import Graph
from ..partition import Partition
from ..rng import RngStream
from .result import DetectionResult


def label_propagation(g: Graph, rng: RngStream,
                      max_sweeps: int = 100) -> DetectionResult:
    """Each node repeatedly adopts the most frequent label among its
    neighbours (ties broken at random) until every node already holds a
    majority label or the sweep budget runs out."""
    if g.m < 1:
        raise ArgumentError("detection needs at least one edge")
    gen = rng.generator()
    n = g.n
    labels = np.arange(n, dtype=np.int64)
    sweeps = 0
    for sweeps in range(1, max_sweeps + 1):
        stable = True
        for v in gen.permutation(n):
            nb = g.neighbors(v)
            if nb.size == 0:
                continue
            counts = {}
            for u in nb:
                lu = labels[u]
                counts[lu] = counts.get(lu, 0) + 1
            top = max(counts.values())
            winners = sorted(label for label, c in counts.items() if c == top)
            if labels[v] in winners:
                continue
            labels[v] = winners[int(gen.integers(len(winners)))]
            stable = False
        if stable:
            break
    return DetectionResult(Partition(labels), info={"sweeps": sweeps})
