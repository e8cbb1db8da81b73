"""Merge dendrograms shared by agglomerative and divisive detectors."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ArgumentError
from ..graph import Graph
from ..partition import Partition


@dataclass(frozen=True)
class Dendrogram:
    """A sequence of binary merges over n leaf clusters.

    Merge step s (0-based) joins clusters ``merges[s]`` into a new
    cluster with id ``n + s``.  Level L is the clustering obtained after
    applying the first L merges, so level 0 is all-singletons.
    """

    n: int
    merges: np.ndarray  # (steps, 2) int64

    def __post_init__(self):
        m = np.asarray(self.merges, dtype=np.int64).reshape(-1, 2)
        object.__setattr__(self, "merges", m)
        if m.shape[0] > self.n - 1:
            raise ArgumentError("too many merges for the number of leaves")

    @property
    def levels(self) -> int:
        return self.merges.shape[0] + 1

    def _parents(self) -> np.ndarray:
        total = self.n + self.merges.shape[0]
        parent = np.full(total, -1, dtype=np.int64)
        for s, (a, b) in enumerate(self.merges):
            parent[a] = self.n + s
            parent[b] = self.n + s
        return parent

    def cut(self, level: int) -> Partition:
        """Partition after the first `level` merges."""
        if not 0 <= level <= self.merges.shape[0]:
            raise ArgumentError("cut level out of range")
        return _cut_union_find(self, level)

    def union_times(self, pairs: np.ndarray) -> np.ndarray:
        """For each (u, v) pair the 1-based merge step at which u and v
        first share a cluster, or levels (past the end) if they never do."""
        parent = self._parents()
        never = self.merges.shape[0] + 1

        def anc(x):
            steps = {}
            cur = x
            while cur != -1:
                steps[cur] = 0 if cur < self.n else cur - self.n + 1
                cur = parent[cur]
            return steps

        out = np.empty(len(pairs), dtype=np.int64)
        for i, (u, v) in enumerate(pairs):
            su = anc(int(u))
            cur = int(v)
            t = never
            while cur != -1:
                if cur in su:
                    t = max(su[cur], 0 if cur < self.n else cur - self.n + 1)
                    break
                cur = parent[cur]
            out[i] = t
        return out

    def modularity_profile(self, g: Graph) -> np.ndarray:
        """Newman modularity of the cut at every level."""
        if g.m < 1:
            raise ArgumentError("modularity needs at least one edge")
        steps = self.merges.shape[0]
        times = self.union_times(g.edges())
        internal_added = np.bincount(times[times <= steps], minlength=steps + 1)
        cum_internal = np.cumsum(internal_added)
        degsum = np.zeros(self.n + steps, dtype=np.float64)
        degsum[:self.n] = g.degrees()
        two_m = 2.0 * g.m
        sumsq = float(((degsum[:self.n] / two_m) ** 2).sum())
        q = np.empty(steps + 1)
        q[0] = cum_internal[0] / g.m - sumsq
        for s, (a, b) in enumerate(self.merges):
            da, db = degsum[a], degsum[b]
            degsum[self.n + s] = da + db
            sumsq += ((da + db) ** 2 - da ** 2 - db ** 2) / two_m ** 2
            q[s + 1] = cum_internal[s + 1] / g.m - sumsq
        return q

    def best_modularity_cut(self, g: Graph) -> tuple[Partition, float, int]:
        q = self.modularity_profile(g)
        level = int(np.argmax(q))
        return self.cut(level), float(q[level]), level


def _cut_union_find(d: Dendrogram, level: int) -> Partition:
    parent = np.arange(d.n + level, dtype=np.int64)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in range(level):
        a, b = d.merges[s]
        ra, rb = find(a), find(b)
        parent[ra] = d.n + s
        parent[rb] = d.n + s
    mem = np.array([find(v) for v in range(d.n)], dtype=np.int64)
    return Partition(mem, compact=True)


def dendrogram_from_removals(n: int, removal_order) -> Dendrogram:
    """Build the merge dendrogram implied by a divisive edge-removal order.

    Reading the removals backwards as additions, every union of two
    components is a merge; the last edge removed corresponds to the first
    merge of the dendrogram.
    """
    parent = np.arange(n, dtype=np.int64)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    cluster_of = np.arange(n, dtype=np.int64)  # current cluster id of each root
    merges = []
    for u, v in reversed(list(removal_order)):
        ru, rv = find(int(u)), find(int(v))
        if ru == rv:
            continue
        a, b = cluster_of[ru], cluster_of[rv]
        new_id = n + len(merges)
        merges.append((a, b))
        parent[ru] = rv
        cluster_of[rv] = new_id
    return Dendrogram(n, np.array(merges, dtype=np.int64).reshape(-1, 2))
