"""Independent brute-force reference implementations used only by tests.

Everything here is deliberately naive: O(n^2) pair loops, full set-partition
enumeration, delete-and-recount bridge checks.  They serve as oracles for
the optimised library code.
"""

import itertools
import math

import numpy as np

from commkit.graph import Graph
from commkit.partition import Partition


def pair_loop_counts(p1: Partition, p2: Partition):
    """O(n^2) pair classification: (n11, n00, n10, n01)."""
    n = p1.n
    m1, m2 = p1.membership, p2.membership
    n11 = n00 = n10 = n01 = 0
    for i in range(n):
        for j in range(i + 1, n):
            same1 = m1[i] == m1[j]
            same2 = m2[i] == m2[j]
            if same1 and same2:
                n11 += 1
            elif same1:
                n10 += 1
            elif same2:
                n01 += 1
            else:
                n00 += 1
    return n11, n00, n10, n01


def modularity_loop(g: Graph, p: Partition) -> float:
    """Direct double sum over node pairs: (A_ij - d_i d_j / 2m) delta_ij."""
    m = g.m
    deg = g.degrees()
    mem = p.membership
    total = 0.0
    for i in range(g.n):
        for j in range(g.n):
            if mem[i] != mem[j]:
                continue
            a = 1.0 if g.has_edge(i, j) else 0.0
            total += a - deg[i] * deg[j] / (2.0 * m)
    return total / (2.0 * m)


def set_partitions(items):
    """All set partitions of a sequence (restricted growth strings)."""
    items = list(items)
    n = len(items)
    if n == 0:
        yield []
        return
    codes = [0] * n
    maxes = [0] * n
    while True:
        blocks = [[] for _ in range(max(codes) + 1)]
        for item, c in zip(items, codes):
            blocks[c].append(item)
        yield blocks
        i = n - 1
        while i > 0 and codes[i] > maxes[i - 1]:
            codes[i] = 0
            i -= 1
        if i == 0:
            return
        codes[i] += 1
        maxes[i] = max(maxes[i - 1], codes[i])
        for j in range(i + 1, n):
            maxes[j] = maxes[i]


def best_modularity_partition(g: Graph):
    """Exhaustive max-modularity search; returns (Partition, Q)."""
    from commkit.evaluate import modularity
    best_q = -math.inf
    best = None
    for blocks in set_partitions(range(g.n)):
        mem = np.empty(g.n, dtype=np.int64)
        for label, block in enumerate(blocks):
            for v in block:
                mem[v] = label
        p = Partition(mem)
        q = modularity(g, p)
        if q > best_q:
            best_q = q
            best = p
    return best, best_q


def bridges_by_deletion(g: Graph):
    """An edge is a bridge iff deleting it increases the component count."""
    from commkit.graph import connected_components
    base = connected_components(g).community_count
    edges = [tuple(e) for e in g.edges()]
    out = set()
    for e in edges:
        rest = [f for f in edges if f != e]
        if connected_components(
                Graph.from_edges(g.n, rest)).community_count > base:
            out.add(e)
    return out


def pair_betweenness(g: Graph):
    """Edge betweenness by explicit shortest-path enumeration."""
    import collections
    counts = {tuple(e): 0.0 for e in g.edges()}
    for s in range(g.n):
        for t in range(s + 1, g.n):
            paths = _all_shortest_paths(g, s, t)
            if not paths:
                continue
            w = 1.0 / len(paths)
            for path in paths:
                for u, v in zip(path, path[1:]):
                    key = (u, v) if u < v else (v, u)
                    counts[key] += w
    return counts


def _all_shortest_paths(g: Graph, s, t):
    import collections
    dist = {s: 0}
    parents = collections.defaultdict(list)
    queue = collections.deque([s])
    while queue:
        u = queue.popleft()
        for v in g.neighbors(u):
            v = int(v)
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
            if dist[v] == dist[u] + 1:
                parents[v].append(u)
    if t not in dist:
        return []
    paths = []

    def walk(v, acc):
        if v == s:
            paths.append([s] + acc[::-1] + [])
            return
        for u in parents[v]:
            walk(u, acc + [v])

    walk(t, [])
    return [p for p in paths]
