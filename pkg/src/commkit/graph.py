"""Immutable undirected simple graph and its topological measures.

Node ids are dense integers 0..n-1.  Adjacency is stored CSR-style
(``indptr``/``indices``) with every neighbour list sorted, and each
undirected edge appears in both lists.  All functions here are pure, so a
shared graph can be analysed concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import ArgumentError
from .partition import Partition

INF = math.inf


class Graph:
    __slots__ = ("n", "m", "indptr", "indices")

    def __init__(self, n: int, indptr: np.ndarray, indices: np.ndarray):
        # internal constructor: callers must supply validated CSR arrays
        self.n = int(n)
        self.indptr = indptr
        self.indices = indices
        self.m = int(indices.size // 2)
        indptr.setflags(write=False)
        indices.setflags(write=False)

    # -- construction ---------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        """Build and validate a graph from an iterable of (u, v) pairs."""
        if n < 0:
            raise ArgumentError("node count must be non-negative")
        e = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                       dtype=np.int64)
        if e.size == 0:
            e = e.reshape(0, 2)
        if e.ndim != 2 or e.shape[1] != 2:
            raise ArgumentError("edges must be (u, v) pairs")
        if e.size and (e.min() < 0 or e.max() >= n):
            raise ArgumentError("edge endpoint out of range")
        if np.any(e[:, 0] == e[:, 1]):
            raise ArgumentError("self-loops are not allowed")
        lo = np.minimum(e[:, 0], e[:, 1])
        hi = np.maximum(e[:, 0], e[:, 1])
        key = lo * n + hi
        if np.unique(key).size != key.size:
            raise ArgumentError("duplicate edges are not allowed")
        src = np.concatenate([lo, hi])
        dst = np.concatenate([hi, lo])
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(indptr, src + 1, 1)
        np.cumsum(indptr, out=indptr)
        return cls(n, indptr, dst.copy())

    # -- basic accessors ------------------------------------------------

    def degree(self, v: int) -> int:
        self._check_node(v)
        return int(self.indptr[v + 1] - self.indptr[v])

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def neighbors(self, v: int) -> np.ndarray:
        self._check_node(v)
        return self.indices[self.indptr[v]: self.indptr[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.neighbors(u)
        i = np.searchsorted(nb, v)
        return bool(i < nb.size and nb[i] == v)

    def edges(self) -> np.ndarray:
        """(m, 2) array with u < v, lexicographically sorted."""
        src = np.repeat(np.arange(self.n), self.degrees())
        mask = src < self.indices
        return np.column_stack([src[mask], self.indices[mask]])

    def csr(self) -> sp.csr_matrix:
        data = np.ones(self.indices.size, dtype=np.float64)
        return sp.csr_matrix((data, self.indices, self.indptr), shape=(self.n, self.n))

    def adjacency_sets(self) -> list:
        return [set(self.neighbors(v).tolist()) for v in range(self.n)]

    def _check_node(self, v):
        if not 0 <= v < self.n:
            raise ArgumentError(f"node id {v} out of range for n={self.n}")

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


# -- edge-list file format ---------------------------------------------


def load_edge_list(path, n: int | None = None) -> Graph:
    """One "u v" pair per line, 0-based, each edge once; '#' is a comment."""
    edges = []
    seen = set()
    maxid = -1
    with open(path, "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ArgumentError(f"{path}:{lineno}: expected 'u v'")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise ArgumentError(f"{path}:{lineno}: non-integer endpoint") from None
            if u == v:
                raise ArgumentError(f"{path}:{lineno}: self-loop {u}-{v}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ArgumentError(f"{path}:{lineno}: duplicate edge {u}-{v}")
            seen.add(key)
            edges.append(key)
            maxid = max(maxid, u, v)
    if n is None:
        n = maxid + 1
    return Graph.from_edges(n, edges)


def save_edge_list(g: Graph, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        for u, v in g.edges():
            fh.write(f"{u} {v}\n")


# -- microscopic measures ----------------------------------------------


def local_clustering(g: Graph, v: int) -> float:
    """Fraction of realised links among v's neighbours (0 when deg < 2)."""
    nb = g.neighbors(v)
    d = nb.size
    if d < 2:
        return 0.0
    nbset = set(nb.tolist())
    links = 0
    for u in nb:
        links += len(nbset.intersection(g.neighbors(u).tolist()))
    return (links / 2) / (d * (d - 1) / 2)


def local_clustering_all(g: Graph) -> np.ndarray:
    adj = g.adjacency_sets()
    out = np.zeros(g.n)
    for v in range(g.n):
        d = len(adj[v])
        if d < 2:
            continue
        links = sum(len(adj[v] & adj[u]) for u in adj[v])
        out[v] = (links / 2) / (d * (d - 1) / 2)
    return out


def transitivity(g: Graph) -> float:
    """Arithmetic mean of the local clustering coefficients."""
    if g.n == 0:
        raise ArgumentError("transitivity undefined on the empty graph")
    return float(local_clustering_all(g).mean())


def shortest_distances(g: Graph, source: int) -> np.ndarray:
    """Unweighted BFS distances; unreachable nodes are inf."""
    g._check_node(source)
    dist = np.full(g.n, INF)
    dist[source] = 0
    frontier = [source]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for u in frontier:
            for w in g.neighbors(u):
                if dist[w] == INF:
                    dist[w] = d
                    nxt.append(int(w))
        frontier = nxt
    return dist


# -- all-pairs machinery (level-synchronous, vectorised) ------------------


def _bfs_all(g: Graph):
    """Distance and shortest-path-count matrices for all sources.

    Returns (D, sigma) where D[s, v] is the BFS distance (-1 if
    unreachable) and sigma[s, v] the number of shortest s-v paths.
    """
    n = g.n
    A = g.csr()
    D = np.full((n, n), -1, dtype=np.int32)
    np.fill_diagonal(D, 0)
    sigma = np.zeros((n, n))
    np.fill_diagonal(sigma, 1.0)
    frontier = np.eye(n)
    level = 0
    while True:
        x = frontier @ A  # path counts arriving one level further out
        x[D >= 0] = 0.0
        new = x > 0
        if not new.any():
            break
        level += 1
        D[new] = level
        sigma[new] = x[new]
        frontier = np.where(new, x, 0.0)
    return D, sigma


def betweenness_all(g: Graph) -> np.ndarray:
    """Node betweenness (endpoints excluded, ties split fractionally)."""
    n = g.n
    if n == 0:
        return np.zeros(0)
    A = g.csr()
    D, sigma = _bfs_all(g)
    maxlev = int(D.max())
    delta = np.zeros((n, n))
    with np.errstate(divide="ignore", invalid="ignore"):
        inv_sigma = np.where(sigma > 0, 1.0 / sigma, 0.0)
    for lev in range(maxlev, 0, -1):
        coef = np.where(D == lev, (1.0 + delta) * inv_sigma, 0.0)
        contrib = coef @ A  # A symmetric
        mask = D == lev - 1
        delta[mask] += (sigma * contrib)[mask]
    np.fill_diagonal(delta, 0.0)  # drop the source's own accumulation
    bc = delta.sum(axis=0)
    return bc / 2.0  # each unordered pair contributes from both sources


def edge_betweenness(g: Graph) -> dict:
    """Edge betweenness as {(u, v) with u < v: value}."""
    n = g.n
    ed = g.edges()
    if ed.size == 0:
        return {}
    A = g.csr()
    D, sigma = _bfs_all(g)
    maxlev = int(D.max())
    delta = np.zeros((n, n))
    with np.errstate(divide="ignore", invalid="ignore"):
        inv_sigma = np.where(sigma > 0, 1.0 / sigma, 0.0)
    eu, ev = ed[:, 0], ed[:, 1]
    vals = np.zeros(ed.shape[0])
    for lev in range(maxlev, 0, -1):
        coef = np.where(D == lev, (1.0 + delta) * inv_sigma, 0.0)
        # contribution of edge (u, v) when v sits one level below u
        su = np.where(D == lev - 1, sigma, 0.0)
        vals += np.einsum("se,se->e", su[:, eu], coef[:, ev])
        vals += np.einsum("se,se->e", su[:, ev], coef[:, eu])
        contrib = coef @ A
        mask = D == lev - 1
        delta[mask] += (sigma * contrib)[mask]
    vals /= 2.0  # both BFS roots of each unordered pair count the edge
    return {(int(u), int(v)): float(x) for (u, v), x in zip(ed, vals)}


def distance_matrix(g: Graph) -> np.ndarray:
    D, _ = _bfs_all(g)
    return D


# -- centrality and centralization ---------------------------------------


_CENTRALITY_KINDS = ("degree", "closeness", "betweenness")


def centrality(g: Graph, kind: str) -> np.ndarray:
    """Per-node centrality scores.

    closeness is normalised per connected component as
    (n_comp - 1) / sum of distances inside the component; isolated nodes
    score 0.
    """
    if g.n == 0:
        raise ArgumentError("centrality undefined on the empty graph")
    if kind == "degree":
        return g.degrees().astype(np.float64)
    if kind == "betweenness":
        return betweenness_all(g)
    if kind == "closeness":
        D = distance_matrix(g).astype(np.float64)
        reach = D >= 0
        D[~reach] = 0.0
        tot = D.sum(axis=1)
        cnt = reach.sum(axis=1) - 1  # exclude self
        out = np.zeros(g.n)
        pos = tot > 0
        out[pos] = cnt[pos] / tot[pos]
        return out
    raise ArgumentError(f"unknown centrality kind {kind!r}")


def centralization(g: Graph, kind: str) -> float:
    """Freeman centralization: 1 on a star, 0 on a complete graph."""
    n = g.n
    if n < 3:
        raise ArgumentError("centralization needs at least 3 nodes")
    c = centrality(g, kind)
    num = float((c.max() - c).sum())
    if kind == "degree":
        denom = (n - 1) * (n - 2)
    elif kind == "closeness":
        denom = (n - 1) * (n - 2) / (2 * n - 3)
    elif kind == "betweenness":
        denom = (n - 1) * (n - 1) * (n - 2) / 2
    else:
        raise ArgumentError(f"unknown centrality kind {kind!r}")
    return num / denom


def assortativity(g: Graph):
    """Pearson degree correlation over directed edge endpoints.

    Returns None when either endpoint sequence has zero variance
    (e.g. regular graphs); never a fabricated 0.
    """
    if g.m < 1:
        raise ArgumentError("assortativity needs at least one edge")
    deg = g.degrees().astype(np.float64)
    e = g.edges()
    x = np.concatenate([deg[e[:, 0]], deg[e[:, 1]]])
    y = np.concatenate([deg[e[:, 1]], deg[e[:, 0]]])
    vx = x.var()
    if vx <= 1e-15 * max(1.0, x.mean() ** 2):
        return None
    return float(((x - x.mean()) * (y - y.mean())).mean() / vx)


# -- connectivity ---------------------------------------------------------


def connected_components(g: Graph) -> Partition:
    """Label nodes by component, ids dense in order of lowest member."""
    labels = np.full(g.n, -1, dtype=np.int64)
    cid = 0
    for s in range(g.n):
        if labels[s] >= 0:
            continue
        stack = [s]
        labels[s] = cid
        while stack:
            u = stack.pop()
            for w in g.neighbors(u):
                if labels[w] < 0:
                    labels[w] = cid
                    stack.append(int(w))
        cid += 1
    return Partition(labels, compact=False)


def bridges_and_cutpoints(g: Graph):
    """Edges / nodes whose removal increases the component count.

    Iterative Tarjan lowpoint computation.  Bridges are returned with
    u < v, both lists sorted.
    """
    n = g.n
    disc = np.full(n, -1, dtype=np.int64)
    low = np.zeros(n, dtype=np.int64)
    parent = np.full(n, -1, dtype=np.int64)
    bridges = []
    cut = set()
    timer = 0
    for root in range(n):
        if disc[root] >= 0:
            continue
        root_children = 0
        stack = [(root, iter(g.neighbors(root)))]
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                w = int(w)
                if disc[w] < 0:
                    parent[w] = v
                    disc[w] = low[w] = timer
                    timer += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, iter(g.neighbors(w))))
                    advanced = True
                    break
                elif w != parent[v]:
                    low[v] = min(low[v], disc[w])
            if not advanced:
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    low[u] = min(low[u], low[v])
                    if low[v] > disc[u]:
                        bridges.append((min(u, v), max(u, v)))
                    if u != root and low[v] >= disc[u]:
                        cut.add(u)
        if root_children >= 2:
            cut.add(root)
    return sorted(bridges), sorted(cut)


# -- macroscopic summary --------------------------------------------------


@dataclass(frozen=True)
class GraphSummary:
    density: float
    mean_distance: float
    transitivity: float
    assortativity: float | None
    centralization: dict
    component_count: int


def density(g: Graph) -> float:
    if g.n < 2:
        return 0.0
    return 2.0 * g.m / (g.n * (g.n - 1))


def mean_distance(g: Graph) -> float:
    """Mean shortest-path length over reachable ordered pairs."""
    D = distance_matrix(g)
    mask = D > 0
    cnt = int(mask.sum())
    return float(D[mask].sum() / cnt) if cnt else 0.0


def graph_summary(g: Graph) -> GraphSummary:
    if g.n == 0:
        raise ArgumentError("summary undefined on the empty graph")
    cent = {}
    if g.n >= 3:
        for kind in _CENTRALITY_KINDS:
            cent[kind] = centralization(g, kind)
    return GraphSummary(
        density=density(g),
        mean_distance=mean_distance(g),
        transitivity=transitivity(g),
        assortativity=assortativity(g) if g.m >= 1 else None,
        centralization=cent,
        component_count=connected_components(g).community_count,
    )
