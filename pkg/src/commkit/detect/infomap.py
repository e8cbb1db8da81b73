"""Two-level map equation minimisation (Rosvall-Bergstrom)."""

from __future__ import annotations

import numpy as np

from ..errors import ArgumentError
from ..graph import Graph
from ..partition import Partition
from ..rng import RngStream
from .result import DetectionResult

_LOG2 = np.log(2.0)


def _plogp(x: float) -> float:
    return x * np.log(x) / _LOG2 if x > 0.0 else 0.0


def description_length(g: Graph, p: Partition) -> float:
    """Two-level map equation in bits for an unweighted undirected graph.

    With node visit rates p_a = d_a/2m, module rates w_m and exit rates
    q_m = cut_m/2m,

        L = plogp(q) - 2 sum_m plogp(q_m) + sum_m plogp(w_m + q_m)
            - sum_a plogp(p_a),   q = sum_m q_m.
    """
    if g.m < 1:
        raise ArgumentError("description length needs at least one edge")
    two_m = 2.0 * g.m
    d = g.degrees().astype(np.float64)
    k = p.community_count
    degsum = np.zeros(k)
    np.add.at(degsum, p.membership, d)
    e = g.edges()
    cut = np.zeros(k)
    mu = p.membership[e[:, 0]]
    mv = p.membership[e[:, 1]]
    ext = mu != mv
    np.add.at(cut, mu[ext], 1.0)
    np.add.at(cut, mv[ext], 1.0)
    q_m = cut / two_m
    w_m = degsum / two_m
    q = float(q_m.sum())
    return (_plogp(q)
            - 2.0 * sum(_plogp(x) for x in q_m)
            + sum(_plogp(x) for x in (w_m + q_m))
            - sum(_plogp(x) for x in d / two_m))


class _State:
    """Module bookkeeping on a weighted aggregate graph.

    Edge weights are original edge counts; flows divide by 2m once, when
    the codelength terms are formed.
    """

    def __init__(self, adj, deg, loops, two_m, labels):
        self.adj = adj          # list of dicts, no self entries
        self.deg = deg          # includes loops twice
        self.loops = loops
        self.two_m = two_m
        self.labels = labels.copy()
        k = int(labels.max()) + 1
        self.degsum = np.zeros(k)
        self.cut = np.zeros(k)
        np.add.at(self.degsum, labels, deg)
        for v, nb in enumerate(adj):
            for u, w in nb.items():
                if labels[u] != labels[v]:
                    self.cut[labels[v]] += w
        self.q_total = self.cut.sum() / two_m

    def codelength(self, node_term: float) -> float:
        L = _plogp(self.q_total) - node_term
        for m in range(self.degsum.size):
            qm = self.cut[m] / self.two_m
            L += -2.0 * _plogp(qm) + _plogp(qm + self.degsum[m] / self.two_m)
        return L

    def try_moves(self, gen) -> bool:
        """One full sweep of greedy single-node moves; True if any move
        lowered the codelength."""
        n = len(self.adj)
        moved = False
        for v in gen.permutation(n):
            a = self.labels[v]
            extdeg = self.deg[v] - 2.0 * self.loops[v]
            link = {}
            for u, w in self.adj[v].items():
                link[self.labels[u]] = link.get(self.labels[u], 0.0) + w
            k_va = link.get(a, 0.0)
            best_b, best_gain = a, 0.0
            for b in link:
                if b == a:
                    continue
                gain = self._move_gain(a, b, extdeg, k_va, link[b],
                                       self.deg[v])
                if gain < best_gain - 1e-12:
                    best_b, best_gain = b, gain
            if best_b != a:
                self._apply(v, a, best_b, extdeg, k_va, link[best_b],
                            self.deg[v])
                moved = True
        return moved

    def _terms(self, m, cut, degsum):
        qm = cut / self.two_m
        return -2.0 * _plogp(qm) + _plogp(qm + degsum / self.two_m)

    def _move_gain(self, a, b, extdeg, k_va, k_vb, dv):
        cut_a_new = self.cut[a] - extdeg + 2.0 * k_va
        cut_b_new = self.cut[b] + extdeg - 2.0 * k_vb
        q_new = self.q_total + (cut_a_new - self.cut[a]
                                + cut_b_new - self.cut[b]) / self.two_m
        old = (_plogp(self.q_total)
               + self._terms(a, self.cut[a], self.degsum[a])
               + self._terms(b, self.cut[b], self.degsum[b]))
        new = (_plogp(q_new)
               + self._terms(a, cut_a_new, self.degsum[a] - dv)
               + self._terms(b, cut_b_new, self.degsum[b] + dv))
        return new - old

    def _apply(self, v, a, b, extdeg, k_va, k_vb, dv):
        cut_a_new = self.cut[a] - extdeg + 2.0 * k_va
        cut_b_new = self.cut[b] + extdeg - 2.0 * k_vb
        self.q_total += (cut_a_new - self.cut[a]
                         + cut_b_new - self.cut[b]) / self.two_m
        self.cut[a] = cut_a_new
        self.cut[b] = cut_b_new
        self.degsum[a] -= dv
        self.degsum[b] += dv
        self.labels[v] = b


def _aggregate(adj, deg, loops, labels):
    uniq, dense = np.unique(labels, return_inverse=True)
    k = uniq.size
    new_adj = [dict() for _ in range(k)]
    new_deg = np.zeros(k)
    new_loops = np.zeros(k)
    np.add.at(new_deg, dense, deg)
    np.add.at(new_loops, dense, loops)
    for v, nb in enumerate(adj):
        a = dense[v]
        for u, w in nb.items():
            b = dense[u]
            if a == b:
                if v < u:
                    new_loops[a] += w
            else:
                new_adj[a][b] = new_adj[a].get(b, 0.0) + w
    return new_adj, new_deg, new_loops, dense


def infomap(g: Graph, rng: RngStream, outer_loops: int = 10) -> DetectionResult:
    """Greedy node moves plus module aggregation, repeated until the
    description length stops improving."""
    if g.m < 1:
        raise ArgumentError("detection needs at least one edge")
    gen = rng.generator()
    two_m = 2.0 * g.m
    d = g.degrees().astype(np.float64)
    node_term = float(sum(_plogp(x) for x in d / two_m))
    adj = [dict() for _ in range(g.n)]
    for u, v in g.edges():
        adj[int(u)][int(v)] = adj[int(u)].get(int(v), 0.0) + 1.0
        adj[int(v)][int(u)] = adj[int(v)].get(int(u), 0.0) + 1.0
    deg = d.copy()
    loops = np.zeros(g.n)
    mapping = np.arange(g.n, dtype=np.int64)
    best_L = description_length(g, Partition(mapping.copy()))
    best_mapping = mapping.copy()
    for _ in range(outer_loops):
        state = _State(adj, deg, loops, two_m,
                       np.arange(len(adj), dtype=np.int64))
        while state.try_moves(gen):
            pass
        adj, deg, loops, dense = _aggregate(adj, deg, loops, state.labels)
        mapping = dense[mapping]
        L = state.codelength(node_term)
        if L < best_L - 1e-10:
            best_L = L
            best_mapping = mapping.copy()
        else:
            break
        if len(adj) == 1:
            break
    return DetectionResult(Partition(best_mapping),
                           info={"description_length": best_L})
