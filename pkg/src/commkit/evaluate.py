"""Partition-comparison measures, quality functions, and per-community
topological descriptors.

Everything is derived from the confusion matrix of two partitions or from
(graph, partition) edge counts.  Logarithms are base 2 throughout, so
entropy-based quantities are reported in bits; 0*log(0) is taken as 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError
from .graph import Graph
from .partition import Partition


def _check_same_nodes(p1: Partition, p2: Partition):
    if p1.n != p2.n:
        raise ArgumentError(f"partitions cover {p1.n} vs {p2.n} nodes")
    if p1.n == 0:
        raise ArgumentError("partitions must be non-empty")


def confusion(p1: Partition, p2: Partition) -> np.ndarray:
    """k1 x k2 grid of intersection counts n_ij = |C_i ∩ C'_j|."""
    _check_same_nodes(p1, p2)
    k1, k2 = p1.community_count, p2.community_count
    flat = p1.membership * k2 + p2.membership
    return np.bincount(flat, minlength=k1 * k2).reshape(k1, k2)


@dataclass(frozen=True)
class PairCounts:
    n11: int  # same cluster in both
    n00: int  # different in both
    n10: int  # same in first only
    n01: int  # same in second only


def _c2(x):
    return x * (x - 1) // 2


def pair_counts(p1: Partition, p2: Partition) -> PairCounts:
    cm = confusion(p1, p2)
    n = int(cm.sum())
    n11 = int(_c2(cm).sum())
    rows = int(_c2(cm.sum(axis=1)).sum())
    cols = int(_c2(cm.sum(axis=0)).sum())
    n10 = rows - n11
    n01 = cols - n11
    n00 = _c2(n) - n11 - n10 - n01
    return PairCounts(n11, n00, n10, n01)


def rand_index(p1: Partition, p2: Partition) -> float:
    if p1.n < 2:
        raise ArgumentError("rand index needs at least 2 nodes")
    pc = pair_counts(p1, p2)
    return (pc.n11 + pc.n00) / _c2(p1.n)


def adjusted_rand_index(p1: Partition, p2: Partition):
    """Hubert-Arabie chance-corrected Rand index.

    Degenerate denominator (both single-block or both all-singleton):
    1.0 when the partitions are identical, otherwise None.
    """
    cm = confusion(p1, p2)
    n = int(cm.sum())
    if n < 2:
        raise ArgumentError("adjusted rand index needs at least 2 nodes")
    index = float(_c2(cm).sum())
    a = float(_c2(cm.sum(axis=1)).sum())
    b = float(_c2(cm.sum(axis=0)).sum())
    expected = a * b / _c2(n)
    maximum = (a + b) / 2.0
    if abs(maximum - expected) < 1e-12:
        return 1.0 if p1.equivalent(p2) else None
    return (index - expected) / (maximum - expected)


def jaccard_index(p1: Partition, p2: Partition) -> float:
    if p1.n < 2:
        raise ArgumentError("jaccard index needs at least 2 nodes")
    pc = pair_counts(p1, p2)
    denom = pc.n11 + pc.n10 + pc.n01
    if denom == 0:
        return 1.0  # both partitions are all-singletons
    return pc.n11 / denom


def purity(found: Partition, truth: Partition) -> float:
    """Fraction of nodes matching the best-overlap truth community."""
    cm = confusion(found, truth)
    return float(cm.max(axis=1).sum() / cm.sum())


def van_dongen(p1: Partition, p2: Partition) -> int:
    cm = confusion(p1, p2)
    n = int(cm.sum())
    return 2 * n - int(cm.max(axis=1).sum()) - int(cm.max(axis=0).sum())


@dataclass(frozen=True)
class MutualInformationStats:
    mi: float
    h1: float
    h2: float
    vi: float
    nmi: float


def mutual_information_stats(p1: Partition, p2: Partition) -> MutualInformationStats:
    """MI, entropies, variation of information and NMI, all in bits.

    NMI normalises by the arithmetic mean of the entropies; the 0/0 case
    (two one-block partitions) is defined as 1.
    """
    cm = confusion(p1, p2).astype(np.float64)
    n = cm.sum()
    pij = cm / n
    pi = pij.sum(axis=1)
    pj = pij.sum(axis=0)

    def _ent(p):
        p = p[p > 0]
        return float(-(p * np.log2(p)).sum())

    h1, h2 = _ent(pi), _ent(pj)
    nz = pij > 0
    mi = float((pij[nz] * np.log2(pij[nz] / np.outer(pi, pj)[nz])).sum())
    mi = max(mi, 0.0)
    vi = max(h1 + h2 - 2.0 * mi, 0.0)
    if h1 + h2 <= 0.0:
        nmi = 1.0
    else:
        nmi = mi / ((h1 + h2) / 2.0)
    return MutualInformationStats(mi=mi, h1=h1, h2=h2, vi=vi, nmi=min(nmi, 1.0))


def nmi(p1: Partition, p2: Partition) -> float:
    return mutual_information_stats(p1, p2).nmi


def variation_of_information(p1: Partition, p2: Partition) -> float:
    return mutual_information_stats(p1, p2).vi


# -- quality functions ----------------------------------------------------


def _edge_tallies(g: Graph, p: Partition):
    """Per-community internal edge counts, boundary counts, degree sums."""
    if p.n != g.n:
        raise ArgumentError("partition does not cover the graph's nodes")
    mem = p.membership
    k = p.community_count
    e = g.edges()
    internal = np.zeros(k, dtype=np.int64)
    boundary = np.zeros(k, dtype=np.int64)
    if e.size:
        cu, cv = mem[e[:, 0]], mem[e[:, 1]]
        same = cu == cv
        np.add.at(internal, cu[same], 1)
        np.add.at(boundary, cu[~same], 1)
        np.add.at(boundary, cv[~same], 1)
    degsum = np.zeros(k, dtype=np.int64)
    np.add.at(degsum, mem, g.degrees())
    return internal, boundary, degsum


def modularity(g: Graph, p: Partition) -> float:
    """Newman-Girvan modularity against the degree-preserving null model."""
    if g.m < 1:
        raise ArgumentError("modularity needs at least one edge")
    internal, _, degsum = _edge_tallies(g, p)
    m = g.m
    return float((internal / m).sum() - ((degsum / (2.0 * m)) ** 2).sum())


@dataclass(frozen=True)
class QualityReport:
    internal_density: np.ndarray
    cut_ratio: np.ndarray
    conductance: np.ndarray
    aggregate_internal_density: float
    aggregate_cut_ratio: float
    aggregate_conductance: float


def quality_functions(g: Graph, p: Partition) -> QualityReport:
    """Per-community internal density, cut ratio and conductance.

    Aggregates are size-weighted means.  Singleton communities have
    internal density 0; communities with no incident edges at all have
    conductance 0.
    """
    if g.m < 1:
        raise ArgumentError("quality functions need at least one edge")
    internal, boundary, _ = _edge_tallies(g, p)
    sizes = p.sizes().astype(np.float64)
    n = g.n
    pairs = sizes * (sizes - 1) / 2
    with np.errstate(divide="ignore", invalid="ignore"):
        dens = np.where(pairs > 0, internal / np.where(pairs > 0, pairs, 1), 0.0)
        ext_pairs = sizes * (n - sizes)
        cut = np.where(ext_pairs > 0, boundary / np.where(ext_pairs > 0, ext_pairs, 1), 0.0)
        vol = 2 * internal + boundary
        cond = np.where(vol > 0, boundary / np.where(vol > 0, vol, 1), 0.0)
    w = sizes / sizes.sum()
    return QualityReport(
        internal_density=dens,
        cut_ratio=cut,
        conductance=cond,
        aggregate_internal_density=float((w * dens).sum()),
        aggregate_cut_ratio=float((w * cut).sum()),
        aggregate_conductance=float((w * cond).sum()),
    )


def surprise(g: Graph, p: Partition) -> float:
    """-log10 of the hypergeometric tail probability of the intra-link count.

    Drawing m links among C(n,2) node pairs of which M are intra-community,
    this is the probability of seeing at least the observed number of
    intra-community links.  Computed in log space throughout.
    """
    if g.m < 1:
        raise ArgumentError("surprise needs at least one edge")
    internal, _, _ = _edge_tallies(g, p)
    n, m = g.n, g.m
    F = _c2(n)
    M = int(_c2(p.sizes()).sum())
    k_intra = int(internal.sum())
    lg = math.lgamma

    def logc(a, b):
        if b < 0 or b > a:
            return -math.inf
        return lg(a + 1) - lg(b + 1) - lg(a - b + 1)

    hi = min(m, M)
    terms = []
    for i in range(k_intra, hi + 1):
        t = logc(M, i) + logc(F - M, m - i) - logc(F, m)
        if t > -math.inf:
            terms.append(t)
    if not terms:
        return math.inf
    top = max(terms)
    log_p = top + math.log(sum(math.exp(t - top) for t in terms))
    log_p = min(log_p, 0.0)
    return -log_p / math.log(10) + 0.0  # normalise -0.0


@dataclass(frozen=True)
class CommunityProfile:
    sizes: np.ndarray
    internal_edges: np.ndarray
    boundary_edges: np.ndarray
    mean_embeddedness: np.ndarray
    scaled_density: np.ndarray
    hub_dominance: np.ndarray
    node_embeddedness: np.ndarray


def community_profile(g: Graph, p: Partition) -> CommunityProfile:
    """Mesoscopic descriptors of every community.

    embeddedness(v) = internal degree / degree (0 for isolated nodes);
    scaled density = size * internal_edges / C(size, 2), which is 2 for a
    tree and |S| for a clique; hub dominance = max internal degree /
    (size - 1).  Singletons score 0 on scaled density and hub dominance.
    """
    if p.n != g.n:
        raise ArgumentError("partition does not cover the graph's nodes")
    mem = p.membership
    k = p.community_count
    internal, boundary, _ = _edge_tallies(g, p)
    # per-node internal degree
    intdeg = np.zeros(g.n, dtype=np.int64)
    e = g.edges()
    if e.size:
        same = mem[e[:, 0]] == mem[e[:, 1]]
        np.add.at(intdeg, e[same, 0], 1)
        np.add.at(intdeg, e[same, 1], 1)
    deg = g.degrees()
    emb = np.where(deg > 0, intdeg / np.maximum(deg, 1), 0.0)
    sizes = p.sizes()
    mean_emb = np.zeros(k)
    np.add.at(mean_emb, mem, emb)
    mean_emb /= sizes
    pairs = sizes * (sizes - 1) / 2
    scaled = np.where(pairs > 0, sizes * internal / np.where(pairs > 0, pairs, 1), 0.0)
    hub = np.zeros(k)
    np.maximum.at(hub, mem, intdeg.astype(np.float64))
    hub = np.where(sizes > 1, hub / np.maximum(sizes - 1, 1), 0.0)
    return CommunityProfile(
        sizes=sizes,
        internal_edges=internal,
        boundary_edges=boundary,
        mean_embeddedness=mean_emb,
        scaled_density=scaled,
        hub_dominance=hub,
        node_embeddedness=emb,
    )


# -- registry used by the harness and the CLI -----------------------------


def _measure_nmi(g, found, truth):
    return mutual_information_stats(found, truth).nmi


def _measure_vi(g, found, truth):
    return mutual_information_stats(found, truth).vi


def _measure_mi(g, found, truth):
    return mutual_information_stats(found, truth).mi


MEASURES = {
    "ri": lambda g, found, truth: rand_index(found, truth),
    "ari": lambda g, found, truth: adjusted_rand_index(found, truth),
    "jaccard": lambda g, found, truth: jaccard_index(found, truth),
    "purity": lambda g, found, truth: purity(found, truth),
    "vandongen": lambda g, found, truth: float(van_dongen(found, truth)),
    "mi": _measure_mi,
    "vi": _measure_vi,
    "nmi": _measure_nmi,
    "modularity": lambda g, found, truth: modularity(g, found),
    "surprise": lambda g, found, truth: surprise(g, found),
}
