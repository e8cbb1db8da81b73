"""Potts-model simulated annealing (Reichardt-Bornholdt, gamma = 1)."""

from __future__ import annotations

import numpy as np
from numba import njit

from ..errors import ArgumentError
from ..graph import Graph
from ..partition import Partition
from ..rng import RngStream
from .result import DetectionResult


@njit(cache=True)
def _anneal(indptr, indices, deg, spins, q, t0, cooling, sweeps_per_t,
            stop_accept, kernel_seed):
    np.random.seed(kernel_seed)
    n = indptr.size - 1
    two_m = float(deg.sum())
    spin_deg = np.zeros(q)
    for v in range(n):
        spin_deg[spins[v]] += deg[v]
    link = np.zeros(q)
    t = t0
    while True:
        accepted = 0
        proposed = 0
        for _ in range(sweeps_per_t):
            for _ in range(n):
                v = np.random.randint(0, n)
                s_old = spins[v]
                s_new = np.random.randint(0, q)
                if s_new == s_old:
                    continue
                proposed += 1
                k_old = 0.0
                k_new = 0.0
                for idx in range(indptr[v], indptr[v + 1]):
                    u = indices[idx]
                    if spins[u] == s_old:
                        k_old += 1.0
                    elif spins[u] == s_new:
                        k_new += 1.0
                dv = float(deg[v])
                dh = -(k_new - k_old) + dv * (spin_deg[s_new]
                                              - spin_deg[s_old] + dv) / two_m
                if dh <= 0.0 or np.random.random() < np.exp(-dh / t):
                    spins[v] = s_new
                    spin_deg[s_old] -= dv
                    spin_deg[s_new] += dv
                    accepted += 1
        t *= cooling
        if proposed == 0 or accepted / max(proposed, 1) < stop_accept:
            break
        if t < 1e-6:
            break
    return spins


def _calibrate_t0(g, spins, q, gen, target=0.5, probes=2000):
    """Temperature at which a random single-spin move is accepted with
    probability ~ target, found by bisection over probe move energies."""
    deg = g.degrees().astype(np.float64)
    two_m = 2.0 * g.m
    spin_deg = np.zeros(q)
    np.add.at(spin_deg, spins, deg)
    vs = gen.integers(0, g.n, size=probes)
    news = gen.integers(0, q, size=probes)
    dh = np.empty(probes)
    for i in range(probes):
        v, s_new = int(vs[i]), int(news[i])
        s_old = int(spins[v])
        nb = g.neighbors(v)
        k_old = float((spins[nb] == s_old).sum())
        k_new = float((spins[nb] == s_new).sum())
        dh[i] = -(k_new - k_old) + deg[v] * (spin_deg[s_new]
                                             - spin_deg[s_old] + deg[v]) / two_m

    def accept(t):
        return float(np.minimum(1.0, np.exp(-np.maximum(dh, 0.0) / t)).mean())

    lo, hi = 1e-4, 1e4
    for _ in range(60):
        mid = np.sqrt(lo * hi)
        if accept(mid) < target:
            lo = mid
        else:
            hi = mid
    return float(np.sqrt(lo * hi))


def spinglass(g: Graph, rng: RngStream, q: int = 25, t0: float | None = None,
              cooling: float = 0.99, sweeps_per_t: int = 50,
              stop_accept: float = 1e-3) -> DetectionResult:
    """Anneal spin assignments under the modularity Hamiltonian.

    Moving node v from spin a to b changes the energy by
    -(k_vb - k_va) + d_v (D_b - D_a + d_v) / 2m, so the ground state of
    the q-spin system is the maximum-modularity partition with at most q
    communities.  When t0 is not given it is calibrated so the initial
    acceptance rate is about one half.
    """
    if g.m < 1:
        raise ArgumentError("detection needs at least one edge")
    if q < 2:
        raise ArgumentError("need at least 2 spin states")
    gen = rng.generator()
    spins = gen.integers(0, q, size=g.n).astype(np.int64)
    if t0 is None:
        t0 = _calibrate_t0(g, spins, q, gen)
    spins = _anneal(g.indptr, g.indices, g.degrees().astype(np.float64),
                    spins, q, t0, cooling, sweeps_per_t, stop_accept,
                    rng.kernel_seed())
    return DetectionResult(Partition(np.asarray(spins)), info={"t0": t0})
