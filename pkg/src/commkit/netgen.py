"""Random-graph and planted-community generators.

All generators are pure functions of (parameters, RngStream): the same
stream yields a bit-identical edge list on every platform.  Outputs are
always simple undirected graphs with dense node ids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ArgumentError, GenerationError
from .graph import Graph
from .partition import Partition
from .rng import RngStream


@dataclass(frozen=True)
class PlantedNetwork:
    graph: Graph
    planted: Partition
    realized_mu: float
    info: dict = field(default_factory=dict)


def _pairs_from_indices(n: int, idx: np.ndarray) -> np.ndarray:
    """Decode linear indices over the u<v upper triangle into pairs."""
    rows = np.arange(n, dtype=np.int64)
    rowstart = rows * n - rows * (rows + 1) // 2  # start of row u
    u = np.searchsorted(rowstart, idx, side="right") - 1
    v = idx - rowstart[u] + u + 1
    return np.column_stack([u, v])


def erdos_renyi(n: int, p: float, rng: RngStream) -> Graph:
    """Each of the C(n,2) pairs is linked independently with probability p."""
    if not 0.0 <= p <= 1.0:
        raise ArgumentError("edge probability must lie in [0, 1]")
    if n < 0:
        raise ArgumentError("node count must be non-negative")
    gen = rng.generator()
    total = n * (n - 1) // 2
    if total == 0 or p == 0.0:
        return Graph.from_edges(n, [])
    if p == 1.0:
        idx = np.arange(total, dtype=np.int64)
    else:
        k = gen.binomial(total, p)
        idx = np.sort(gen.choice(total, size=k, replace=False))
    return Graph.from_edges(n, _pairs_from_indices(n, idx))


def expected_degree_graph(weights, rng: RngStream) -> Graph:
    """Chung-Lu graph: pair (u, v) linked with probability w_u*w_v / sum(w)."""
    w = np.asarray(weights, dtype=np.float64)
    if w.ndim != 1 or (w.size and w.min() < 0):
        raise ArgumentError("weights must be non-negative reals")
    n = w.size
    total = w.sum()
    if total > 0:
        top = np.argsort(w)[::-1][:2]
        if n >= 2 and w[top[0]] * w[top[1]] / total > 1.0 + 1e-12:
            raise ArgumentError(
                f"edge probability exceeds 1 for pair ({top[0]}, {top[1]})"
            )
    gen = rng.generator()
    edges = []
    for u in range(n - 1):
        if w[u] == 0:
            continue
        pr = w[u] * w[u + 1:] / total
        hits = np.nonzero(gen.random(n - u - 1) < pr)[0]
        for h in hits:
            edges.append((u, u + 1 + int(h)))
    return Graph.from_edges(n, edges)


# -- configuration model ---------------------------------------------------


def is_graphical(degrees) -> bool:
    """Erdos-Gallai test for simple-graph realisability."""
    d = np.sort(np.asarray(degrees, dtype=np.int64))[::-1]
    n = d.size
    if n == 0:
        return True
    if d.min() < 0 or d.max() >= n or d.sum() % 2 != 0:
        return False
    cum = np.cumsum(d)
    for k in range(1, n + 1):
        rhs = k * (k - 1) + np.minimum(d[k:], k).sum()
        if cum[k - 1] > rhs:
            return False
    return True


def configuration_model(degrees, rng: RngStream) -> Graph:
    """Uniform stub matching, repaired to a simple graph.

    The output degree sequence equals the input exactly.  Offending stub
    pairings are re-drawn for up to 100 sweeps, then remaining self-loops
    and multi-edges are removed by targeted edge swaps.
    """
    deg = np.asarray(degrees, dtype=np.int64)
    if deg.size and deg.min() < 0:
        raise ArgumentError("degrees must be non-negative")
    if deg.sum() % 2 != 0:
        raise ArgumentError("degree sum must be even")
    if not is_graphical(deg):
        raise ArgumentError("degree sequence is not graphical")
    n = deg.size
    gen = rng.generator()

    def split_bad(pairs):
        lo = np.minimum(pairs[:, 0], pairs[:, 1])
        hi = np.maximum(pairs[:, 0], pairs[:, 1])
        key = lo * n + hi
        order = np.argsort(key, kind="stable")
        sorted_key = key[order]
        dup = np.zeros(key.size, dtype=bool)
        dup[order[1:]] = sorted_key[1:] == sorted_key[:-1]
        bad = dup | (pairs[:, 0] == pairs[:, 1])
        return bad

    for _ in range(50):  # fresh stub shuffles until the repair succeeds
        stubs = np.repeat(np.arange(n, dtype=np.int64), deg)
        gen.shuffle(stubs)
        pairs = stubs.reshape(-1, 2)
        for _ in range(100):
            bad = split_bad(pairs)
            if not bad.any():
                break
            loose = pairs[bad].ravel()
            gen.shuffle(loose)
            pairs = np.vstack([pairs[~bad], loose.reshape(-1, 2)])
        bad = split_bad(pairs)
        if not bad.any():
            return Graph.from_edges(n, pairs)
        # targeted swaps against randomly chosen good edges
        good = [tuple(x) for x in pairs[~bad]]
        edge_set = {(min(a, b), max(a, b)) for a, b in good}
        queue = [tuple(x) for x in pairs[bad]]
        budget = 200 * len(queue) + 1000
        while queue and budget > 0:
            budget -= 1
            u, v = queue.pop()
            j = int(gen.integers(len(good)))
            x, y = good[j]
            # replace (u,v),(x,y) by (u,x),(v,y)
            cand = [(u, x), (v, y)]
            ok = all(a != b and (min(a, b), max(a, b)) not in edge_set
                     for a, b in cand)
            ok = ok and (u, v) != (x, y) and len({u, v, x, y}) >= 3
            if not ok:
                queue.insert(0, (u, v))
                continue
            edge_set.discard((min(x, y), max(x, y)))
            good[j] = (u, x)
            edge_set.add((min(u, x), max(u, x)))
            good.append((v, y))
            edge_set.add((min(v, y), max(v, y)))
        if not queue:
            return Graph.from_edges(n, list(edge_set))
    raise GenerationError("could not repair stub matching to a simple graph")


# -- growth models ----------------------------------------------------------


def barabasi_albert(n: int, m: int, rng: RngStream) -> Graph:
    """Growth with degree-proportional attachment from an (m+1)-clique seed."""
    if m < 1 or n <= m:
        raise ArgumentError("need n > m >= 1")
    gen = rng.generator()
    edges = [(i, j) for i in range(m + 1) for j in range(i + 1, m + 1)]
    # repeated-node list: node v appears deg(v) times
    repeated = [v for e in edges for v in e]
    for t in range(m + 1, n):
        targets = set()
        while len(targets) < m:
            targets.add(repeated[int(gen.integers(len(repeated)))])
        for u in targets:
            edges.append((u, t))
            repeated.append(u)
            repeated.append(t)
    return Graph.from_edges(n, edges)


def evolutionary_pa(n: int, m: int, b: float, epsilon: float,
                    rng: RngStream) -> Graph:
    """Growth with fitness-proportional attachment.

    Fitness is the payoff accumulated in a prisoner's dilemma played once
    per growth step against all neighbours (0 for unilateral cooperation
    or bilateral defection, 1 for bilateral cooperation, b for unilateral
    defection).  Attachment probability is
    (1 - epsilon)/N + epsilon * f_v / sum(f).  After each round every node
    compares its round score with a random neighbour and switches strategy
    with probability (s_nb - s_self) / (b * max(deg_self, deg_nb)),
    clipped to [0, 1].
    """
    if m < 1 or n <= m:
        raise ArgumentError("need n > m >= 1")
    if b <= 1.0:
        raise ArgumentError("temptation payoff b must exceed 1")
    if not 0.0 <= epsilon <= 1.0:
        raise ArgumentError("selection pressure must lie in [0, 1]")
    gen = rng.generator()
    eu, ev = [], []
    adj = [[] for _ in range(n)]

    def add_edge(a, c):
        eu.append(a)
        ev.append(c)
        adj[a].append(c)
        adj[c].append(a)

    seed = m + 1
    for i in range(seed):
        for j in range(i + 1, seed):
            add_edge(i, j)
    coop = np.zeros(n, dtype=bool)
    coop[:seed] = gen.random(seed) < 0.5
    fitness = np.zeros(n)

    for t in range(seed, n):
        cur = t  # number of existing nodes
        f = fitness[:cur]
        s = f.sum()
        if epsilon > 0.0 and s > 0.0:
            probs = (1.0 - epsilon) / cur + epsilon * f / s
        else:
            probs = np.full(cur, 1.0 / cur)
        probs = probs / probs.sum()
        targets = gen.choice(cur, size=m, replace=False, p=probs)
        coop[t] = gen.random() < 0.5
        for u in targets:
            add_edge(int(u), t)
        live = t + 1
        au = np.array(eu, dtype=np.int64)
        av = np.array(ev, dtype=np.int64)
        # one game round: payoff against every neighbour
        cnt = np.zeros(live, dtype=np.int64)
        np.add.at(cnt, au, coop[av].astype(np.int64))
        np.add.at(cnt, av, coop[au].astype(np.int64))
        score = np.where(coop[:live], 1.0, b) * cnt
        fitness[:live] = score
        # synchronous strategy update against one random neighbour
        deg = np.array([len(adj[v]) for v in range(live)], dtype=np.int64)
        pick = gen.integers(0, deg)
        nbr = np.array([adj[v][pick[v]] for v in range(live)], dtype=np.int64)
        diff = score[nbr] - score[:live]
        prob = np.clip(diff / (b * np.maximum(deg, deg[nbr])), 0.0, 1.0)
        switch = gen.random(live) < prob
        coop[:live] = np.where(switch, coop[nbr], coop[:live])
    return Graph.from_edges(n, np.column_stack([eu, ev]))


# -- planted-community benchmarks -------------------------------------------


def _realized_mu(g: Graph, p: Partition) -> float:
    e = g.edges()
    if e.size == 0:
        return 0.0
    inter = int((p.membership[e[:, 0]] != p.membership[e[:, 1]]).sum())
    return inter / g.m


def girvan_newman(z_out: float, rng: RngStream) -> PlantedNetwork:
    """128 nodes in 4 planted groups of 32, expected total degree 16.

    Each node has on average z_out links to the other groups; intra and
    inter pairs are linked independently with the implied probabilities
    p_in = (16 - z_out)/31 and p_out = z_out/96.
    """
    if not 0.0 <= z_out <= 16.0:
        raise ArgumentError("z_out must lie in [0, 16]")
    n, groups, size = 128, 4, 32
    p_in = (16.0 - z_out) / (size - 1)
    p_out = z_out / (n - size)
    gen = rng.generator()
    mem = np.repeat(np.arange(groups), size)
    iu, iv = np.triu_indices(n, k=1)
    pr = np.where(mem[iu] == mem[iv], p_in, p_out)
    keep = gen.random(iu.size) < pr
    g = Graph.from_edges(n, np.column_stack([iu[keep], iv[keep]]))
    planted = Partition(mem)
    return PlantedNetwork(g, planted, _realized_mu(g, planted))


def bagrow_rewire(g: Graph, k_communities: int, fraction: float,
                  rng: RngStream) -> PlantedNetwork:
    """Plant communities into an existing graph by degree-preserving swaps.

    Nodes are split into k equal-size groups at random.  Pairs of
    inter-community edges spanning the same two groups are repeatedly
    swapped into two intra-community edges (only when the graph stays
    simple), until `fraction` of the initial inter-community edge pairs
    has been processed or no swappable pair remains; in the latter case
    the realised fraction is reported in ``info``.
    """
    if k_communities < 2:
        raise ArgumentError("need at least 2 communities")
    if not 0.0 <= fraction <= 1.0:
        raise ArgumentError("fraction must lie in [0, 1]")
    n = g.n
    gen = rng.generator()
    mem = np.repeat(np.arange(k_communities), -(-n // k_communities))[:n]
    gen.shuffle(mem)
    planted = Partition(mem)
    adj = g.adjacency_sets()
    # bucket inter edges by unordered community pair
    buckets: dict = {}
    for u, v in g.edges():
        cu, cv = int(mem[u]), int(mem[v])
        if cu != cv:
            key = (min(cu, cv), max(cu, cv))
            buckets.setdefault(key, []).append((int(u), int(v)))
    initial_inter = sum(len(b) for b in buckets.values())
    goal = int(math.floor(fraction * (initial_inter / 2)))
    done = 0
    budget = 200 * max(goal, 1)
    keys = sorted(buckets)
    while done < goal and budget > 0:
        budget -= 1
        keys = [k for k in keys if len(buckets[k]) >= 2]
        if not keys:
            break
        key = keys[int(gen.integers(len(keys)))]
        bucket = buckets[key]
        i = int(gen.integers(len(bucket)))
        j = int(gen.integers(len(bucket)))
        if i == j:
            continue
        a, bb = bucket[i]
        c, d = bucket[j]
        # orient both edges as (member of key[0], member of key[1])
        if mem[a] != key[0]:
            a, bb = bb, a
        if mem[c] != key[0]:
            c, d = d, c
        if a == c or bb == d:
            continue
        if c in adj[a] or d in adj[bb]:
            continue
        for x, y in ((a, bb), (c, d)):
            adj[x].discard(y)
            adj[y].discard(x)
        adj[a].add(c)
        adj[c].add(a)
        adj[bb].add(d)
        adj[d].add(bb)
        for idx in sorted((i, j), reverse=True):
            bucket.pop(idx)
        done += 1
    edges = [(u, v) for u in range(n) for v in adj[u] if u < v]
    out = Graph.from_edges(n, edges)
    realized_fraction = done / goal if goal else 1.0
    return PlantedNetwork(out, planted, _realized_mu(out, planted),
                          info={"requested_fraction": fraction,
                                "realized_fraction": realized_fraction,
                                "swaps": done})


# -- power-law degree sampling ----------------------------------------------


def _powerlaw_table(k0: int, alpha: float, k_max: int, gamma: float):
    ks = np.arange(k0, k_max + 1, dtype=np.float64)
    w = ks ** (-gamma)
    w[0] *= alpha
    return ks.astype(np.int64), w / w.sum()


def powerlaw_degree_sequence(n: int, k_avg: float, k_max: int, gamma: float,
                             rng: RngStream) -> np.ndarray:
    """Sample n degrees from P(k) ~ k^-gamma on [k_min, k_max].

    The lower cutoff is solved numerically (integer cutoff plus a partial
    weight on the boundary value) so the distribution mean equals k_avg.
    The sampled sum is adjusted to even parity by redrawing one entry.
    """
    if gamma <= 1.0:
        raise ArgumentError("gamma must exceed 1")
    if not 1 <= k_max:
        raise ArgumentError("k_max must be at least 1")
    if k_avg > k_max or k_avg < 1.0:
        raise ArgumentError("k_avg must lie in [1, k_max]")

    def mean_at(k0, alpha):
        ks, p = _powerlaw_table(k0, alpha, k_max, gamma)
        return float((ks * p).sum())

    k0 = None
    for cand in range(k_max, 0, -1):
        if mean_at(cand, 1.0) <= k_avg:
            k0 = cand
            break
    if k0 is None:
        raise ArgumentError("no k_min in [1, k_max] achieves the target mean")
    lo, hi = 0.0, 1.0  # mean decreases as alpha grows
    for _ in range(80):
        mid = (lo + hi) / 2
        if mean_at(k0, mid) > k_avg:
            lo = mid
        else:
            hi = mid
    ks, p = _powerlaw_table(k0, hi, k_max, gamma)
    gen = rng.generator()
    deg = gen.choice(ks, size=n, p=p)
    while deg.sum() % 2 != 0:
        i = int(gen.integers(n))
        deg[i] = gen.choice(ks, p=p)
    return deg.astype(np.int64)


def _cap_degrees(g: Graph, cap: int, gen) -> Graph:
    """Trim degrees above cap by moving hub edge endpoints onto random
    low-degree nodes; m and all other degrees are preserved."""
    deg = g.degrees().astype(np.int64).copy()
    if deg.max() <= cap:
        return g
    adj = g.adjacency_sets()
    n = g.n
    budget = 100 * g.m
    hubs = [v for v in range(n) if deg[v] > cap]
    while hubs and budget > 0:
        budget -= 1
        h = hubs[-1]
        if deg[h] <= cap:
            hubs.pop()
            continue
        nb = list(adj[h])
        a = nb[int(gen.integers(len(nb)))]
        x = int(gen.integers(n))
        if x == h or x == a or deg[x] >= cap or x in adj[a]:
            continue
        adj[h].discard(a)
        adj[a].discard(h)
        adj[a].add(x)
        adj[x].add(a)
        deg[h] -= 1
        deg[x] += 1
    if hubs and deg[hubs[-1]] > cap:
        raise GenerationError("could not trim hub degrees to the feasible cap")
    edges = [(u, v) for u in range(n) for v in adj[u] if u < v]
    return Graph.from_edges(n, edges)


# -- LFR with three seed models ----------------------------------------------


@dataclass(frozen=True)
class LfrParams:
    n: int = 1000
    k_avg: float = 20.0
    k_max: int = 50
    gamma: float = 3.0
    beta: float = 2.0
    c_min: int = 25
    c_max: int = 100
    mu: float = 0.2
    seed_model: str = "CM"  # CM | BA | EV
    ev_b: float = 1.5
    ev_epsilon: float = 0.99
    mu_tolerance: float = 0.02

    def validate(self):
        if not 0.0 <= self.mu <= 1.0:
            raise ArgumentError("mu must lie in [0, 1]")
        if self.gamma <= 1.0 or self.beta <= 1.0:
            raise ArgumentError("gamma and beta must exceed 1")
        if self.c_min < 1 or self.c_max < self.c_min:
            raise ArgumentError("need 1 <= c_min <= c_max")
        if self.seed_model not in ("CM", "BA", "EV"):
            raise ArgumentError(f"unknown seed model {self.seed_model!r}")


def _community_sizes(n, beta, c_min, c_max, min_largest, gen):
    """Power-law community sizes in [c_min, c_max] summing to n."""
    if c_min > n:
        raise ArgumentError("c_min exceeds the node count")
    ks = np.arange(c_min, c_max + 1, dtype=np.float64)
    p = ks ** (-beta)
    p /= p.sum()
    vals = ks.astype(np.int64)
    sizes = []
    total = 0
    while total < n:
        s = int(gen.choice(vals, p=p))
        sizes.append(s)
        total += s
    excess = total - n
    for i in range(len(sizes) - 1, -1, -1):
        take = min(excess, sizes[i] - c_min)
        sizes[i] -= take
        excess -= take
        if excess == 0:
            break
    while excess > 0:
        # all communities at c_min: drop one and refill the others
        if len(sizes) < 2:
            raise ArgumentError("community size constraints are infeasible")
        drop = sizes.pop()
        deficit = drop - excess
        excess = 0
        i = 0
        while deficit > 0:
            if i >= len(sizes):
                raise ArgumentError("community size constraints are infeasible")
            room = c_max - sizes[i]
            add = min(room, deficit)
            sizes[i] += add
            deficit -= add
            i += 1
    # hubs must fit: grow the largest community by merging small ones
    sizes.sort(reverse=True)
    while sizes[0] < min_largest:
        if len(sizes) < 2:
            raise ArgumentError(
                "largest feasible community cannot host the highest-degree node")
        sizes[0] += sizes.pop()
    return sizes


def _round_half_even(x: float) -> int:
    return int(round(x))  # python round is banker's rounding


def lfr(params: LfrParams, rng: RngStream) -> PlantedNetwork:
    """LFR benchmark: scale-free seed graph + planted power-law communities.

    Step 1 builds the seed graph with the selected model (CM with
    power-law degree sampling, BA, or EV).  Step 2 draws community sizes,
    assigns nodes so each internal-degree target fits its community, and
    runs degree-preserving double-edge swaps until the realised mixing
    coefficient matches the target within tolerance.
    """
    params.validate()
    if params.seed_model == "CM":
        deg_seq = powerlaw_degree_sequence(
            params.n, params.k_avg, params.k_max, params.gamma, rng.child(1))
        seed = configuration_model(deg_seq, rng.child(2))
    elif params.seed_model == "BA":
        seed = barabasi_albert(params.n, max(1, int(round(params.k_avg / 2))),
                               rng.child(2))
    else:
        seed = evolutionary_pa(params.n, max(1, int(round(params.k_avg / 2))),
                               params.ev_b, params.ev_epsilon, rng.child(2))
    if params.seed_model == "CM" or params.mu >= 1.0:
        return _plant_and_mix(params, seed, rng.child(3, 0))
    # Grown hubs must keep an internal-degree target that fits inside the
    # largest allowed community; when the hub mass is too dense to pack,
    # retry with a tighter cap.
    # the cap must not depend on mu, or the seed graph (and with it every
    # topological property) would drift across a mu sweep; 3*k_max keeps
    # grown hubs packable into [c_min, c_max] communities at any mixing
    cap0 = max(params.k_max, min(params.c_max - 1, 3 * params.k_max))
    best = None
    cap = cap0
    for attempt in range(6):
        child = rng.child(3, attempt)
        g = _cap_degrees(seed, cap, child.generator())
        try:
            return _plant_and_mix(params, g, child.child(1))
        except GenerationError as exc:
            if best is None or (exc.best is not None and
                                abs(exc.best.realized_mu - params.mu)
                                < abs(best.realized_mu - params.mu)):
                best = exc.best
        cap = max(params.k_max, int(cap * 0.7))
        if cap == params.k_max and attempt >= 4:
            break
    raise GenerationError(
        f"could not reach mu={params.mu} with any feasible degree cap",
        best=best)


def _plant_and_mix(params: LfrParams, g: Graph,
                   rng: RngStream) -> PlantedNetwork:
    """Steps 2-3 of LFR on a given seed graph: draw community sizes,
    assign nodes, rewire to the target mixing."""
    gen = rng.generator()
    n, m = g.n, g.m
    deg = g.degrees()
    target_int = np.array([_round_half_even((1.0 - params.mu) * int(k)) for k in deg],
                          dtype=np.int64)
    # a node's internal degree must fit its community, so the smallest
    # community must exceed the smallest degree: c_min >= k_min + 1
    c_min = max(params.c_min, int(deg[deg > 0].min()) + 1) if m else params.c_min
    c_min = min(c_min, params.c_max)
    sizes = _community_sizes(n, params.beta, c_min, params.c_max,
                             int(target_int.max()) + 1, gen)
    k = len(sizes)
    cap = np.array(sizes, dtype=np.int64)
    filled = np.zeros(k, dtype=np.int64)
    mem = np.full(n, -1, dtype=np.int64)
    order = np.argsort(-target_int, kind="stable")
    for v in order:
        feasible = np.nonzero((cap > target_int[v]) & (filled < cap))[0]
        if feasible.size == 0:
            raise GenerationError("could not place every node within size bounds")
        # choose proportionally to remaining room so hubs spread out and
        # sizes fill evenly
        room = (cap[feasible] - filled[feasible]).astype(np.float64)
        c = feasible[gen.choice(feasible.size, p=room / room.sum())]
        mem[v] = c
        filled[c] += 1
    planted = Partition(mem, compact=False)

    adj = g.adjacency_sets()
    e = g.edges()
    intra_mask = mem[e[:, 0]] == mem[e[:, 1]]
    intra = int(intra_mask.sum())
    int_deg = np.zeros(n, dtype=np.int64)
    np.add.at(int_deg, e[intra_mask, 0], 1)
    np.add.at(int_deg, e[intra_mask, 1], 1)

    members = [np.nonzero(mem == c)[0] for c in range(k)]
    budget = 50 * m

    def random_external_neighbor(v):
        nb = list(adj[v])
        for _ in range(8):
            u = nb[int(gen.integers(len(nb)))]
            if mem[u] != mem[v]:
                return u
        ext = [u for u in nb if mem[u] != mem[v]]
        if not ext:
            return None
        return ext[int(gen.integers(len(ext)))]

    # deficit nodes (internal degree below target) always hold at least
    # one external edge, so two of them in the same community can always
    # attempt a swap towards each other
    comm_deficit = [set() for _ in range(k)]
    for v in range(n):
        if int_deg[v] < target_int[v] and int_deg[v] < int(deg[v]):
            comm_deficit[mem[v]].add(v)
    active = [c for c in range(k) if comm_deficit[c]]
    realized = 1.0 - intra / m

    def settle(q):
        if int_deg[q] >= min(target_int[q], int(deg[q])):
            comm_deficit[mem[q]].discard(q)

    while active and budget > 0:
        budget -= 1
        ci = int(gen.integers(len(active)))
        c = active[ci]
        pool = comm_deficit[c]
        if not pool:
            active[ci] = active[-1]
            active.pop()
            continue
        it = iter(pool)
        v = next(it)
        u = None
        # the partner must itself be short of its internal target, so no
        # node ends up above target and per-node internal degrees land on
        # the planted profile exactly
        mates = members[c]
        for _ in range(16):
            cand = int(mates[int(gen.integers(mates.size))])
            if cand != v and cand not in adj[v] \
                    and int_deg[cand] < min(target_int[cand], int(deg[cand])):
                u = cand
                break
        if u is None:
            for cand in it:
                if cand not in adj[v]:
                    u = cand
                    break
        if u is None:
            # late stage: the remaining deficit nodes are all adjacent, so
            # accept a partner that merely has an external edge to give up
            for _ in range(16):
                cand = int(mates[int(gen.integers(mates.size))])
                if cand != v and cand not in adj[v] \
                        and int_deg[cand] < int(deg[cand]):
                    u = cand
                    break
            if u is None:
                comm_deficit[c].discard(v)
                continue
        x = random_external_neighbor(v)
        w = random_external_neighbor(u)
        if x is None:
            comm_deficit[c].discard(v)
            continue
        if w is None or w == x or w in adj[x] or mem[x] == mem[w]:
            continue
        # swap (v,x), (u,w) -> (v,u) intra, (x,w) inter
        for a, bnode in ((v, x), (u, w)):
            adj[a].discard(bnode)
            adj[bnode].discard(a)
        adj[v].add(u)
        adj[u].add(v)
        adj[x].add(w)
        adj[w].add(x)
        int_deg[v] += 1
        int_deg[u] += 1
        intra += 1
        realized = 1.0 - intra / m
        settle(v)
        settle(u)

    # corrective pass: trim the intra surplus left over from the initial
    # assignment (nodes that started above their internal target)
    intra_goal = int(round((1.0 - params.mu) * m))
    surplus = [v for v in range(n) if int_deg[v] > target_int[v]]
    stalled = 0
    while intra > intra_goal and budget > 0 and len(surplus) >= 2 \
            and stalled < 2000:
        budget -= 1
        stalled += 1
        vi = int(gen.integers(len(surplus)))
        v = surplus[vi]
        if int_deg[v] <= target_int[v]:
            surplus[vi] = surplus[-1]
            surplus.pop()
            continue
        internal_nb = [u for u in adj[v]
                       if mem[u] == mem[v] and int_deg[u] > target_int[u]]
        if not internal_nb:
            surplus[vi] = surplus[-1]
            surplus.pop()
            continue
        u = internal_nb[int(gen.integers(len(internal_nb)))]
        xx = surplus[int(gen.integers(len(surplus)))]
        if mem[xx] == mem[v] or int_deg[xx] <= target_int[xx]:
            continue
        internal_nb2 = [q for q in adj[xx]
                        if mem[q] == mem[xx] and int_deg[q] > target_int[q]]
        if not internal_nb2:
            continue
        ww = internal_nb2[int(gen.integers(len(internal_nb2)))]
        if xx in adj[v] or ww in adj[u] or xx == v or ww == u:
            continue
        for a, bnode in ((v, u), (xx, ww)):
            adj[a].discard(bnode)
            adj[bnode].discard(a)
        adj[v].add(xx)
        adj[xx].add(v)
        adj[u].add(ww)
        adj[ww].add(u)
        int_deg[v] -= 1
        int_deg[u] -= 1
        int_deg[xx] -= 1
        int_deg[ww] -= 1
        intra -= 2
        realized = 1.0 - intra / m
        stalled = 0

    # relaxed fallback: when strict surplus pairs run out (dense hubs at
    # high mu), allow trimming through nodes at or below target
    while realized < params.mu - params.mu_tolerance / 2 and budget > 0:
        budget -= 1
        v = int(gen.integers(n))
        if int_deg[v] <= target_int[v]:
            continue
        internal_nb = [u for u in adj[v] if mem[u] == mem[v]]
        if not internal_nb:
            continue
        u = internal_nb[int(gen.integers(len(internal_nb)))]
        xx = int(gen.integers(n))
        if mem[xx] == mem[v]:
            continue
        internal_nb2 = [q for q in adj[xx] if mem[q] == mem[xx]]
        if not internal_nb2:
            continue
        ww = internal_nb2[int(gen.integers(len(internal_nb2)))]
        if xx in adj[v] or ww in adj[u] or xx == v or ww == u:
            continue
        for a, bnode in ((v, u), (xx, ww)):
            adj[a].discard(bnode)
            adj[bnode].discard(a)
        adj[v].add(xx)
        adj[xx].add(v)
        adj[u].add(ww)
        adj[ww].add(u)
        int_deg[v] -= 1
        int_deg[u] -= 1
        int_deg[xx] -= 1
        int_deg[ww] -= 1
        intra -= 2
        realized = 1.0 - intra / m

    edges = [(u, v) for u in range(n) for v in adj[u] if u < v]
    out = Graph.from_edges(n, edges)
    realized = _realized_mu(out, planted)
    result = PlantedNetwork(out, planted, realized,
                            info={"sizes": sizes, "seed_model": params.seed_model,
                                  "target_mu": params.mu})
    if abs(realized - params.mu) > params.mu_tolerance:
        raise GenerationError(
            f"could not reach mu={params.mu} (best realised {realized:.4f})",
            best=result)
    return result
