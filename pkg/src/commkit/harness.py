"""Experiment orchestration: benchmark sweeps, records, and reports."""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import graph as graphmod
from .detect import DETECTORS, run_detector
from .errors import ArgumentError, CommkitError
from .evaluate import MEASURES
from .graph import Graph
from .netgen import LfrParams, PlantedNetwork, girvan_newman, lfr
from .partition import Partition
from .rng import RngStream

RESULTS_HEADER = ("generator,seed_model,mu_target,mu_realized,replicate,"
                  "seed,detector,measure,value,runtime_ms")


@dataclass(frozen=True)
class ResultRecord:
    generator: str
    seed_model: str
    mu_target: float
    mu_realized: Optional[float]
    replicate: int
    seed: int
    detector: str
    measure: str
    value: Optional[float]
    runtime_ms: Optional[float]

    def sort_key(self):
        return (self.generator, self.seed_model, self.mu_target,
                self.replicate, self.detector, self.measure)


@dataclass(frozen=True)
class ExperimentConfig:
    generator: str = "lfr"
    n: int = 1000
    k_avg: float = 20.0
    k_max: int = 50
    gamma: float = 3.0
    beta: float = 2.0
    c_min: int = 25
    c_max: int = 100
    mu_values: tuple = (0.2, 0.6)
    seed_models: tuple = ("CM",)
    replicates: int = 5
    master_seed: int = 1
    detectors: tuple = ()          # of (name, params-dict) pairs
    measures: tuple = ("nmi",)
    out_dir: str = "results"
    timing: str = "wall"           # wall | off
    mu_tolerance: float = 0.02
    ev_b: float = 1.5
    ev_epsilon: float = 0.99

    def validate(self):
        if self.replicates < 1:
            raise ArgumentError("replicates must be at least 1")
        if not self.mu_values or not self.seed_models:
            raise ArgumentError("parameter grid must be non-empty")
        if not self.detectors:
            raise ArgumentError("at least one detector is required")
        for name, _ in self.detectors:
            if name not in DETECTORS:
                raise ArgumentError(f"unknown detector {name!r}")
        for meas in self.measures:
            if meas not in MEASURES:
                raise ArgumentError(f"unknown measure {meas!r}")
        if self.timing not in ("wall", "off"):
            raise ArgumentError("timing must be 'wall' or 'off'")
        if self.generator not in ("lfr", "gn"):
            raise ArgumentError("generator must be 'lfr' or 'gn'")


_CONFIG_INT = {"n", "k_max", "c_min", "c_max", "replicates", "seed"}
_CONFIG_FLOAT = {"k_avg", "gamma", "beta", "mu_tolerance", "ev_b",
                 "ev_epsilon"}


def parse_config(path) -> ExperimentConfig:
    """Flat key=value format; `detector=` may repeat, comma lists for
    mu, seed_model and measure."""
    kw: dict = {}
    detectors = []
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ArgumentError(f"cannot read config: {exc}")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ArgumentError(f"{path}:{lineno}: expected key=value")
        key, _, val = line.partition("=")
        key, val = key.strip(), val.strip()
        try:
            if key == "detector":
                parts = val.split()
                params = {}
                for p in parts[1:]:
                    pk, _, pv = p.partition("=")
                    try:
                        params[pk] = int(pv)
                    except ValueError:
                        params[pk] = float(pv)
                detectors.append((parts[0], params))
            elif key == "measure":
                kw.setdefault("measures", [])
                kw["measures"] += [v.strip() for v in val.split(",")]
            elif key == "mu":
                kw["mu_values"] = tuple(float(v) for v in val.split(","))
            elif key == "seed_model":
                kw["seed_models"] = tuple(v.strip() for v in val.split(","))
            elif key == "seed":
                kw["master_seed"] = int(val)
            elif key in _CONFIG_INT:
                kw[key] = int(val)
            elif key in _CONFIG_FLOAT:
                kw[key] = float(val)
            elif key in ("generator", "out_dir", "timing"):
                kw[key] = val
            else:
                raise ArgumentError(f"{path}:{lineno}: unknown key {key!r}")
        except ValueError:
            raise ArgumentError(f"{path}:{lineno}: bad value for {key!r}")
    if "measures" in kw:
        kw["measures"] = tuple(kw["measures"])
    cfg = ExperimentConfig(detectors=tuple((n, tuple(sorted(p.items())))
                                           for n, p in detectors), **kw)
    cfg.validate()
    return cfg


def worker_count() -> int:
    cap = os.environ.get("COMMKIT_THREADS")
    avail = os.cpu_count() or 1
    if cap is None:
        return avail
    try:
        cap = int(cap)
    except ValueError:
        raise ArgumentError("COMMKIT_THREADS must be an integer")
    return max(1, min(cap, avail))


def _generate_cell(cfg: ExperimentConfig, seed_model: str, mu: float,
                   rng: RngStream) -> PlantedNetwork:
    if cfg.generator == "gn":
        return girvan_newman(mu * 16.0, rng)
    params = LfrParams(n=cfg.n, k_avg=cfg.k_avg, k_max=cfg.k_max,
                       gamma=cfg.gamma, beta=cfg.beta, c_min=cfg.c_min,
                       c_max=cfg.c_max, mu=mu, seed_model=seed_model,
                       ev_b=cfg.ev_b, ev_epsilon=cfg.ev_epsilon,
                       mu_tolerance=cfg.mu_tolerance)
    return lfr(params, rng)


def _run_cell(args):
    """One (grid point, replicate) cell: generate, detect, measure."""
    cfg, seed_model, mu, rep = args
    rng = RngStream(cfg.master_seed).child(
        cfg.seed_models.index(seed_model), cfg.mu_values.index(mu), rep)
    seed = rng.kernel_seed()
    records = []
    try:
        net = _generate_cell(cfg, seed_model, mu, rng.child(0))
    except CommkitError:
        for det, _ in cfg.detectors:
            for meas in cfg.measures:
                records.append(ResultRecord(cfg.generator, seed_model, mu,
                                            None, rep, seed, det, meas,
                                            None, None))
        return records
    # spot-check the generator contract before trusting the cell
    assert abs(_recomputed_mu(net.graph, net.planted) - net.realized_mu) < 1e-12
    for det, det_params in cfg.detectors:
        t_start = time.perf_counter()
        try:
            res = run_detector(det, net.graph, rng.child(1, _det_index(cfg, det)),
                               dict(det_params))
            found = res.partition
        except CommkitError:
            found = None
        elapsed_ms = (time.perf_counter() - t_start) * 1000.0
        runtime = elapsed_ms if cfg.timing == "wall" else None
        for meas in cfg.measures:
            value = None
            if found is not None:
                value = MEASURES[meas](net.graph, found, net.planted)
            records.append(ResultRecord(cfg.generator, seed_model, mu,
                                        net.realized_mu, rep, seed, det,
                                        meas, value, runtime))
    return records


def _det_index(cfg, det):
    return [d for d, _ in cfg.detectors].index(det)


def _recomputed_mu(g: Graph, p: Partition) -> float:
    e = g.edges()
    if e.size == 0:
        return 0.0
    return float((p.membership[e[:, 0]] != p.membership[e[:, 1]]).sum()) / g.m


def run_experiment(cfg: ExperimentConfig):
    """Run the full grid and return (records, summary rows).

    Cells are scheduled across processes (capped by COMMKIT_THREADS) and
    the record list is sorted deterministically before any aggregation,
    so the output is independent of the worker count.
    """
    cfg.validate()
    cells = [(cfg, sm, mu, rep)
             for sm in cfg.seed_models
             for mu in cfg.mu_values
             for rep in range(cfg.replicates)]
    workers = worker_count()
    records = []
    if workers == 1 or len(cells) == 1:
        for cell in cells:
            records.extend(_run_cell(cell))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for batch in pool.map(_run_cell, cells):
                records.extend(batch)
    records.sort(key=ResultRecord.sort_key)
    return records, summarize(records)


def summarize(records):
    """Per (grid point, detector, measure) mean/stddev plus within-grid
    detector ranks (rank 1 = best mean, ties get the average rank)."""
    groups: dict = {}
    for r in records:
        if r.value is None:
            continue
        key = (r.generator, r.seed_model, r.mu_target, r.detector, r.measure)
        groups.setdefault(key, []).append(r.value)
    rows = []
    for key, vals in groups.items():
        arr = np.asarray(vals)
        rows.append({"generator": key[0], "seed_model": key[1],
                     "mu_target": key[2], "detector": key[3],
                     "measure": key[4], "count": arr.size,
                     "mean": float(arr.mean()),
                     "stddev": float(arr.std(ddof=1)) if arr.size > 1 else 0.0})
    # average ranks within each (grid point, measure)
    by_grid: dict = {}
    for row in rows:
        gkey = (row["generator"], row["seed_model"], row["mu_target"],
                row["measure"])
        by_grid.setdefault(gkey, []).append(row)
    for members in by_grid.values():
        means = np.array([-row["mean"] for row in members])
        order = means.argsort(kind="stable")
        ranks = np.empty(means.size)
        i = 0
        pos = 1
        while i < means.size:
            j = i
            while j < means.size and means[order[j]] == means[order[i]]:
                j += 1
            ranks[order[i:j]] = (pos + (pos + j - i - 1)) / 2.0
            pos += j - i
            i = j
        for idx, row in enumerate(members):
            row["rank"] = float(ranks[idx])
    rows.sort(key=lambda r: (r["generator"], r["seed_model"], r["mu_target"],
                             r["detector"], r["measure"]))
    return rows


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return format(x, ".10g")
    return str(x)


def emit_reports(records, out_dir, summary=None) -> list:
    """Write results.csv, summary.csv and one TSV per figure series
    (mu, mean, stddev per detector and measure).  Returns written paths."""
    if not records:
        raise ArgumentError("no records to report")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if not os.access(out, os.W_OK):
        raise OSError(f"output directory {out} is not writable")
    if summary is None:
        summary = summarize(records)
    written = []

    results = out / "results.csv"
    lines = [RESULTS_HEADER]
    for r in sorted(records, key=ResultRecord.sort_key):
        lines.append(",".join([r.generator, r.seed_model, _fmt(r.mu_target),
                               _fmt(r.mu_realized), str(r.replicate),
                               str(r.seed), r.detector, r.measure,
                               _fmt(r.value), _fmt(r.runtime_ms)]))
    results.write_text("\n".join(lines) + "\n")
    written.append(results)

    summ = out / "summary.csv"
    header = "generator,seed_model,mu_target,detector,measure,count,mean,stddev,rank"
    lines = [header]
    for row in summary:
        lines.append(",".join([row["generator"], row["seed_model"],
                               _fmt(row["mu_target"]), row["detector"],
                               row["measure"], str(row["count"]),
                               _fmt(row["mean"]), _fmt(row["stddev"]),
                               _fmt(row.get("rank"))]))
    summ.write_text("\n".join(lines) + "\n")
    written.append(summ)

    series: dict = {}
    for row in summary:
        skey = (row["seed_model"], row["detector"], row["measure"])
        series.setdefault(skey, []).append(
            (row["mu_target"], row["mean"], row["stddev"]))
    for (sm, det, meas), pts in sorted(series.items()):
        path = out / f"series_{sm}_{det}_{meas}.tsv"
        lines = ["mu\tmean\tstddev"]
        for mu, mean, sd in sorted(pts):
            lines.append(f"{_fmt(mu)}\t{_fmt(mean)}\t{_fmt(sd)}")
        path.write_text("\n".join(lines) + "\n")
        written.append(path)
    return written


# -- topology sweep ----------------------------------------------------------


def _topology_cell(args):
    cfg, seed_model, mu, rep = args
    rng = RngStream(cfg.master_seed).child(
        cfg.seed_models.index(seed_model), cfg.mu_values.index(mu), rep)
    try:
        net = _generate_cell(cfg, seed_model, mu, rng.child(0))
    except CommkitError:
        return []
    g = net.graph
    assort = graphmod.assortativity(g)
    return [(seed_model, mu, "assortativity",
             float(assort) if assort is not None else None),
            (seed_model, mu, "transitivity", graphmod.transitivity(g)),
            (seed_model, mu, "centralization",
             graphmod.centralization(g, "degree"))]


def run_topology_sweep(cfg: ExperimentConfig):
    """Mean and stddev of assortativity, transitivity and degree
    centralization per (seed_model, mu)."""
    if not cfg.seed_models or not cfg.mu_values:
        raise ArgumentError("parameter grid must be non-empty")
    cells = [(cfg, sm, mu, rep)
             for sm in cfg.seed_models
             for mu in cfg.mu_values
             for rep in range(cfg.replicates)]
    workers = worker_count()
    raw = []
    if workers == 1 or len(cells) == 1:
        for cell in cells:
            raw.extend(_topology_cell(cell))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for batch in pool.map(_topology_cell, cells):
                raw.extend(batch)
    groups: dict = {}
    for sm, mu, prop, val in raw:
        if val is not None:
            groups.setdefault((sm, mu, prop), []).append(val)
    rows = []
    for (sm, mu, prop), vals in sorted(groups.items()):
        arr = np.asarray(vals)
        rows.append({"seed_model": sm, "mu": mu, "property": prop,
                     "count": arr.size, "mean": float(arr.mean()),
                     "stddev": float(arr.std(ddof=1)) if arr.size > 1 else 0.0})
    return rows


def emit_topology_reports(rows, out_dir) -> list:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    series: dict = {}
    for row in rows:
        series.setdefault((row["seed_model"], row["property"]), []).append(
            (row["mu"], row["mean"], row["stddev"]))
    written = []
    for (sm, prop), pts in sorted(series.items()):
        path = out / f"topology_{sm}_{prop}.tsv"
        lines = ["mu\tmean\tstddev"]
        for mu, mean, sd in sorted(pts):
            lines.append(f"{_fmt(mu)}\t{_fmt(mean)}\t{_fmt(sd)}")
        path.write_text("\n".join(lines) + "\n")
        written.append(path)
    return written


# -- diagnostics -------------------------------------------------------------


def mixing_limit(planted: Partition, n: int) -> float:
    """Community-size-weighted mean of (n - |S_c|)/n: the mixing level
    beyond which the average node has more inter- than intra-community
    neighbours under a random baseline."""
    sizes = planted.sizes().astype(np.float64)
    if sizes.sum() == 0:
        raise ArgumentError("empty partition")
    return float((sizes * (n - sizes)).sum() / (n * sizes.sum()))


def tail_exponent_estimate(degrees, k_min_fit: int,
                           with_residual: bool = False):
    """Least-squares slope of log CCDF vs log k above k_min_fit; the
    exponent estimate is |slope| + 1."""
    deg = np.asarray(degrees, dtype=np.int64)
    tail = deg[deg >= k_min_fit]
    if tail.size < 100:
        raise ArgumentError("need at least 100 samples above k_min_fit")
    ks = np.unique(tail)
    if ks.size < 3:
        raise ArgumentError("degenerate tail: too few distinct degrees")
    # CCDF over the full sample, evaluated at tail degrees
    ccdf = np.array([(deg >= k).sum() for k in ks], dtype=np.float64) / deg.size
    x = np.log(ks.astype(np.float64))
    y = np.log(ccdf)
    slope, intercept = np.polyfit(x, y, 1)
    resid = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    est = abs(float(slope)) + 1.0
    if with_residual:
        return est, resid
    return est
