"""Command-line interface.

Exit codes: 0 success, 1 argument/usage errors, 2 runtime errors.
"""

from __future__ import annotations

import argparse
import sys

from .detect import DETECTORS, run_detector
from .errors import ArgumentError, CommkitError
from .evaluate import MEASURES
from .graph import graph_summary, load_edge_list, save_edge_list
from .harness import (emit_reports, emit_topology_reports, parse_config,
                      run_experiment, run_topology_sweep)
from .netgen import LfrParams, girvan_newman, lfr
from .partition import load_membership, save_membership
from .rng import RngStream


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser() -> _Parser:
    p = _Parser(prog="commkit",
                description="community-detection laboratory: generators, "
                            "detectors, measures and experiment harness")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="write a planted benchmark network")
    g.add_argument("--model", choices=["lfr", "gn"], default="lfr")
    g.add_argument("--out", required=True, metavar="STEM",
                   help="output stem; writes STEM.edges/.planted/.meta")
    g.add_argument("--seed", type=int, default=1)
    g.add_argument("--n", type=int, default=1000)
    g.add_argument("--k-avg", type=float, default=20.0)
    g.add_argument("--k-max", type=int, default=50)
    g.add_argument("--gamma", type=float, default=3.0)
    g.add_argument("--beta", type=float, default=2.0)
    g.add_argument("--c-min", type=int, default=25)
    g.add_argument("--c-max", type=int, default=100)
    g.add_argument("--mu", type=float, default=0.2)
    g.add_argument("--seed-model", choices=["CM", "BA", "EV"], default="CM")
    g.add_argument("--mu-tolerance", type=float, default=0.02)
    g.add_argument("--ev-b", type=float, default=1.5)
    g.add_argument("--ev-epsilon", type=float, default=0.99)
    g.add_argument("--z-out", type=float, default=1.0,
                   help="inter-community degree for the gn model")

    d = sub.add_parser("detect", help="run one detector on an edge list")
    d.add_argument("--graph", required=True)
    d.add_argument("--detector", required=True, choices=sorted(DETECTORS))
    d.add_argument("--seed", type=int, default=1)
    d.add_argument("--out", help="membership output file (default: stdout)")

    e = sub.add_parser("evaluate", help="compare a found partition with truth")
    e.add_argument("--graph", required=True)
    e.add_argument("--found", required=True)
    e.add_argument("--truth", required=True)
    e.add_argument("--measures", required=True,
                   help="comma-separated list, e.g. nmi,ari,vi")

    x = sub.add_parser("experiment", help="run a configured benchmark sweep")
    x.add_argument("--config", required=True)
    x.add_argument("--no-figures", action="store_true",
                   help="skip PNG rendering, keep CSV/TSV only")
    x.add_argument("--topology", action="store_true",
                   help="also sweep topological properties per mu")

    di = sub.add_parser("diagnose", help="print a topological summary")
    di.add_argument("--graph", required=True)
    return p


def _cmd_generate(args) -> int:
    rng = RngStream(args.seed)
    if args.model == "gn":
        net = girvan_newman(args.z_out, rng)
        params = {"model": "gn", "z_out": args.z_out}
    else:
        lp = LfrParams(n=args.n, k_avg=args.k_avg, k_max=args.k_max,
                       gamma=args.gamma, beta=args.beta, c_min=args.c_min,
                       c_max=args.c_max, mu=args.mu,
                       seed_model=args.seed_model, ev_b=args.ev_b,
                       ev_epsilon=args.ev_epsilon,
                       mu_tolerance=args.mu_tolerance)
        net = lfr(lp, rng)
        params = {"model": "lfr", "n": args.n, "k_avg": args.k_avg,
                  "k_max": args.k_max, "gamma": args.gamma,
                  "beta": args.beta, "c_min": args.c_min,
                  "c_max": args.c_max, "mu": args.mu,
                  "seed_model": args.seed_model, "ev_b": args.ev_b,
                  "ev_epsilon": args.ev_epsilon,
                  "mu_tolerance": args.mu_tolerance}
    save_edge_list(net.graph, args.out + ".edges")
    save_membership(net.planted, args.out + ".planted")
    params["seed"] = args.seed
    params["realized_mu"] = net.realized_mu
    with open(args.out + ".meta", "w") as fh:
        for key, val in params.items():
            fh.write(f"{key}={val}\n")
    print(f"wrote {args.out}.edges / .planted / .meta "
          f"(n={net.graph.n}, m={net.graph.m}, "
          f"realized_mu={net.realized_mu:.4f})")
    return 0


def _cmd_detect(args) -> int:
    g = load_edge_list(args.graph)
    res = run_detector(args.detector, g, RngStream(args.seed))
    if args.out:
        save_membership(res.partition, args.out)
        print(f"wrote {args.out} "
              f"({res.partition.community_count} communities)")
    else:
        for v, c in enumerate(res.partition.membership):
            print(f"{v} {c}")
    return 0


def _cmd_evaluate(args) -> int:
    g = load_edge_list(args.graph)
    found = load_membership(args.found, n=g.n)
    truth = load_membership(args.truth, n=g.n)
    names = [s.strip() for s in args.measures.split(",") if s.strip()]
    if not names:
        raise ArgumentError("no measures given")
    for name in names:
        if name not in MEASURES:
            known = ", ".join(sorted(MEASURES))
            raise ArgumentError(f"unknown measure {name!r} (known: {known})")
    for name in names:
        val = MEASURES[name](g, found, truth)
        print(f"{name},{'' if val is None else format(val, '.10g')}")
    return 0


def _cmd_experiment(args) -> int:
    cfg = parse_config(args.config)
    records, summary = run_experiment(cfg)
    written = emit_reports(records, cfg.out_dir, summary)
    if args.topology:
        rows = run_topology_sweep(cfg)
        written += emit_topology_reports(rows, cfg.out_dir)
        if not args.no_figures:
            from .report import render_topology_figures
            written += render_topology_figures(rows, cfg.out_dir)
    if not args.no_figures:
        from .report import render_measure_figures
        written += render_measure_figures(summary, cfg.out_dir)
    for path in written:
        print(path)
    return 0


def _cmd_diagnose(args) -> int:
    g = load_edge_list(args.graph)
    s = graph_summary(g)
    for key, val in s.__dict__.items():
        if val is None:
            print(f"{key}=")
        elif isinstance(val, float):
            print(f"{key}={val:.6g}")
        else:
            print(f"{key}={val}")
    return 0


_COMMANDS = {
    "generate": _cmd_generate,
    "detect": _cmd_detect,
    "evaluate": _cmd_evaluate,
    "experiment": _cmd_experiment,
    "diagnose": _cmd_diagnose,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    except ArgumentError as exc:
        print(f"commkit: error: {exc}", file=sys.stderr)
        return 1
    except CommkitError as exc:
        print(f"commkit: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"commkit: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
