"""Command-line front end.

Subcommands: gen, cost, route, survey, sweep. Data goes to --out or stdout,
diagnostics to stderr. Exit codes: 0 success, 2 usage error, 3 numerical
failure. Every output embeds the tool version, a hash of the effective
config and the master seed, so identical configs reproduce identical
bodies (survey's wall_ms timing column is the one caveat). Sample seeds in
multi-sample runs are master_seed + sample_index.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys

import numpy as np

from . import __version__
from .cost import analytic_cost, cost_report, er_expected_cost, spectrum_from_adjacency
from .errors import CvnetError, NumericalError, ParameterError
from .generators import (
    gen_as,
    gen_ba,
    gen_diamond_chain,
    gen_er,
    gen_lattice,
    gen_pp,
    gen_regular,
    gen_ws,
)
from .network import Network, dump_edgelist, load_edgelist
from .routing import PROTOCOLS, auto_alice, run_protocol, survey

TOPOLOGIES = (
    "linear", "ring", "star", "diamond", "complete",
    "lattice", "diamond_chain", "er", "ba", "ws", "pp", "as",
)
SEEDED = ("er", "ba", "ws", "pp", "as")


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        if math.isinf(value):
            return "inf"
        return f"{value:.12g}"
    return str(value)


def _native(value):
    """numpy scalars to python; inf to 'inf' so JSON stays portable."""
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and math.isinf(value):
        return "inf"
    return value


def _config_hash(args: argparse.Namespace) -> str:
    payload = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "out")}
    blob = json.dumps(payload, sort_keys=True, default=str)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


class _Output:
    """Collects rows plus metadata, then renders CSV or JSON."""

    def __init__(self, args, columns):
        self.columns = list(columns)
        self.rows = []
        self.comments = []
        self.meta = {
            "tool": "cvnet",
            "version": __version__,
            "command": args.command,
            "config_hash": _config_hash(args),
            "seed": getattr(args, "seed", None),
        }
        self.fmt = getattr(args, "format", "csv")
        self.out = getattr(args, "out", None)

    def add(self, **kwargs):
        self.rows.append([_native(kwargs.get(c)) for c in self.columns])

    def comment(self, text):
        self.comments.append(text)

    def render(self) -> str:
        if self.fmt == "json":
            doc = dict(self.meta)
            doc["columns"] = self.columns
            doc["rows"] = [dict(zip(self.columns, row)) for row in self.rows]
            doc["notes"] = self.comments
            return json.dumps(doc, sort_keys=True, indent=2) + "\n"
        lines = [f"# {k}: {v}" for k, v in self.meta.items() if v is not None]
        lines.append(",".join(self.columns))
        for row in self.rows:
            lines.append(",".join(_fmt(v) for v in row))
        lines.extend(f"# {c}" for c in self.comments)
        return "\n".join(lines) + "\n"

    def write(self):
        text = self.render()
        if self.out:
            with open(self.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)


def build_network(topology, args, seed) -> Network:
    n = args.nodes
    g = args.g
    if topology in ("linear", "ring", "star", "diamond", "complete"):
        net = gen_regular(topology, n, g)
    elif topology == "lattice":
        net = gen_lattice(args.dim, args.side, g, args.variant)
    elif topology == "diamond_chain":
        net = gen_diamond_chain(args.k, args.n_inner, g)
    elif topology == "er":
        if args.p is None:
            raise ParameterError("er topology needs --p")
        net = gen_er(n, args.p, g, seed)
    elif topology == "ba":
        if args.k is None:
            raise ParameterError("ba topology needs --k")
        net = gen_ba(n, args.k, g, seed)
    elif topology == "ws":
        if args.q is None or args.beta is None:
            raise ParameterError("ws topology needs --q and --beta")
        net = gen_ws(n, args.q, args.beta, g, seed)
    elif topology == "pp":
        if args.sigma is None:
            raise ParameterError("pp topology needs --sigma")
        net = gen_pp(n, args.sigma, g, seed)
    elif topology == "as":
        net = gen_as(n, g, seed)
    else:
        raise ParameterError(f"unknown topology {topology!r}")
    if args.s:
        net = net.with_squeezing(args.s)
    return net


def _load_or_build(args, seed=None):
    if getattr(args, "graph", None):
        return load_edgelist(args.graph)
    if getattr(args, "topology", None):
        return build_network(args.topology, args, seed if seed is not None else args.seed)
    raise ParameterError("provide --graph FILE or --topology NAME")


def _analytic_value(topology, n, g, p):
    if topology in ("star", "diamond", "complete"):
        return analytic_cost(topology, n, g)
    if topology == "er" and p is not None:
        return er_expected_cost(n, p, g)
    return None


def cmd_gen(args):
    if not args.topology:
        raise ParameterError("gen needs --topology")
    net = build_network(args.topology, args, args.seed)
    summary = f"nodes={net.n} edges={net.num_edges}"

    def write(fh):
        dump_edgelist(net, fh)
        fh.write(f"# tool: cvnet {__version__}\n")
        fh.write(f"# config_hash: {_config_hash(args)}\n")
        if args.topology in SEEDED:
            fh.write(f"# seed: {args.seed}\n")

    if args.out:
        with open(args.out, "w") as fh:
            write(fh)
        print(summary)
    else:
        write(sys.stdout)
        print(summary, file=sys.stderr)


def cmd_cost(args):
    columns = ["topology", "n", "g", "seed", "total_db", "n_squeezers", "energy"]
    if args.analytic:
        columns += ["analytic_db", "analytic_abs_diff"]
    samples = args.samples if (args.topology in SEEDED) else 1
    nets = []
    for k in range(samples):
        seed = args.seed + k
        nets.append((seed, _load_or_build(args, seed=seed)))
    if args.spectrum:
        n_max = max(net.n for _, net in nets)
        columns += [f"mode_{i}" for i in range(n_max)]
    out = _Output(args, columns)
    totals = []
    for seed, net in nets:
        report = cost_report(net)
        totals.append(report.total_db)
        topology = args.topology or net.meta.get("topology", "file")
        row = {
            "topology": topology,
            "n": net.n,
            "g": args.g if args.topology else None,
            "seed": seed if (args.topology in SEEDED) else None,
            "total_db": report.total_db,
            "n_squeezers": report.n_squeezers,
            "energy": report.energy,
        }
        if args.analytic:
            closed = _analytic_value(topology, net.n, args.g, args.p)
            row["analytic_db"] = closed
            row["analytic_abs_diff"] = abs(report.total_db - closed) if closed is not None else None
        if args.spectrum:
            for i, db in enumerate(report.per_mode_db):
                row[f"mode_{i}"] = float(db)
        out.add(**row)
    if samples > 1:
        out.comment(f"mean_total_db: {np.mean(totals):.12g}")
        out.comment(f"std_total_db: {np.std(totals):.12g}")
    out.write()


def cmd_route(args):
    net = load_edgelist(args.graph)
    protocols = PROTOCOLS if args.protocol == "all" else (args.protocol,)
    columns = [
        "protocol", "alice", "target", "distance", "n_paths",
        "logneg", "logneg_raw", "n_paths_used", "useful_fraction",
    ]
    out = _Output(args, columns)
    results = [run_protocol(net, args.alice, args.bob, p) for p in protocols]
    for res in results:
        out.add(
            protocol=res.protocol, alice=args.alice, target=res.target,
            distance=res.distance, n_paths=res.n_paths, logneg=res.logneg,
            logneg_raw=res.logneg_raw, n_paths_used=res.n_paths_used,
            useful_fraction=res.useful_fraction,
        )
    if args.plan_out:
        with open(args.plan_out, "w") as fh:
            fh.write(f"# plan for protocol {results[0].protocol}, alice={args.alice}\n")
            fh.write(results[0].plan.to_text())
    out.write()


def cmd_survey(args):
    net = load_edgelist(args.graph)
    alice = "auto" if args.alice == "auto" else int(args.alice)
    protocols = tuple(args.protocols)
    threads = args.threads if args.threads > 0 else None
    report = survey(net, alice=alice, protocols=protocols, threads=threads)
    columns = [
        "target", "distance", "n_paths", "protocol",
        "logneg", "n_paths_used", "useful_fraction", "wall_ms",
    ]
    out = _Output(args, columns)
    out.meta["alice"] = report.alice
    for r in report.rows:
        out.add(
            target=r.target, distance=r.distance, n_paths=r.n_paths,
            protocol=r.protocol, logneg=r.logneg, n_paths_used=r.n_paths_used,
            useful_fraction=r.useful_fraction, wall_ms=r.wall_ms,
        )
    summary = " ".join(f"mean_{p}={report.mean_logneg[p]:.6g}" for p in protocols)
    out.comment(f"alice: {report.alice}")
    out.comment(f"means: {summary}")
    out.write()
    if args.out:
        print(f"alice={report.alice} {summary}")


_FAR_PAIR = {
    "linear": lambda net: (0, net.n - 1),
    "ring": lambda net: (0, net.n // 2),
    "star": lambda net: (1, 2) if net.n >= 3 else (0, 1),
    "diamond": lambda net: (0, net.n - 1),
    "diamond_chain": lambda net: (0, net.n - 1),
    "complete": lambda net: (0, 1),
    "lattice": lambda net: (0, net.n - 1),
}


def canonical_pair(topology, net):
    """The far pair used in sweeps; for random graphs, the highest-degree
    node and the lowest-index node at maximal BFS distance from it."""
    if topology in _FAR_PAIR:
        return _FAR_PAIR[topology](net)
    from .network import bfs_distances

    alice = auto_alice(net)
    dist = bfs_distances(net, alice)
    dist[alice] = -1
    reachable = np.where(np.isinf(dist), -1, dist)
    return alice, int(np.argmax(reachable))


def _parse_sizes(spec: str):
    try:
        parts = [int(x) for x in spec.split(":")]
    except ValueError:
        raise ParameterError(f"bad size range {spec!r}; use start:stop:step")
    if len(parts) == 1:
        return parts
    if len(parts) == 2:
        parts.append(1)
    if len(parts) != 3 or parts[2] <= 0 or parts[1] < parts[0]:
        raise ParameterError(f"bad size range {spec!r}; use start:stop:step")
    start, stop, step = parts
    return list(range(start, stop + 1, step))


def cmd_sweep(args):
    sizes = _parse_sizes(args.sizes)
    samples = args.samples if (args.topology in SEEDED) else 1
    want_cost = args.metric in ("cost", "both")
    want_logneg = args.metric in ("logneg", "both")
    columns = ["topology", "n", "g", "seed"]
    if want_cost:
        columns += ["total_db", "n_squeezers", "energy"]
    if want_logneg:
        columns += ["pair_a", "pair_b", "distance", "logneg"]
    out = _Output(args, columns)
    for size in sizes:
        for k in range(samples):
            seed = args.seed + k
            sub = argparse.Namespace(**vars(args))
            sub.nodes = size
            net = build_network(args.topology, sub, seed)
            row = {"topology": args.topology, "n": net.n, "g": args.g,
                   "seed": seed if args.topology in SEEDED else None}
            if want_cost:
                report = cost_report(net)
                row.update(total_db=report.total_db, n_squeezers=report.n_squeezers,
                           energy=report.energy)
            if want_logneg:
                a, b = canonical_pair(args.topology, net)
                res = run_protocol(net, a, b, "routing")
                row.update(pair_a=a, pair_b=b, distance=res.distance, logneg=res.logneg)
            out.add(**row)
    out.write()


def _add_common(parser):
    parser.add_argument("--seed", type=int, default=0, help="master RNG seed (PCG64)")
    parser.add_argument("--out", help="output file (default: stdout)")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--threads", type=int, default=0,
                        help="worker threads; 0 = machine parallelism")


def _add_topology_params(parser, require_nodes=True):
    parser.add_argument("--topology", choices=TOPOLOGIES)
    parser.add_argument("--nodes", type=int, default=0, required=False)
    parser.add_argument("--g", type=float, default=1.0, help="edge weight")
    parser.add_argument("--s", type=float, default=0.0, help="uniform node squeezing, dB")
    parser.add_argument("--p", type=float, help="er link probability")
    parser.add_argument("--k", type=int, help="ba attachments / diamond_chain branches")
    parser.add_argument("--q", type=int, help="ws neighbors (even)")
    parser.add_argument("--beta", type=float, help="ws rewiring probability")
    parser.add_argument("--sigma", type=float, help="pp link retention probability")
    parser.add_argument("--dim", type=int, default=2, help="lattice dimension")
    parser.add_argument("--side", type=int, help="lattice side length")
    parser.add_argument("--variant", default="square",
                        choices=("square", "tri_T", "tri_Ttilde"), help="lattice variant")
    parser.add_argument("--n-inner", type=int, dest="n_inner",
                        help="diamond_chain nodes per branch")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cvnet",
        description="Gaussian graph-state networks: generation, squeezing costs, "
                    "entanglement routing.",
    )
    parser.add_argument("--version", action="version", version=f"cvnet {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a network and write the graph file")
    _add_topology_params(p_gen)
    _add_common(p_gen)
    p_gen.set_defaults(func=cmd_gen)

    p_cost = sub.add_parser("cost", help="squeezing cost and spectrum of a network")
    p_cost.add_argument("--graph", help="graph file (alternative to --topology)")
    _add_topology_params(p_cost)
    p_cost.add_argument("--spectrum", action="store_true", help="add per-mode dB columns")
    p_cost.add_argument("--analytic", action="store_true",
                        help="add closed-form column where available")
    p_cost.add_argument("--samples", type=int, default=1,
                        help="samples for seeded topologies (seeds = seed + index)")
    _add_common(p_cost)
    p_cost.set_defaults(func=cmd_cost)

    p_route = sub.add_parser("route", help="route entanglement between two nodes")
    p_route.add_argument("--graph", required=True)
    p_route.add_argument("--alice", type=int, required=True)
    p_route.add_argument("--bob", type=int, required=True)
    p_route.add_argument("--protocol", default="all", choices=PROTOCOLS + ("all",))
    p_route.add_argument("--plan-out", dest="plan_out", help="write the measurement plan")
    _add_common(p_route)
    p_route.set_defaults(func=cmd_route)

    p_survey = sub.add_parser("survey", help="route from alice to every other node")
    p_survey.add_argument("--graph", required=True)
    p_survey.add_argument("--alice", default="auto", help="node index or 'auto'")
    p_survey.add_argument("--protocols", nargs="+", default=list(PROTOCOLS),
                          choices=PROTOCOLS)
    _add_common(p_survey)
    p_survey.set_defaults(func=cmd_survey)

    p_sweep = sub.add_parser("sweep", help="cost/negativity scaling over a size range")
    _add_topology_params(p_sweep)
    p_sweep.add_argument("--sizes", required=True, help="start:stop:step (stop inclusive)")
    p_sweep.add_argument("--samples", type=int, default=1)
    p_sweep.add_argument("--metric", choices=("cost", "logneg", "both"), default="both")
    _add_common(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except NumericalError as exc:
        print(f"cvnet: numerical failure: {exc}", file=sys.stderr)
        return 3
    except CvnetError as exc:
        print(f"cvnet: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"cvnet: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
