"""Measurement-based entanglement routing between node pairs.

Three protocols, all built on q/p homodyne plans over the rest of the
network:

* shortest: p-measure the interior of the first shortest path (lexicographic
  order), q-measure everything else.
* routing: start from the shortest plan, then walk the remaining shortest
  paths in order, toggling each path's interior from q to p and keeping the
  toggle only when the clamped negativity strictly improves. Nodes pinned to
  p by an accepted path stay p, so the result never drops below shortest.
* allp: q-measure degree-1 nodes (computed on the original network,
  endpoints excluded), p-measure everything else. No optimization.

Longer-than-shortest parallel paths are never considered. Unreachable
targets report negativity 0 and infinite distance rather than being
dropped.
"""

from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .entangle import LogNegativity, pair_logneg_from_z
from .errors import ParameterError
from .gaussian import ZGraph, z_from_network
from .measure import TAG_KEEP, TAG_P, TAG_Q, MeasurementPlan, apply_plan, pair_plan
from .network import Network, all_shortest_paths

ACCEPT_TOL = 1e-12
PROTOCOLS = ("routing", "shortest", "allp")


@dataclass(frozen=True)
class ProtocolResult:
    target: int
    protocol: str
    logneg: float  # clamped
    logneg_raw: float
    distance: float  # hop count, math.inf when unreachable
    n_paths: int
    n_paths_used: int | None
    useful_fraction: float | None
    plan: MeasurementPlan
    wall_ms: float | None = None


@dataclass(frozen=True)
class SurveyReport:
    alice: int
    rows: tuple
    mean_logneg: dict
    runtime_s: dict


def _evaluate(z: ZGraph, plan: MeasurementPlan) -> LogNegativity:
    keep = plan.keep_nodes
    return pair_logneg_from_z(apply_plan(z, plan), labels=keep)


def _check_pair(net: Network, alice: int, bob: int):
    for name, i in (("alice", alice), ("bob", bob)):
        if not 0 <= i < net.n:
            raise ParameterError(f"{name}={i} is not a valid node index (n={net.n})")
    if alice == bob:
        raise ParameterError("alice and bob must differ")


def _shortest_plan(net: Network, alice: int, bob: int, paths):
    interior = paths[0][1:-1] if paths else ()
    return pair_plan(net.n, alice, bob, p_nodes=interior)


def protocol_shortest(net: Network, alice: int, bob: int, _z=None, _paths=None) -> ProtocolResult:
    """One shortest path p-measured, everything else q-measured."""
    _check_pair(net, alice, bob)
    z = _z if _z is not None else z_from_network(net)
    ps = _paths if _paths is not None else all_shortest_paths(net, alice, bob)
    plan = _shortest_plan(net, alice, bob, ps.paths)
    neg = _evaluate(z, plan)
    return ProtocolResult(
        target=bob, protocol="shortest", logneg=neg.clamped, logneg_raw=neg.raw,
        distance=ps.distance, n_paths=ps.n_paths,
        n_paths_used=min(1, ps.n_paths),
        useful_fraction=1.0 / ps.n_paths if ps.n_paths else None,
        plan=plan,
    )


def protocol_routing(net: Network, alice: int, bob: int, _z=None, _paths=None) -> ProtocolResult:
    """Greedy parallel-path acceptance; never worse than protocol_shortest."""
    _check_pair(net, alice, bob)
    z = _z if _z is not None else z_from_network(net)
    ps = _paths if _paths is not None else all_shortest_paths(net, alice, bob)
    plan = _shortest_plan(net, alice, bob, ps.paths)
    neg = _evaluate(z, plan)
    n_used = min(1, ps.n_paths)
    tags = list(plan.assignments)
    for path in ps.paths[1:]:
        toggled = [i for i in path[1:-1] if tags[i] == TAG_Q]
        if not toggled:
            continue
        for i in toggled:
            tags[i] = TAG_P
        candidate = MeasurementPlan(tuple(tags), alice=alice)
        cand_neg = _evaluate(z, candidate)
        if cand_neg.clamped > neg.clamped + ACCEPT_TOL:
            plan, neg = candidate, cand_neg
            n_used += 1
        else:
            for i in toggled:
                tags[i] = TAG_Q
    return ProtocolResult(
        target=bob, protocol="routing", logneg=neg.clamped, logneg_raw=neg.raw,
        distance=ps.distance, n_paths=ps.n_paths,
        n_paths_used=n_used,
        useful_fraction=n_used / ps.n_paths if ps.n_paths else None,
        plan=plan,
    )


def protocol_allp(net: Network, alice: int, bob: int, _z=None, _paths=None) -> ProtocolResult:
    """Leaves q-measured, everything else p-measured; single pass."""
    _check_pair(net, alice, bob)
    z = _z if _z is not None else z_from_network(net)
    ps = _paths if _paths is not None else all_shortest_paths(net, alice, bob)
    deg = net.degrees()
    tags = [TAG_Q if deg[i] == 1 else TAG_P for i in range(net.n)]
    tags[alice] = TAG_KEEP
    tags[bob] = TAG_KEEP
    plan = MeasurementPlan(tuple(tags), alice=alice)
    neg = _evaluate(z, plan)
    return ProtocolResult(
        target=bob, protocol="allp", logneg=neg.clamped, logneg_raw=neg.raw,
        distance=ps.distance, n_paths=ps.n_paths,
        n_paths_used=None, useful_fraction=None,
        plan=plan,
    )


_PROTOCOL_FUNCS = {
    "routing": protocol_routing,
    "shortest": protocol_shortest,
    "allp": protocol_allp,
}


def run_protocol(net: Network, alice: int, bob: int, protocol: str) -> ProtocolResult:
    if protocol not in _PROTOCOL_FUNCS:
        raise ParameterError(f"unknown protocol {protocol!r}; choose from {PROTOCOLS}")
    return _PROTOCOL_FUNCS[protocol](net, alice, bob)


def auto_alice(net: Network) -> int:
    """Highest-degree node, lowest index on ties."""
    return int(np.argmax(net.degrees()))


def survey(net: Network, alice="auto", protocols=PROTOCOLS, threads: int | None = 1) -> SurveyReport:
    """Run the requested protocols from alice to every other node.

    Rows are sorted by (distance, number of shortest paths, target index),
    with protocols in the requested order per target; means are taken over
    reachable targets. Targets are independent, so evaluation parallelizes
    over a thread pool without changing any result.
    """
    if net.n < 2:
        raise ParameterError("survey needs at least 2 nodes")
    alice_idx = auto_alice(net) if alice == "auto" else int(alice)
    if not 0 <= alice_idx < net.n:
        raise ParameterError(f"alice={alice_idx} is not a valid node index")
    for proto in protocols:
        if proto not in _PROTOCOL_FUNCS:
            raise ParameterError(f"unknown protocol {proto!r}")
    z = z_from_network(net)
    targets = [t for t in range(net.n) if t != alice_idx]

    def eval_target(bob):
        ps = all_shortest_paths(net, alice_idx, bob)
        out = []
        for proto in protocols:
            t0 = time.perf_counter()
            res = _PROTOCOL_FUNCS[proto](net, alice_idx, bob, _z=z, _paths=ps)
            out.append(replace(res, wall_ms=(time.perf_counter() - t0) * 1e3))
        return out

    if threads is not None and threads == 1:
        per_target = [eval_target(b) for b in targets]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            per_target = list(pool.map(eval_target, targets))

    rows = list(itertools.chain.from_iterable(per_target))
    proto_pos = {p: i for i, p in enumerate(protocols)}
    rows.sort(key=lambda r: (r.distance, r.n_paths, r.target, proto_pos[r.protocol]))

    mean_logneg = {}
    runtime_s = {}
    for proto in protocols:
        vals = [r.logneg for r in rows if r.protocol == proto and math.isfinite(r.distance)]
        mean_logneg[proto] = float(np.mean(vals)) if vals else 0.0
        runtime_s[proto] = sum(r.wall_ms for r in rows if r.protocol == proto) / 1e3
    return SurveyReport(alice=alice_idx, rows=tuple(rows), mean_logneg=mean_logneg, runtime_s=runtime_s)


def exhaustive_best_plan(net: Network, alice: int, bob: int):
    """Brute force over all q/p assignments of the non-kept nodes.

    Exponential in n; intended as the small-instance optimality oracle.
    Returns (best clamped negativity, best plan), first maximizer in mask
    order (others ascending, bit set = p).
    """
    _check_pair(net, alice, bob)
    if net.n > 22:
        raise ParameterError("exhaustive search is limited to n <= 22")
    z = z_from_network(net)
    others = [i for i in range(net.n) if i not in (alice, bob)]
    best_val, best_plan = -math.inf, None
    for mask in range(1 << len(others)):
        p_nodes = [others[i] for i in range(len(others)) if mask >> i & 1]
        plan = pair_plan(net.n, alice, bob, p_nodes=p_nodes)
        val = _evaluate(z, plan).clamped
        if val > best_val:
            best_val, best_plan = val, plan
    return best_val, best_plan
