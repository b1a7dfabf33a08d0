"""Homodyne q/p measurements on graph states.

In the Z = V + iU picture, writing Z with the measured node as the pivot
block ``[[t, R^T], [R, W]]``:

* q measurement: Z -> W (the node and its edges are deleted),
* p measurement: Z -> W - R R^T / t (the node is deleted and its neighbors
  become coupled: wire shortening).

Eliminating several p-measured nodes one at a time is exactly the block
Schur complement over that set, which is how ``apply_plan`` evaluates whole
plans in one solve. Measurement outcomes are ignored throughout: only
covariances are tracked, so all results are "up to displacement".

``conditioning_oracle`` implements the same physics independently on the
covariance matrix (Schur-complement conditioning on the measured
quadrature) and exists to cross-check the Z-picture rules.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalError, ParameterError, SingularPivotError
from .gaussian import CovMatrix, ZGraph

PIVOT_TOL = 1e-12

TAG_Q = "Q"
TAG_P = "P"
TAG_KEEP = "KEEP"
_TAGS = (TAG_Q, TAG_P, TAG_KEEP)


@dataclass(frozen=True)
class MeasurementPlan:
    """Per-node measurement assignment; exactly two KEEP nodes for
    pair extraction, with ``alice`` naming which KEEP comes first."""

    assignments: tuple
    alice: int | None = None

    def __post_init__(self):
        tags = tuple(self.assignments)
        for i, tag in enumerate(tags):
            if tag not in _TAGS:
                raise ParameterError(f"node {i}: invalid tag {tag!r}")
        object.__setattr__(self, "assignments", tags)
        if self.alice is not None:
            if not (0 <= self.alice < len(tags)) or tags[self.alice] != TAG_KEEP:
                raise ParameterError(f"alice={self.alice} must be a KEEP node")

    @property
    def n(self) -> int:
        return len(self.assignments)

    @property
    def keep_nodes(self) -> tuple:
        keep = [i for i, t in enumerate(self.assignments) if t == TAG_KEEP]
        if self.alice is not None and keep and keep[0] != self.alice:
            keep.remove(self.alice)
            keep.insert(0, self.alice)
        return tuple(keep)

    @property
    def q_nodes(self) -> tuple:
        return tuple(i for i, t in enumerate(self.assignments) if t == TAG_Q)

    @property
    def p_nodes(self) -> tuple:
        return tuple(i for i, t in enumerate(self.assignments) if t == TAG_P)

    def to_text(self) -> str:
        return "".join(f"{i} {t}\n" for i, t in enumerate(self.assignments))

    @classmethod
    def from_text(cls, text: str, alice: int | None = None) -> "MeasurementPlan":
        entries = {}
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            fields = line.split()
            if len(fields) != 2 or fields[1] not in _TAGS:
                raise ParameterError(f"bad plan line {raw!r}")
            entries[int(fields[0])] = fields[1]
        if sorted(entries) != list(range(len(entries))):
            raise ParameterError("plan must assign every node index exactly once")
        return cls(tuple(entries[i] for i in range(len(entries))), alice=alice)


def pair_plan(n: int, alice: int, bob: int, p_nodes=()) -> MeasurementPlan:
    """Plan keeping (alice, bob), measuring p_nodes in p and the rest in q."""
    tags = [TAG_Q] * n
    for i in p_nodes:
        tags[i] = TAG_P
    tags[alice] = TAG_KEEP
    tags[bob] = TAG_KEEP
    return MeasurementPlan(tuple(tags), alice=alice)


def _delete(z: np.ndarray, node: int) -> np.ndarray:
    keep = [i for i in range(z.shape[0]) if i != node]
    return z[np.ix_(keep, keep)]


def measure_q(z: ZGraph, node: int) -> ZGraph:
    """Vertex removal. Measuring the last mode leaves the empty state."""
    if not 0 <= node < z.n_modes:
        raise ParameterError(f"node {node} out of range (n={z.n_modes})")
    return ZGraph(_delete(z.z, node))


def measure_p(z: ZGraph, node: int) -> ZGraph:
    """Wire shortening: W - R R^T / t with pivot t = Z[node, node]."""
    if not 0 <= node < z.n_modes:
        raise ParameterError(f"node {node} out of range (n={z.n_modes})")
    t = z.z[node, node]
    if abs(t) < PIVOT_TOL:
        raise SingularPivotError(f"pivot |Z[{node},{node}]| = {abs(t):.3e} < {PIVOT_TOL}")
    rest = [i for i in range(z.n_modes) if i != node]
    r = z.z[rest, node]
    w = z.z[np.ix_(rest, rest)]
    return ZGraph(w - np.outer(r, r) / t)


def _schur_eliminate(zmat: np.ndarray, keep: list, elim: list) -> np.ndarray:
    """Eliminate ``elim`` rows/cols of a complex symmetric matrix; equals
    measuring them in p one at a time."""
    if not elim:
        return zmat[np.ix_(keep, keep)]
    zkk = zmat[np.ix_(keep, keep)]
    zke = zmat[np.ix_(keep, elim)]
    zee = zmat[np.ix_(elim, elim)]
    try:
        x = np.linalg.solve(zee, zke.T)
    except np.linalg.LinAlgError:
        raise SingularPivotError("p-measured block is singular")
    out = zkk - zke @ x
    return (out + out.T) / 2


def apply_plan(z: ZGraph, plan: MeasurementPlan) -> ZGraph:
    """Apply a full plan and return the kept pair's 2-mode Z.

    Q deletions happen first, then all P nodes are eliminated in one Schur
    complement; the order is immaterial for disjoint nodes, this one is
    canonical. Mode 0 of the result is the plan's alice (lower-index KEEP
    when alice is unset).
    """
    if plan.n != z.n_modes:
        raise ParameterError(f"plan covers {plan.n} nodes, state has {z.n_modes}")
    keep = plan.keep_nodes
    if len(keep) != 2:
        raise ParameterError(f"pair extraction needs exactly 2 KEEP nodes, got {len(keep)}")
    survivors = [i for i in range(z.n_modes) if plan.assignments[i] != TAG_Q]
    zq = z.z[np.ix_(survivors, survivors)]
    pos = {node: i for i, node in enumerate(survivors)}
    out = _schur_eliminate(zq, [pos[k] for k in keep], [pos[p] for p in plan.p_nodes])
    return ZGraph(out)


def conditioning_oracle(cov: CovMatrix, node: int, basis: str) -> CovMatrix:
    """Exact Gaussian homodyne conditioning on one quadrature of one mode.

    The conditional covariance of the rest is the Schur-complement update
    sigma' = sigma_rest - c c^T / v where v is the measured quadrature's
    variance and c its covariance column; the measured mode is then dropped.
    Independent of the Z-picture rules by construction.
    """
    if basis not in (TAG_Q, TAG_P):
        raise ParameterError(f"basis must be 'Q' or 'P', got {basis!r}")
    n = cov.n_modes
    if not 0 <= node < n:
        raise ParameterError(f"node {node} out of range (n={n})")
    m = cov.m
    pivot_idx = node if basis == TAG_Q else n + node
    v = m[pivot_idx, pivot_idx]
    if v < PIVOT_TOL:
        raise NumericalError(f"measured quadrature variance {v:.3e} is degenerate")
    rest = [i for i in range(2 * n) if i != node and i != n + node]
    c = m[rest, pivot_idx]
    out = m[np.ix_(rest, rest)] - np.outer(c, c) / v
    return CovMatrix(out)


def conditioning_chain(cov: CovMatrix, plan: MeasurementPlan) -> CovMatrix:
    """Oracle counterpart of apply_plan: condition on every measured node
    (Q first, then P, descending index so positions stay valid), returning
    the kept pair's 4x4 covariance with alice as mode 0."""
    if plan.n != cov.n_modes:
        raise ParameterError(f"plan covers {plan.n} nodes, state has {cov.n_modes}")
    labels = list(range(plan.n))
    state = cov
    for tag in (TAG_Q, TAG_P):
        for node in sorted((i for i, t in enumerate(plan.assignments) if t == tag), reverse=True):
            state = conditioning_oracle(state, labels.index(node), tag)
            labels.remove(node)
    keep = plan.keep_nodes
    order = [labels.index(k) for k in keep]
    n = state.n_modes
    sel = order + [n + i for i in order]
    return CovMatrix(state.m[np.ix_(sel, sel)])
