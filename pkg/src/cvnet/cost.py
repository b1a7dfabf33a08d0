"""Squeezing spectra and costs from adjacency spectra.

A graph state built on adjacency matrix A needs, per adjacency eigenvalue
D_i, one supermode squeezed to the variance pair

    lambda_i^+- = 1/2 (1 + D_i^2/2 +- sqrt(D_i^2 + D_i^4/4)),

and the total squeezing cost in dB is G = sum_i 10 log10(2 lambda_i^+).
Zero eigenvalues contribute vacuum pairs (1/2, 1/2) and exactly 0 dB, so
the number of squeezers equals the numerical rank of A.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import NumericalError, ParameterError
from .network import Network

ANALYTIC_SPECTRUM_TOPOLOGIES = ("linear", "ring", "ring_q", "star", "diamond", "complete")
ANALYTIC_COST_TOPOLOGIES = ("star", "diamond", "complete", "linear_asymptotic")


def lambda_pm(d):
    """Variance pair (lambda+, lambda-) for adjacency eigenvalue(s) d.

    Even in d; lambda+ * lambda- = 1/4 identically (pure states).
    """
    d2 = np.square(np.asarray(d, dtype=float))
    root = np.sqrt(d2 + d2 * d2 / 4.0)
    half = 0.5 * (1.0 + d2 / 2.0)
    return half + 0.5 * root, half - 0.5 * root


def _rank_tol(d: np.ndarray) -> float:
    dmax = np.abs(d).max() if d.size else 0.0
    return d.size * np.finfo(float).eps * dmax


@dataclass(frozen=True)
class SqueezingSpectrum:
    """Per-supermode variance pairs, lambda+ descending."""

    pairs: np.ndarray  # shape (N, 2): [lambda+, lambda-]
    n_squeezers: int

    def __post_init__(self):
        pairs = np.ascontiguousarray(self.pairs, dtype=float)
        if pairs.ndim != 2 or pairs.shape[1] != 2:
            raise ParameterError(f"pairs must have shape (N, 2), got {pairs.shape}")
        pairs.flags.writeable = False
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def from_pairs(cls, pairs, n_squeezers=None) -> "SqueezingSpectrum":
        pairs = np.asarray(pairs, dtype=float)
        order = np.argsort(-pairs[:, 0], kind="stable")
        pairs = pairs[order]
        if n_squeezers is None:
            # recover |D| from lambda+ + lambda- = 1 + D^2/2
            d = np.sqrt(np.maximum(2.0 * (pairs.sum(axis=1) - 1.0), 0.0))
            n_squeezers = int(np.count_nonzero(d > _rank_tol(d)))
        return cls(pairs=pairs, n_squeezers=n_squeezers)

    @classmethod
    def from_adjacency_eigenvalues(cls, d) -> "SqueezingSpectrum":
        d = np.asarray(d, dtype=float)
        lp, lm = lambda_pm(d)
        n_squeezers = int(np.count_nonzero(np.abs(d) > _rank_tol(d)))
        return cls.from_pairs(np.column_stack([lp, lm]), n_squeezers=n_squeezers)

    @property
    def db(self) -> np.ndarray:
        """Per-supermode squeezing s_i = 10 log10(2 lambda_i^+), in dB."""
        return 10.0 * np.log10(2.0 * self.pairs[:, 0])


@dataclass(frozen=True)
class CostReport:
    total_db: float
    per_mode_db: np.ndarray  # descending
    n_squeezers: int
    energy: float  # Tr(A^2), i.e. Delta E in units of hbar*omega/2

    def __post_init__(self):
        per = np.ascontiguousarray(self.per_mode_db, dtype=float)
        per.flags.writeable = False
        object.__setattr__(self, "per_mode_db", per)


def spectrum_from_adjacency(net: Network) -> SqueezingSpectrum:
    """Squeezing spectrum of the graph state, via the adjacency eigenvalues."""
    d = np.linalg.eigvalsh(net.adj)
    return SqueezingSpectrum.from_adjacency_eigenvalues(d)


def squeezing_cost(spec: SqueezingSpectrum) -> CostReport:
    """Total squeezing cost in dB. The energy column uses the identity
    Tr(A^2) = sum_i D_i^2 = 2 sum_i (lambda_i^+ + lambda_i^- - 1)."""
    per = spec.db
    energy = 2.0 * float(np.sum(spec.pairs.sum(axis=1) - 1.0))
    return CostReport(
        total_db=float(per.sum()),
        per_mode_db=np.sort(per)[::-1],
        n_squeezers=spec.n_squeezers,
        energy=energy,
    )


def squeezing_cost_mixed(nu_minus_list) -> float:
    """Cost of a possibly-mixed state from its smallest quadrature variances:
    G = -sum_i 10 log10(min(2 lambda_i^-, 1)). Antisqueezed-only modes
    (lambda- >= 1/2) contribute 0; on pure spectra this equals
    squeezing_cost because lambda+ lambda- = 1/4."""
    lm = np.asarray(nu_minus_list, dtype=float)
    return float(-np.sum(10.0 * np.log10(np.minimum(2.0 * lm, 1.0))))


def cost_report(net: Network) -> CostReport:
    """Convenience: full report with the exact edge-sum energy."""
    report = squeezing_cost(spectrum_from_adjacency(net))
    return CostReport(
        total_db=report.total_db,
        per_mode_db=report.per_mode_db,
        n_squeezers=report.n_squeezers,
        energy=energy_delta(net),
    )


def analytic_spectrum(topology: str, n: int, g: float = 1.0, q_neigh: int = 2) -> np.ndarray:
    """Closed-form adjacency eigenvalues of the regular topologies.

    ring/ring_q is the circulant with q_neigh neighbors per node. The two
    nonzero diamond eigenvalues are +-g sqrt(2 M) with M the interior-node
    count; n counts total nodes here, so M = n - 2 (pass M + 2 to use the
    interior-count labeling directly).
    """
    if topology not in ANALYTIC_SPECTRUM_TOPOLOGIES:
        raise ParameterError(f"no analytic spectrum for topology {topology!r}")
    if n < 2:
        raise ParameterError("n must be >= 2")
    if topology == "linear":
        k = np.arange(1, n + 1)
        return 2.0 * g * np.cos(np.pi * k / (n + 1))
    if topology in ("ring", "ring_q"):
        if q_neigh % 2 != 0 or not 2 <= q_neigh < n:
            raise ParameterError(f"q_neigh must be even, 2 <= q < n, got {q_neigh}")
        k = np.arange(1, n)
        theta = np.pi * k / n
        d = g * np.sin((q_neigh + 1) * theta) / np.sin(theta) - g
        return np.concatenate([[g * q_neigh], d])
    if topology == "star":
        big = g * math.sqrt(n - 1)
        return np.concatenate([[big], np.zeros(n - 2), [-big]])
    if topology == "diamond":
        if n < 3:
            raise ParameterError("diamond needs n >= 3")
        big = g * math.sqrt(2 * (n - 2))
        return np.concatenate([[big], np.zeros(n - 2), [-big]])
    # complete
    return np.concatenate([[g * (n - 1)], np.full(n - 1, -g)])


def _db_of(d: float) -> float:
    lp, _ = lambda_pm(d)
    return float(10.0 * np.log10(2.0 * lp))


@functools.lru_cache(maxsize=None)
def _linear_asymptotic_db(g: float) -> float:
    # per-mode limit of G(L_N)/N: Riemann integral over the spectral density
    val, err = quad(lambda y: _db_of(2.0 * g * math.cos(math.pi * y)), 0.0, 1.0,
                    epsabs=1e-10, epsrel=1e-12, limit=200)
    if err > 1e-9:
        raise NumericalError(f"linear asymptotic quadrature did not converge (err={err:.2e})")
    return val


def analytic_cost(topology: str, n: int, g: float = 1.0) -> float:
    """Closed-form squeezing cost in dB.

    star and diamond cost 20 log10(2 lambda+) of their single nonzero
    eigenvalue pair; the complete graph adds (n-1) copies of the
    D = -g supermode to the large D = g(n-1) one. linear_asymptotic
    returns the per-mode limit of G(L_N)/N (n is ignored).
    """
    if topology not in ANALYTIC_COST_TOPOLOGIES:
        raise ParameterError(f"no closed-form cost for topology {topology!r}")
    if topology == "linear_asymptotic":
        return _linear_asymptotic_db(float(g))
    if n < 2:
        raise ParameterError("n must be >= 2")
    if topology == "star":
        m = g * g * (n - 1)
        return 20.0 * math.log10((2.0 + m + math.sqrt(m * m + 4.0 * m)) / 2.0)
    if topology == "diamond":
        if n < 3:
            raise ParameterError("diamond needs n >= 3")
        m = 2.0 * g * g * (n - 2)
        return 20.0 * math.log10((2.0 + m + math.sqrt(m * m + 4.0 * m)) / 2.0)
    # complete
    bulk = 10.0 * (n - 1) * math.log10((2.0 + g * g + g * math.sqrt(g * g + 4.0)) / 2.0)
    return bulk + _db_of(g * (n - 1))


def er_expected_cost(n: int, p: float, g: float = 1.0) -> float:
    """Expected squeezing cost of an Erdos-Renyi graph state.

    The bulk eigenvalues follow the semicircle density of radius
    R = 2g sqrt(n p (1-p)) plus one outlier at g p n:

        <G> = 10 log10(2 lambda+(g p n))
              + (40 n / (pi R^2)) int_0^R sqrt(R^2 - x^2) log10(2 lambda+(x)) dx.

    The integral is evaluated with the substitution x = R sin(theta), which
    removes the square-root edge.
    """
    if not 0 < p < 1:
        raise ParameterError(f"p must be in (0, 1), got {p}")
    radius = 2.0 * g * math.sqrt(n * p * (1.0 - p))
    outlier = _db_of(g * p * n)

    def integrand(theta):
        lp, _ = lambda_pm(radius * math.sin(theta))
        return math.cos(theta) ** 2 * math.log10(2.0 * float(lp))

    scale = 40.0 * n / math.pi
    val, err = quad(integrand, 0.0, math.pi / 2.0,
                    epsabs=min(1e-12, 1e-9 / scale), epsrel=1e-13, limit=400)
    if scale * err > 1e-8:
        raise NumericalError(f"semicircle quadrature did not converge (err={scale * err:.2e})")
    return outlier + scale * val


def energy_delta(net: Network) -> float:
    """Energy gap to vacuum in units of hbar*omega/2: Tr(A^2) = 2 sum_{i<j} g_ij^2."""
    iu = np.triu_indices(net.n, 1)
    return 2.0 * float(np.sum(net.adj[iu] ** 2))


def adjacency_rank(net: Network) -> int:
    """Numerical rank of the adjacency matrix (= number of squeezers)."""
    d = np.linalg.eigvalsh(net.adj)
    return int(np.count_nonzero(np.abs(d) > _rank_tol(d)))
