"""Two-mode entanglement: partial transpose, symplectic invariants,
logarithmic negativity, and closed forms for hub pairs fed by parallel
p-measured interior nodes.

Normalization: covariances keep the vacuum-1/2 convention, so the smallest
partially-transposed symplectic eigenvalue nu~ of a separable state is
>= 1/2. The reported negativity rescales it by the vacuum value,

    N = -2 log2(nu~ / (1/2)),

so that the parallel-enhancement closed form N = log2(1 + 2 k R g^2)
(k interior paths, R = 10**(s/10), gate strength g) comes out exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError, ParameterError
from .gaussian import VACUUM_VARIANCE, CovMatrix, ZGraph, cov_from_z

DISCRIMINANT_TOL = 1e-10


@dataclass(frozen=True)
class PairState:
    """Two-mode state (modes A, B) with the original node labels."""

    cov: CovMatrix
    labels: tuple = (0, 1)

    def __post_init__(self):
        if self.cov.n_modes != 2:
            raise ParameterError(f"pair state needs 2 modes, got {self.cov.n_modes}")
        object.__setattr__(self, "labels", tuple(self.labels))


@dataclass(frozen=True)
class LogNegativity:
    raw: float
    clamped: float


def pair_from_z(zpair: ZGraph, labels=(0, 1)) -> PairState:
    return PairState(cov=cov_from_z(zpair), labels=labels)


def partial_transpose(cov) -> np.ndarray:
    """Flip the sign of p_B (row and column): the 4x4 PPT test matrix."""
    m = cov.m if isinstance(cov, CovMatrix) else np.asarray(cov, dtype=float)
    if m.shape != (4, 4):
        raise ParameterError(f"partial transpose needs a 4x4 matrix, got {m.shape}")
    t = np.diag([1.0, 1.0, 1.0, -1.0])  # (qA, qB, pA, pB)
    return t @ m @ t


def seralian(sigma: np.ndarray) -> float:
    """det sigma_A + det sigma_B + 2 det sigma_AB from the 2x2 mode blocks."""
    m = np.asarray(sigma, dtype=float)
    if m.shape != (4, 4):
        raise ParameterError(f"seralian needs a 4x4 matrix, got {m.shape}")
    a = m[np.ix_([0, 2], [0, 2])]
    b = m[np.ix_([1, 3], [1, 3])]
    c = m[np.ix_([0, 2], [1, 3])]
    return float(np.linalg.det(a) + np.linalg.det(b) + 2.0 * np.linalg.det(c))


def nu_minus(sigma_tilde: np.ndarray) -> float:
    """Smallest symplectic eigenvalue via nu^2 = (Delta - sqrt(Delta^2 - 4 det))/2."""
    m = np.asarray(sigma_tilde, dtype=float)
    delta = seralian(m)
    disc = delta * delta - 4.0 * np.linalg.det(m)
    if disc < -DISCRIMINANT_TOL:
        raise NumericalError(f"negative discriminant {disc:.3e} in symplectic eigenvalue")
    nu2 = (delta - math.sqrt(max(disc, 0.0))) / 2.0
    if nu2 < -DISCRIMINANT_TOL:
        raise NumericalError(f"negative nu^2 = {nu2:.3e}")
    return math.sqrt(max(nu2, 0.0))


def log_negativity(pair: PairState) -> LogNegativity:
    """N = -2 log2(nu~ / vacuum); clamped at 0 for separable pairs."""
    nu = nu_minus(partial_transpose(pair.cov))
    raw = -2.0 * math.log2(nu / VACUUM_VARIANCE) + 0.0  # normalize -0.0
    return LogNegativity(raw=raw, clamped=raw if raw > 0.0 else 0.0)


def pair_logneg_from_z(zpair: ZGraph, labels=(0, 1)) -> LogNegativity:
    return log_negativity(pair_from_z(zpair, labels))


@dataclass(frozen=True)
class DiamondParams:
    """Hub pair plus parallel interior modes, all p-measured.

    s_a, s_b are the hubs' p-variance factors (1 for vacuum hubs); each
    interior entry is (s_k, g_ak, g_bk): its p-variance factor and the two
    gate strengths toward the hubs.
    """

    s_a: float
    s_b: float
    centers: tuple

    def __post_init__(self):
        centers = tuple((float(s), float(ga), float(gb)) for s, ga, gb in self.centers)
        if self.s_a <= 0 or self.s_b <= 0 or any(s <= 0 for s, _, _ in centers):
            raise ParameterError("variance factors must be positive")
        object.__setattr__(self, "centers", centers)

    @classmethod
    def uniform(cls, n_centers: int, s_db: float = 0.0, g: float = 1.0) -> "DiamondParams":
        """Interior modes squeezed by s_db, hubs at vacuum: the configuration
        whose pair negativity is log2(1 + 2 n_centers 10**(s_db/10) g^2)."""
        s = 10.0 ** (-s_db / 10.0)
        return cls(s_a=1.0, s_b=1.0, centers=tuple((s, g, g) for _ in range(n_centers)))


def diamond_pair_closed_form(params: DiamondParams) -> PairState:
    """Pair state left on the hubs after p-measuring every interior mode.

    Z_AB = i [[Sigma_A, Gamma], [Gamma, Sigma_B]] with
    Sigma_A = s_a + sum_k g_ak^2 / s_k, Sigma_B likewise and
    Gamma = sum_k g_ak g_bk / s_k; the smallest rescaled PPT eigenvalue obeys
    nu^2 = (sqrt(Sigma_A Sigma_B) - Gamma)^2 / (Sigma_A Sigma_B - Gamma^2).
    """
    sig_a = params.s_a + sum(ga * ga / s for s, ga, _ in params.centers)
    sig_b = params.s_b + sum(gb * gb / s for s, _, gb in params.centers)
    gamma = sum(ga * gb / s for s, ga, gb in params.centers)
    zpair = ZGraph.from_parts(np.zeros((2, 2)), np.array([[sig_a, gamma], [gamma, sig_b]]))
    return pair_from_z(zpair)


def diamond_logneg(n_centers: int, s_db: float = 0.0, g: float = 1.0) -> float:
    """log2(1 + 2 n_centers R g^2) with R = 10**(s_db/10): the negativity of
    the hub pair of a diamond whose interior nodes are squeezed by s_db and
    all p-measured (hubs unsqueezed)."""
    if n_centers < 0:
        raise ParameterError("n_centers must be >= 0")
    r = 10.0 ** (s_db / 10.0)
    return math.log2(1.0 + 2.0 * n_centers * r * g * g)
