"""Gaussian pure-state representations and symplectic spectra.

Two equivalent descriptions are used throughout:

* ``CovMatrix``: the real symmetric 2N x 2N covariance matrix in qp-ordering
  (q_1..q_N, p_1..p_N) with the vacuum quadrature variance normalized to 1/2.
* ``ZGraph``: the complex symmetric N x N matrix Z = V + iU with U positive
  definite; the covariance follows from
  sigma = 1/2 [[U^-1, U^-1 V], [V U^-1, U + V U^-1 V]].

For a graph state with adjacency A and per-node p-squeezing s_i dB,
Z = A + i diag(10**(-s_i/10)); equivalently the q variance of node i is
R_i/2 with R_i = 10**(s_i/10) and the p variance before the entangling
gates is 1/(2 R_i). First moments are dropped everywhere.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError, ParameterError
from .network import Network

VACUUM_VARIANCE = 0.5
PHYSICALITY_TOL = 1e-9
U_CONDITION_LIMIT = 1e12


@dataclass(frozen=True)
class CovMatrix:
    """Covariance matrix wrapper; qp-ordered, vacuum variance 1/2."""

    m: np.ndarray

    def __post_init__(self):
        m = np.ascontiguousarray(self.m, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2 != 0:
            raise ParameterError(f"covariance must be 2N x 2N, got {m.shape}")
        if not np.allclose(m, m.T, atol=1e-12 * max(1.0, np.abs(m).max())):
            raise ParameterError("covariance must be symmetric")
        m = (m + m.T) / 2
        m.flags.writeable = False
        object.__setattr__(self, "m", m)

    @property
    def n_modes(self) -> int:
        return self.m.shape[0] // 2

    def mode_block(self, i: int) -> np.ndarray:
        """2x2 (q_i, p_i) sub-covariance of a single mode."""
        n = self.n_modes
        return self.m[np.ix_([i, n + i], [i, n + i])]

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["n_modes", self.n_modes])
            for row in self.m:
                writer.writerow([f"{x:.17g}" for x in row])


@dataclass(frozen=True)
class ZGraph:
    """Complex symmetric state matrix Z = V + iU, U positive definite."""

    z: np.ndarray

    def __post_init__(self):
        z = np.ascontiguousarray(self.z, dtype=complex)
        if z.ndim != 2 or z.shape[0] != z.shape[1]:
            raise ParameterError(f"Z must be square, got {z.shape}")
        if z.shape[0] > 0:
            if not np.allclose(z, z.T, atol=1e-12 * max(1.0, np.abs(z).max())):
                raise ParameterError("Z must be symmetric")
            z = (z + z.T) / 2
            try:
                np.linalg.cholesky(z.imag)
            except np.linalg.LinAlgError:
                raise ParameterError("imaginary part of Z must be positive definite")
        z.flags.writeable = False
        object.__setattr__(self, "z", z)

    @classmethod
    def from_parts(cls, v, u) -> "ZGraph":
        return cls(np.asarray(v, dtype=float) + 1j * np.asarray(u, dtype=float))

    @property
    def n_modes(self) -> int:
        return self.z.shape[0]

    @property
    def v(self) -> np.ndarray:
        return self.z.real

    @property
    def u(self) -> np.ndarray:
        return self.z.imag

    def to_csv(self, path) -> None:
        """Two blocks (V then U), each preceded by a label row."""
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["n_modes", self.n_modes])
            for label, block in (("V", self.v), ("U", self.u)):
                writer.writerow([label])
                for row in block:
                    writer.writerow([f"{x:.17g}" for x in row])


def symplectic_form(n_modes: int) -> np.ndarray:
    """Omega = [[0, I], [-I, 0]] in qp-ordering."""
    eye = np.eye(n_modes)
    zero = np.zeros((n_modes, n_modes))
    return np.block([[zero, eye], [-eye, zero]])


def graph_state_cov(net: Network) -> CovMatrix:
    """Covariance of the graph state built from p-squeezed modes plus
    entangling gates of strength adj[i, j].

    Blockwise: sigma_qq = diag(R)/2, sigma_qp = diag(R) A / 2,
    sigma_pp = (A diag(R) A + diag(1/R))/2 with R_i = 10**(s_i/10). At s=0
    this is exactly 1/2 [[I, A], [A, I + A^2]].
    """
    a = net.adj
    r = 10.0 ** (net.node_squeeze_db / 10.0)
    ra = r[:, None] * a
    qq = np.diag(r)
    pp = a @ ra + np.diag(1.0 / r)
    m = 0.5 * np.block([[qq, ra], [ra.T, pp]])
    return CovMatrix(m)


def z_from_network(net: Network) -> ZGraph:
    """Z = A + i diag(10**(-s_i/10))."""
    return ZGraph.from_parts(net.adj, np.diag(10.0 ** (-net.node_squeeze_db / 10.0)))


def cov_from_z(z: ZGraph) -> CovMatrix:
    """sigma = 1/2 [[U^-1, U^-1 V], [V U^-1, U + V U^-1 V]]."""
    u, v = z.u, z.v
    if np.linalg.cond(u) > U_CONDITION_LIMIT:
        raise NumericalError(
            f"U is numerically degenerate (condition number > {U_CONDITION_LIMIT:g})"
        )
    ui = np.linalg.inv(u)
    ui = (ui + ui.T) / 2
    uiv = ui @ v
    m = 0.5 * np.block([[ui, uiv], [uiv.T, u + v @ uiv]])
    return CovMatrix(m)


def symplectic_spectrum(cov: CovMatrix) -> np.ndarray:
    """The N symplectic eigenvalues of sigma, ascending.

    Computed as the moduli of the eigenvalues of i Omega sigma, which come
    in +/- pairs; pure states give all values 1/2 in this normalization.
    """
    m = cov.m
    if np.linalg.eigvalsh(m).min() <= 0:
        raise NumericalError("covariance matrix is not positive definite")
    omega = symplectic_form(cov.n_modes)
    mods = np.sort(np.abs(np.linalg.eigvals(1j * omega @ m)))
    return mods[::2].copy()


def is_physical(cov: CovMatrix, tol: float = PHYSICALITY_TOL) -> bool:
    """Uncertainty check: every symplectic eigenvalue >= 1/2 - tol."""
    return bool(symplectic_spectrum(cov).min() >= VACUUM_VARIANCE - tol)


def squeezing_spectrum_numeric(cov: CovMatrix, pair_tol: float = PHYSICALITY_TOL):
    """Squeezing spectrum of a pure state from its covariance eigenvalues.

    The eigenvalues of 2 sigma are {10**(s_i/10), 10**(-s_i/10)}; sorting
    pairs the k-th largest with the k-th smallest so that each product is
    1/4. Raises when the pure-state pairing fails.

    Returns a cost.SqueezingSpectrum (lambda+ descending).
    """
    from .cost import SqueezingSpectrum  # local import, cost has no cycle back

    eig = np.linalg.eigvalsh(cov.m)
    n = cov.n_modes
    lam_minus = eig[:n]
    lam_plus = eig[2 * n - 1 : n - 1 : -1]
    products = lam_plus * lam_minus
    if np.any(np.abs(products - 0.25) > pair_tol):
        raise NumericalError(
            "eigenvalue pairing failed: state is not pure to within tolerance "
            f"(max |lambda+ lambda- - 1/4| = {np.abs(products - 0.25).max():.3e})"
        )
    return SqueezingSpectrum.from_pairs(np.column_stack([lam_plus, lam_minus]))
