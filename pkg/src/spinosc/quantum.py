"""Quantum model of the coupled spin-oscillator at level n.

The quantization restricts to the (n+1)-dimensional sphere space with
E = hbar (n + 1) = 2 fixed, so hbar = 2/(n+1).  The J-hat spectrum is the
ladder hbar ((1-n)/2 + m), m = 0, 1, 2, ...; on the eigenspace of a J-hat
eigenvalue lambda the operator H-hat acts as a zero-diagonal symmetric
tridiagonal matrix of size mu + 1, where

    ell0 = lambda/hbar + (n-1)/2        (a non-negative integer)
    mu   = min(ell0, n)
    offdiagonal beta_k = sqrt((ell0 + 1 - k) k (n - k + 1)),  k = 1..mu,

all scaled by (hbar/2)^{3/2}.  The joint spectrum collects, for each lambda,
the sorted H-hat eigenvalues of that matrix.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import eigensolve
from .errors import SpectrumError, SpinOscError

LEVEL_RESIDUAL_TOL = 1e-9


@dataclass(frozen=True)
class QuantumParams:
    """Level n with hbar = 2/(n+1); hbar is kept exact as a Fraction."""

    n: int

    def __post_init__(self):
        if self.n < 0 or self.n != int(self.n):
            raise SpinOscError(f"level must be a non-negative integer, got {self.n!r}")

    @property
    def hbar_exact(self) -> Fraction:
        return Fraction(2, self.n + 1)

    @property
    def hbar(self) -> float:
        return float(self.hbar_exact)


def j_eigenvalues(params: QuantumParams, count: int) -> np.ndarray:
    """The first ``count`` J-hat eigenvalues hbar ((1-n)/2 + m), ascending.

    Values are generated from exact rationals, so lambda = 1 (reached at
    m = n) is the float 1.0 exactly.
    """
    if count < 1:
        raise SpinOscError("count must be at least 1")
    base = Fraction(1 - params.n, 2)
    hbar = params.hbar_exact
    return np.array([float(hbar * (base + m)) for m in range(count)])


def level_index(params: QuantumParams, lam: float) -> int:
    """The integer ell0 = lambda/hbar + (n-1)/2, rejecting non-eigenvalues."""
    raw = lam / params.hbar + 0.5 * (params.n - 1)
    ell0 = round(raw)
    if abs(raw - ell0) > LEVEL_RESIDUAL_TOL or ell0 < 0:
        raise SpectrumError(f"{lam!r} is not a J-hat eigenvalue at n = {params.n}")
    return int(ell0)


def eigenspace_dim(params: QuantumParams, lam: float) -> int:
    """Dimension 1 + min(n, ell0) of the J-hat eigenspace of ``lam``."""
    return 1 + min(params.n, level_index(params, lam))


@dataclass(frozen=True)
class BandMatrix:
    """Zero-diagonal symmetric tridiagonal matrix of H-hat on one eigenspace.

    ``offdiag`` holds the unscaled beta_k > 0; the physical matrix is
    ``scale`` times the tridiagonal with that off-diagonal.
    """

    offdiag: np.ndarray
    scale: float
    ell0: int

    @property
    def mu(self) -> int:
        return len(self.offdiag)

    @property
    def size(self) -> int:
        return len(self.offdiag) + 1

    def scaled_offdiag(self) -> np.ndarray:
        return self.scale * self.offdiag

    def norm_bound(self) -> float:
        return eigensolve.gershgorin_radius(self.scaled_offdiag())

    def dense(self) -> np.ndarray:
        m = np.zeros((self.size, self.size))
        c = self.scaled_offdiag()
        for k in range(self.mu):
            m[k, k + 1] = m[k + 1, k] = c[k]
        return m


def beta_coefficients(n: int, ell0: int, mu: int) -> np.ndarray:
    k = np.arange(1, mu + 1, dtype=float)
    return np.sqrt((ell0 + 1 - k) * k * (n - k + 1))


def build_h_matrix(params: QuantumParams, lam: float) -> BandMatrix:
    """The matrix of H-hat on the eigenspace of the J-hat eigenvalue ``lam``."""
    ell0 = level_index(params, lam)
    mu = min(ell0, params.n)
    scale = (params.hbar / 2.0) ** 1.5
    return BandMatrix(beta_coefficients(params.n, ell0, mu), scale, ell0)


def tridiag_eigenvalues(matrix: BandMatrix, tol: float = 1e-14) -> np.ndarray:
    """All eigenvalues of the band matrix, ascending, via Sturm bisection."""
    return eigensolve.eigenvalues_bisect(matrix.scaled_offdiag(), tol)


def sigma_n(params: QuantumParams, tol: float = 1e-14) -> np.ndarray:
    """The spectrum Sigma(n): eigenvalues of H-hat on ker(J-hat - 1), n+1 of them."""
    return tridiag_eigenvalues(build_h_matrix(params, 1.0), tol)


@dataclass(frozen=True)
class SpectralColumn:
    lam: float
    nus: np.ndarray


@dataclass(frozen=True)
class JointSpectrum:
    """Ordered columns (lambda, sorted H-hat eigenvalues) of the joint spectrum."""

    columns: tuple

    def lambdas(self) -> np.ndarray:
        return np.array([col.lam for col in self.columns])

    def points(self):
        for col in self.columns:
            for nu in col.nus:
                yield col.lam, nu

    def write_csv(self, stream):
        stream.write("lambda,nu\n")
        for lam, nu in self.points():
            stream.write(f"{lam:.17g},{nu:.17g}\n")

    def to_json_dict(self):
        return {
            "columns": [
                {"lambda": col.lam, "nus": [float(nu) for nu in col.nus]}
                for col in self.columns
            ]
        }


def _worker_count(max_workers=None) -> int:
    if max_workers is not None:
        return max(1, int(max_workers))
    env = os.environ.get("SEMITORIC_THREADS", "1")
    try:
        return max(1, int(env))
    except ValueError:
        return 1


def joint_spectrum(
    params: QuantumParams,
    lambda_min: float,
    lambda_max: float,
    tol: float = 1e-14,
    max_workers=None,
) -> JointSpectrum:
    """Joint spectrum over all J-hat eigenvalues in [lambda_min, lambda_max].

    Columns are ordered by lambda and each column's eigenvalues ascend; the
    ordering never depends on how the per-column solves are scheduled.  An
    empty range yields an empty spectrum.
    """
    if lambda_min > lambda_max:
        raise SpinOscError("lambda_min must not exceed lambda_max")
    hbar = params.hbar_exact
    base = Fraction(1 - params.n, 2)
    # float endpoints within LEVEL_RESIDUAL_TOL of a lattice value are included
    slack = Fraction(1, 10**9)
    m_min = max(0, math.ceil(Fraction(lambda_min) / hbar - base - slack))
    m_max = math.floor(Fraction(lambda_max) / hbar - base + slack)
    if m_max < m_min:
        return JointSpectrum(())

    scale = (params.hbar / 2.0) ** 1.5
    lams = [float(hbar * (base + m)) for m in range(m_min, m_max + 1)]

    def solve_column(args):
        m, lam = args
        mu = min(m, params.n)
        offdiag = scale * beta_coefficients(params.n, m, mu)
        return SpectralColumn(lam, eigensolve.eigenvalues_bisect(offdiag, tol))

    jobs = list(zip(range(m_min, m_max + 1), lams))
    workers = _worker_count(max_workers)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            columns = list(pool.map(solve_column, jobs))
    else:
        columns = [solve_column(job) for job in jobs]
    columns.sort(key=lambda col: col.lam)
    return JointSpectrum(tuple(columns))
