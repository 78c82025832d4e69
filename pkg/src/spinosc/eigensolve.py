"""Bisection eigensolver for zero-diagonal symmetric tridiagonal matrices.

Eigenvalue counts come from Sturm sequences (sign agreements of the LDL^T
pivots of M - x I); each eigenvalue index is then bisected inside its own
interval, all indices advancing in lockstep.  The iteration count is fixed up
front from the Gershgorin radius and the requested tolerance, so the result is
deterministic and independent of scheduling.

The Sturm kernel has two interchangeable implementations: a compiled Cython
extension (``spinosc._sturm``) and a vectorized NumPy fallback
(``spinosc._sturm_py``).  The compiled one is selected at import when present
unless ``SPINOSC_PURE_PYTHON=1`` forces the fallback.  Both run the identical
floating-point recurrence, so eigenvalues agree bit for bit;
``benchmarks/bench_eigensolver.py`` compares their speed.
"""

from __future__ import annotations

import math
import os

import numpy as np

from .errors import SpinOscError

if os.environ.get("SPINOSC_PURE_PYTHON") == "1":
    from . import _sturm_py as _kernel

    BACKEND = "python"
else:
    try:
        from . import _sturm as _kernel  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _sturm_py as _kernel

        BACKEND = "python"


def backend_name() -> str:
    """Which Sturm kernel is active: 'compiled' or 'python'."""
    return BACKEND


def sturm_counts(offdiag_sq, shifts):
    """Number of eigenvalues strictly below each shift."""
    offdiag_sq = np.ascontiguousarray(offdiag_sq, dtype=float)
    shifts = np.ascontiguousarray(shifts, dtype=float)
    return _kernel.sturm_counts(offdiag_sq, shifts)


def gershgorin_radius(offdiag) -> float:
    """Upper bound for |eigenvalue|: max row sum of absolute off-diagonals."""
    if len(offdiag) == 0:
        return 0.0
    padded = np.concatenate([[0.0], np.abs(offdiag), [0.0]])
    return float(np.max(padded[:-1] + padded[1:]))


def eigenvalues_bisect(offdiag, tol: float = 1e-14) -> np.ndarray:
    """All eigenvalues, ascending, of the matrix with the given off-diagonal.

    ``offdiag`` holds the n scaled off-diagonal entries of an (n+1) x (n+1)
    zero-diagonal symmetric tridiagonal matrix.  Each eigenvalue lands within
    max(tol, 4 eps) * gershgorin_radius of the exact value.
    """
    if tol <= 0.0:
        raise SpinOscError("tolerance must be positive")
    offdiag = np.asarray(offdiag, dtype=float)
    size = len(offdiag) + 1
    radius = gershgorin_radius(offdiag)
    if size == 1 or radius == 0.0:
        return np.zeros(size)

    c2 = np.ascontiguousarray(offdiag * offdiag)
    tol_abs = max(tol, 4.0 * np.finfo(float).eps) * radius
    iterations = max(1, math.ceil(math.log2(max(2.0 * radius / tol_abs, 2.0))))

    index = np.arange(size)
    lo = np.full(size, -radius)
    hi = np.full(size, radius)
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        below = sturm_counts(c2, mid)
        move_up = below <= index
        lo = np.where(move_up, mid, lo)
        hi = np.where(move_up, hi, mid)
    return 0.5 * (lo + hi)
