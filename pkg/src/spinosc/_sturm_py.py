"""Pure-NumPy Sturm-count kernel, the fallback for ``spinosc._sturm``.

Arithmetically identical to the compiled kernel: same pivot recurrence, same
zero-pivot replacement, evaluated in the same order, so the two backends
produce bit-identical bisection results.
"""

import numpy as np

TINY = 2.2250738585072014e-308  # smallest normal double


def sturm_counts(offdiag_sq, shifts):
    """Number of eigenvalues strictly below each shift (see compiled twin)."""
    shifts = np.asarray(shifts, dtype=float)
    counts = np.zeros(shifts.shape, dtype=np.int64)
    d = -shifts
    d = np.where(d == 0.0, -TINY, d)
    counts += d < 0.0
    for c2 in offdiag_sq:
        d = -shifts - c2 / d
        d = np.where(d == 0.0, -TINY, d)
        counts += d < 0.0
    return counts
