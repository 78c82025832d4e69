"""First-order singularity invariants (a1, a2) at the focus-focus point.

The two numbers are extracted from closed-form integrals along the radial loop
of the critical fiber.  Parametrize the loop by the plane radius u in (0, 2]:
the loop runs from A0 (sheet with y = +rho) through u = 2 and back to B0
(sheet with y = -rho), where rho(u) = u sqrt(1 - u^2/4) and z = 1 - u^2/2.

* a2 is the u -> 0 limit of a bracket combining the loop integral
  2 * [ln(2/u) + ln(1 + sqrt(1 - u^2/4))] with the logarithmic factor
  ln(r_hat_A0 * rho_hat_B0) of the linearized radii; the limit is 5 ln 2.
* a1 is the angle difference theta_hat(A0) - alpha_hat(B0) between the polar
  angles of the linearized coordinate pairs, equal to pi/2.

``LinearizedCoords`` realizes the linear chart used for both: the quadratic
parts of (J - 1, 2 H) become the standard focus-focus pair
(q1, q2) = (x1 xi2 - x2 xi1, x1 xi1 + x2 xi2) up to sign conventions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .classical import PhasePoint
from .errors import ConvergenceError, SpinOscError

SQRT2 = math.sqrt(2.0)

# The linear chart is unique only up to a simultaneous rotation of the
# (x1, x2) and (xi1, xi2) planes; the angle difference computed by a1_value is
# invariant under that rotation.  This representative places the radial angle
# at A0 on the diagonal (+pi/4) and the transverse angle at B0 at -pi/4.
CHART_ALIGNMENT = -0.75 * math.pi


@dataclass(frozen=True)
class LinearizedCoords:
    """Linearized focus-focus coordinates (x1, x2, xi1, xi2) of a phase point.

    Forward map (chart -> manifold tangent coordinates):
        v = (x2 + xi1)/sqrt(2),  x = (x2 - xi1)/sqrt(2),
        u = (-x1 + xi2)/sqrt(2), y = (x1 + xi2)/sqrt(2).
    ``from_cartesian`` inverts it; the round trip is exact up to roundoff.
    """

    x1: float
    x2: float
    xi1: float
    xi2: float

    @classmethod
    def from_cartesian(cls, x, y, u, v):
        return cls(
            (y - u) / SQRT2,
            (x + v) / SQRT2,
            (v - x) / SQRT2,
            (u + y) / SQRT2,
        )

    @classmethod
    def from_point(cls, p: PhasePoint):
        return cls.from_cartesian(p.x, p.y, p.u, p.v)

    def to_cartesian(self):
        """Return (x, y, u, v) under the forward map."""
        return (
            (self.x2 - self.xi1) / SQRT2,
            (self.x1 + self.xi2) / SQRT2,
            (-self.x1 + self.xi2) / SQRT2,
            (self.x2 + self.xi1) / SQRT2,
        )

    def rotated(self, angle):
        """Rotate both coordinate planes by ``angle`` (an equivalent chart)."""
        c, s = math.cos(angle), math.sin(angle)
        return LinearizedCoords(
            c * self.x1 - s * self.x2,
            s * self.x1 + c * self.x2,
            c * self.xi1 - s * self.xi2,
            s * self.xi1 + c * self.xi2,
        )

    @property
    def radial_r(self):
        return math.hypot(self.x1, self.x2)

    @property
    def radial_angle(self):
        return math.atan2(self.x2, self.x1)

    @property
    def transverse_r(self):
        return math.hypot(self.xi1, self.xi2)

    @property
    def transverse_angle(self):
        return math.atan2(self.xi2, self.xi1)


def loop_point(u: float, sheet_sign: int) -> PhasePoint:
    """Point of the radial loop at plane radius ``u`` on the given sheet.

    Along the loop v = 0, x = 0, z = 1 - u^2/2 and y = sheet_sign * rho(u).
    """
    if not 0.0 < u <= 2.0:
        raise SpinOscError(f"loop parameter must lie in (0, 2], got {u!r}")
    rho = u * math.sqrt(1.0 - 0.25 * u * u)
    return PhasePoint(0.0, sheet_sign * rho, 1.0 - 0.5 * u * u, u, 0.0)


def kappa_integral_closed(u1: float) -> float:
    """Closed form of the loop integral from u1 to 2 of du / (u sqrt(1 - u^2/4)).

    Equals ln(2/u1) + ln(1 + sqrt(1 - u1^2/4)); zero at u1 = 2.
    """
    if not 0.0 < u1 <= 2.0:
        raise SpinOscError(f"integral endpoint must lie in (0, 2], got {u1!r}")
    return math.log(2.0 / u1) + math.log1p(math.sqrt(1.0 - 0.25 * u1 * u1))


def log_factor(u: float) -> float:
    """ln of the product of linearized radii r_hat(A0) * rho_hat(B0) at parameter u.

    Equals 2 ln(u/sqrt(2)) + ln(2 - u^2/4 + 2 sqrt(1 - u^2/4)); the plus sign
    in front of the radical is the canonical branch (see ``hat_radius_squared``).
    """
    if not 0.0 < u <= 2.0:
        raise SpinOscError(f"argument must lie in (0, 2], got {u!r}")
    root = math.sqrt(1.0 - 0.25 * u * u)
    return 2.0 * math.log(u / SQRT2) + math.log(2.0 - 0.25 * u * u + 2.0 * root)


def hat_radius_squared(u: float, sign: int) -> float:
    """Squared linearized radius along the loop, both sign branches.

    Returns (u^2/2) (2 - u^2/4 + sign * 2 sqrt(1 - u^2/4)).  The plus branch
    is exp(log_factor(u)) and behaves as 2 u^2 for small u; the minus branch
    collapses as u^6/128 and is kept only as a diagnostic of the chart's
    pairing of the two loop endpoints.
    """
    if not 0.0 < u <= 2.0:
        raise SpinOscError(f"argument must lie in (0, 2], got {u!r}")
    if sign not in (-1, 1):
        raise SpinOscError(f"sign must be +1 or -1, got {sign!r}")
    root = math.sqrt(1.0 - 0.25 * u * u)
    return 0.5 * u * u * (2.0 - 0.25 * u * u + sign * 2.0 * root)


def a2_bracket(u: float) -> float:
    """The bracket whose u -> 0 limit is a2: loop integral plus log factor.

    2 ln(2/u) + 2 ln(1 + sqrt(1 - u^2/4)) + 2 ln(u/sqrt(2))
    + ln(2 - u^2/4 + 2 sqrt(1 - u^2/4)); the u dependence cancels to second
    order, leaving 5 ln 2 in the limit.
    """
    return 2.0 * kappa_integral_closed(u) + log_factor(u)


def a2_sequence(tolerance: float, max_halvings: int = 60):
    """Evaluate a2_bracket on u = 2^-k until successive values settle.

    Returns the list of (u, bracket) pairs; the last entry is the estimate.
    """
    if tolerance <= 0.0:
        raise SpinOscError("tolerance must be positive")
    pairs = []
    previous = None
    u = 0.5
    for _ in range(max_halvings):
        value = a2_bracket(u)
        pairs.append((u, value))
        if previous is not None and abs(value - previous) < tolerance:
            return pairs
        previous = value
        u *= 0.5
    raise ConvergenceError(f"a2 bracket did not settle to {tolerance!r} within {max_halvings} halvings")


def a2_limit(tolerance: float) -> float:
    """The u -> 0 limit of ``a2_bracket`` (the invariant a2 = 5 ln 2)."""
    return a2_sequence(tolerance)[-1][1]


def a1_value(probe_u: float = 1e-2) -> float:
    """The invariant a1 = pi/2, as the angle difference across the loop.

    Computed, not hardcoded: evaluate the aligned linearized chart at the two
    loop endpoints A0 (y = +rho) and B0 (y = -rho) at parameter ``probe_u``
    and return radial_angle(A0) - transverse_angle(B0).  In the aligned chart
    those angles are +pi/4 and -pi/4; the difference does not depend on the
    chart rotation nor, to first order, on probe_u.
    """
    ca = LinearizedCoords.from_point(loop_point(probe_u, +1)).rotated(CHART_ALIGNMENT)
    cb = LinearizedCoords.from_point(loop_point(probe_u, -1)).rotated(CHART_ALIGNMENT)
    return ca.radial_angle - cb.transverse_angle


@dataclass(frozen=True)
class InvariantResult:
    """First-order invariants with the bracket sequence used for the a2 limit."""

    a1: float
    a2: float
    diagnostics: tuple

    @property
    def a2_over_ln2(self):
        return self.a2 / math.log(2.0)

    def to_json_dict(self):
        return {
            "a1": self.a1,
            "a2": self.a2,
            "a2_over_ln2": self.a2_over_ln2,
            "diagnostics": [[u, value] for u, value in self.diagnostics],
        }


def compute_invariants(tolerance: float = 1e-10) -> InvariantResult:
    """Compute (a1, a2) = (pi/2, 5 ln 2) through the closed-form pipeline."""
    pairs = a2_sequence(tolerance)
    return InvariantResult(a1_value(), pairs[-1][1], tuple(pairs))
