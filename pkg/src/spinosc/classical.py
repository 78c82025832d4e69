"""Classical mechanics of the coupled spin-oscillator on S^2 x R^2.

The phase space is the unit sphere (coordinates x, y, z) times the plane
(coordinates u, v) with the product symplectic structure.  The two commuting
Hamiltonians are

    J = (u^2 + v^2)/2 + z        (circle action)
    H = (u x + v y)/2

The pair F = (J, H) has one focus-focus critical point at the north pole
(0, 0, 1, 0, 0) with critical value (1, 0); its fiber is a pinched torus
parametrized here by ``singular_fiber``.  Cartesian (x, y, z, u, v) is the
canonical representation everywhere; the cylindrical chart (u, v, z, theta)
only appears inside ``hamiltonian_vector_field`` and the flow integrator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ChartError, ConstraintError, SpinOscError

SPHERE_TOL = 1e-12
# hamiltonian_vector_field divides by 1 - z^2; reject points this close to a pole
POLE_MARGIN = 1e-9


@dataclass(frozen=True)
class PhasePoint:
    """A point (x, y, z, u, v) with (x, y, z) on the unit sphere."""

    x: float
    y: float
    z: float
    u: float
    v: float

    def __post_init__(self):
        r2 = self.x * self.x + self.y * self.y + self.z * self.z
        if abs(r2 - 1.0) > SPHERE_TOL:
            raise ConstraintError(f"point off the unit sphere: |x|^2 = {r2!r}")

    @classmethod
    def from_cylindrical(cls, theta, z, u, v):
        rho = math.sqrt(max(1.0 - z * z, 0.0))
        return cls(rho * math.cos(theta), rho * math.sin(theta), z, u, v)

    def as_array(self):
        return np.array([self.x, self.y, self.z, self.u, self.v])


@dataclass(frozen=True)
class MomentumValue:
    """A value (j, h) of the momentum map F = (J, H)."""

    j: float
    h: float

    def as_tuple(self):
        return (self.j, self.h)


@dataclass(frozen=True)
class FiberParam:
    """Parameters (z_tilde, theta_tilde, sheet) of the critical-fiber chart.

    ``sheet`` is +1 or -1 and selects one of the two sheets glued along the
    pinch point (z_tilde = 1) and the circle r = 2 (z_tilde = -1).
    """

    z_tilde: float
    theta_tilde: float
    sheet: int

    def __post_init__(self):
        if not -1.0 <= self.z_tilde <= 1.0:
            raise SpinOscError(f"z_tilde must lie in [-1, 1], got {self.z_tilde!r}")
        if self.sheet not in (-1, 1):
            raise SpinOscError(f"sheet must be +1 or -1, got {self.sheet!r}")


def momentum_map(p: PhasePoint) -> MomentumValue:
    """Evaluate F = (J, H) at a phase point."""
    return MomentumValue(0.5 * (p.u * p.u + p.v * p.v) + p.z, 0.5 * (p.u * p.x + p.v * p.y))


def poisson_bracket_jh(p: PhasePoint) -> float:
    """Poisson bracket {J, H} from closed-form partial derivatives.

    The plane contribution is J_u H_v - J_v H_u and the sphere contribution is
    J_z H_theta (J has no theta dependence, so the J_theta H_z term vanishes
    identically and no pole-singular quantity is ever formed).  The two
    contributions cancel exactly; the returned value is pure roundoff.
    """
    plane = 0.5 * (p.u * p.y - p.v * p.x)
    sphere = 0.5 * (p.x * p.v - p.y * p.u)
    return plane + sphere


def hamiltonian_vector_field(p: PhasePoint) -> np.ndarray:
    """X_H at ``p`` in the (u, v, z, theta) chart, as (du, dv, dz, dtheta).

    The components are (y/2, -x/2, (x v - y u)/2, z (x u + y v) / (2 (1 - z^2))).
    The theta component is -dH/dz; both J and H are exactly constant along the
    returned direction.  Points with |z| >= 1 - POLE_MARGIN are rejected since
    the chart degenerates at the poles.
    """
    one_minus_z2 = 1.0 - p.z * p.z
    if abs(p.z) >= 1.0 - POLE_MARGIN:
        raise ChartError(f"cylindrical chart is singular near the poles (z = {p.z!r})")
    return np.array(
        [
            0.5 * p.y,
            -0.5 * p.x,
            0.5 * (p.x * p.v - p.y * p.u),
            p.z * (p.x * p.u + p.y * p.v) / (2.0 * one_minus_z2),
        ]
    )


def singular_fiber(param: FiberParam) -> PhasePoint:
    """Map fiber parameters to a phase point of the critical fiber F^-1(1, 0).

    With r = sqrt(2 (1 - z_tilde)), t = theta_tilde + sheet * pi/2,
    rho = sqrt(1 - z_tilde^2):  (u, v) = r e^{i t}, (x, y) = rho e^{i theta_tilde},
    z = z_tilde.  Every image point satisfies J = 1 and H = 0.
    """
    zt = param.z_tilde
    r = math.sqrt(2.0 * (1.0 - zt))
    t = param.theta_tilde + param.sheet * 0.5 * math.pi
    rho = math.sqrt(max(1.0 - zt * zt, 0.0))
    return PhasePoint(
        rho * math.cos(param.theta_tilde),
        rho * math.sin(param.theta_tilde),
        zt,
        r * math.cos(t),
        r * math.sin(t),
    )


@dataclass(frozen=True)
class FlowResult:
    """Trajectory of the H flow: sampled points, sample times, truncation flag.

    ``truncated`` is True when the trajectory left the cylindrical chart
    (|z| -> 1) before reaching the requested duration; the points collected up
    to that moment are returned.
    """

    points: tuple
    times: np.ndarray
    truncated: bool

    def momentum_values(self):
        return [momentum_map(q) for q in self.points]


def _chart_state(p: PhasePoint) -> np.ndarray:
    return np.array([p.u, p.v, p.z, math.atan2(p.y, p.x)])


def _chart_point(state) -> PhasePoint:
    u, v, z, theta = state
    return PhasePoint.from_cylindrical(theta, z, u, v)


def _chart_rhs(state) -> np.ndarray:
    u, v, z, theta = state
    one_minus_z2 = 1.0 - z * z
    if one_minus_z2 <= POLE_MARGIN:
        raise ChartError("flow reached a chart pole")
    rho = math.sqrt(one_minus_z2)
    x = rho * math.cos(theta)
    y = rho * math.sin(theta)
    return np.array(
        [0.5 * y, -0.5 * x, 0.5 * (x * v - y * u), z * (x * u + y * v) / (2.0 * one_minus_z2)]
    )


def flow_h(p0: PhasePoint, duration: float, step: float) -> FlowResult:
    """Integrate the H flow from ``p0`` with the classical four-stage scheme.

    Fixed step size; J and H are conserved to well below 1e-8 over unit time
    at step 1e-3.  Exactly critical points of H (the poles with u = v = 0) are
    fixed points and short-circuit to a constant two-sample trajectory.
    """
    if step <= 0.0:
        raise SpinOscError("step must be positive")
    if duration <= 0.0:
        raise SpinOscError("duration must be positive")
    if p0.u == 0.0 and p0.v == 0.0 and p0.x == 0.0 and p0.y == 0.0:
        # dH = 0 there, so X_H = 0 in any chart
        return FlowResult((p0, p0), np.array([0.0, duration]), False)

    n_steps = max(1, int(round(duration / step)))
    state = _chart_state(p0)
    points = [p0]
    times = [0.0]
    truncated = False
    for i in range(n_steps):
        try:
            k1 = _chart_rhs(state)
            k2 = _chart_rhs(state + 0.5 * step * k1)
            k3 = _chart_rhs(state + 0.5 * step * k2)
            k4 = _chart_rhs(state + step * k3)
            nxt = state + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            if abs(nxt[2]) >= 1.0 - POLE_MARGIN:
                raise ChartError("flow reached a chart pole")
        except ChartError:
            truncated = True
            break
        state = nxt
        points.append(_chart_point(state))
        times.append((i + 1) * step)
    return FlowResult(tuple(points), np.array(times), truncated)


def boundary_curve(s: float):
    """Upper and lower boundary points of the momentum-map image at parameter s.

    For s >= 1 returns the pair of MomentumValue
    ((s^2 - 3)/(2 s), +-(s^2 - 1)/(2 s^{3/2})); at s = 1 the two branches meet
    in the elliptic-elliptic corner (-1, 0).
    """
    if s < 1.0:
        raise SpinOscError(f"boundary parameter must satisfy s >= 1, got {s!r}")
    j = (s * s - 3.0) / (2.0 * s)
    h = (s * s - 1.0) / (2.0 * s ** 1.5)
    return MomentumValue(j, h), MomentumValue(j, -h)
