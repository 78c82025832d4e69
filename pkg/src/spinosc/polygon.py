"""Polygon and height invariants, and the lattice development of joint spectra.

A weighted polygon is a rational convex polygonal set together with a vertical
cut line and a sign.  Unbounded sets are stored as a counterclockwise corner
chain plus the two outgoing ray directions at the chain ends; bounded ones as
a closed counterclockwise chain.  All coordinates are exact ``Fraction``s so
group-action identities can be tested as equalities.

The group acting on weighted polygons combines a global integer vertical
shear with a piecewise shear that is the identity left of the cut; the sign
part of an element multiplies the polygon's sign and contributes the
piecewise shear u = epsilon (1 - epsilon') / 2.  Transformations that break
convexity raise ``AdmissibilityError``.

``develop_spectrum`` performs the heuristic unwinding of a joint spectrum
into a regular lattice: per-column eigenvalues are re-indexed to consecutive
multiples of hbar, bottoms anchored at zero left of the cut, and an integer
shear applied right of the cut, chosen by least-squares straightness of the
boundary selected by the sign (top for epsilon = -1, bottom for +1).  The
convex hull of the developed points approaches the matching reference polygon
as n grows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import AdmissibilityError, SpinOscError
from .quantum import JointSpectrum, QuantumParams


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1]


def _sub(p, q):
    return (p[0] - q[0], p[1] - q[1])


def _boundary_directions(vertices, rays):
    dirs = []
    if rays is not None:
        dirs.append((-rays[0][0], -rays[0][1]))
    for p, q in zip(vertices, vertices[1:]):
        dirs.append(_sub(q, p))
    if rays is not None:
        dirs.append(rays[1])
    else:
        dirs.append(_sub(vertices[0], vertices[-1]))
    return dirs


def _is_convex_ccw(vertices, rays):
    dirs = _boundary_directions(vertices, rays)
    if rays is None:
        pairs = zip(dirs, dirs[1:] + dirs[:1])
    else:
        pairs = zip(dirs, dirs[1:])
    return all(_cross(a, b) >= 0 for a, b in pairs)


def _canonicalize(vertices, rays):
    """Drop repeated and collinear chain vertices (including against rays)."""
    verts = [tuple(v) for v in vertices]
    deduped = [verts[0]]
    for v in verts[1:]:
        if v != deduped[-1]:
            deduped.append(v)
    verts = deduped
    if rays is None:
        changed = True
        while changed and len(verts) > 3:
            changed = False
            for i in range(len(verts)):
                before = _sub(verts[i], verts[i - 1])
                after = _sub(verts[(i + 1) % len(verts)], verts[i])
                if _cross(before, after) == 0 and _dot(before, after) > 0:
                    del verts[i]
                    changed = True
                    break
        return tuple(verts), None

    while len(verts) >= 2:
        incoming = (-rays[0][0], -rays[0][1])
        first_edge = _sub(verts[1], verts[0])
        if _cross(incoming, first_edge) == 0 and _dot(incoming, first_edge) > 0:
            verts.pop(0)
            continue
        break
    while len(verts) >= 2:
        last_edge = _sub(verts[-1], verts[-2])
        if _cross(last_edge, rays[1]) == 0 and _dot(last_edge, rays[1]) > 0:
            verts.pop()
            continue
        break
    changed = True
    while changed:
        changed = False
        for i in range(1, len(verts) - 1):
            before = _sub(verts[i], verts[i - 1])
            after = _sub(verts[i + 1], verts[i])
            if _cross(before, after) == 0 and _dot(before, after) > 0:
                del verts[i]
                changed = True
                break
    return tuple(verts), (tuple(rays[0]), tuple(rays[1]))


@dataclass(frozen=True)
class WeightedPolygon:
    """Convex polygonal set + vertical cut + sign, with exact rational data.

    ``vertices`` is a counterclockwise chain; ``rays`` is None for bounded
    polygons, otherwise the outgoing directions at the first and last chain
    vertices.
    """

    vertices: tuple
    rays: tuple | None
    cut: Fraction
    epsilon: int

    def __post_init__(self):
        if self.epsilon not in (-1, 1):
            raise SpinOscError(f"sign must be +1 or -1, got {self.epsilon!r}")
        if len(self.vertices) < (3 if self.rays is None else 1):
            raise SpinOscError("too few vertices for a polygon")
        if not _is_convex_ccw(self.vertices, self.rays):
            raise AdmissibilityError("polygon boundary is not convex counterclockwise")

    @classmethod
    def create(cls, vertices, rays, cut, epsilon):
        vertices = tuple((Fraction(x), Fraction(y)) for x, y in vertices)
        if rays is not None:
            rays = tuple((Fraction(dx), Fraction(dy)) for dx, dy in rays)
        vertices, rays = _canonicalize(vertices, rays)
        return cls(vertices, rays, Fraction(cut), epsilon)

    def corner_set(self):
        return frozenset(self.vertices)

    def to_json_dict(self):
        return {
            "vertices": [[float(x), float(y)] for x, y in self.vertices],
            "rays": None if self.rays is None else [[float(dx), float(dy)] for dx, dy in self.rays],
            "cut": float(self.cut),
            "epsilon": self.epsilon,
        }


def reference_polygon(epsilon: int, cut=1) -> WeightedPolygon:
    """The two reference representatives of the polygon invariant.

    epsilon = -1: corners (-1, 0) and (1, 0), slope-1 rays leaving both.
    epsilon = +1: corners (-1, 0) and (1, 2), horizontal rays leaving both.
    The two lie in one orbit of the group action (a unit shear at the cut).
    """
    if epsilon == -1:
        return WeightedPolygon.create(((-1, 0), (1, 0)), ((1, 1), (1, 1)), cut, -1)
    if epsilon == 1:
        return WeightedPolygon.create(((1, 2), (-1, 0)), ((1, 0), (1, 0)), cut, 1)
    raise SpinOscError(f"sign must be +1 or -1, got {epsilon!r}")


def _shear_global(point, k):
    x, y = point
    return (x, k * x + y)


def _split_chain_at_cut(vertices, rays, cut):
    """Insert boundary points on the cut line so no edge or ray straddles it."""
    verts = list(vertices)
    if rays is not None:
        r0, r1 = rays
        if r0[0] != 0:
            t = (cut - verts[0][0]) / r0[0]
            if t > 0:
                verts.insert(0, (cut, verts[0][1] + r0[1] * t))
        if r1[0] != 0:
            t = (cut - verts[-1][0]) / r1[0]
            if t > 0:
                verts.append((cut, verts[-1][1] + r1[1] * t))
    closed = rays is None
    n = len(verts)
    out = []
    for i in range(n if closed else n - 1):
        p, q = verts[i], verts[(i + 1) % n]
        out.append(p)
        if (p[0] - cut) * (q[0] - cut) < 0:
            t = (cut - p[0]) / (q[0] - p[0])
            out.append((cut, p[1] + (q[1] - p[1]) * t))
    if not closed:
        out.append(verts[-1])
    return out, rays


def _shear_at_cut(point, u, cut):
    x, y = point
    if x >= cut:
        return (x, y + u * (x - cut))
    return (x, y)


def group_action(polygon: WeightedPolygon, eps_prime: int, k: int) -> WeightedPolygon:
    """Act by the element (eps_prime, k): global shear T^k, then the cut shear.

    The cut shear exponent is u = epsilon (1 - eps_prime) / 2 (zero for
    eps_prime = +1) and the new sign is eps_prime * epsilon.  Raises
    ``AdmissibilityError`` when the result is not convex.
    """
    if eps_prime not in (-1, 1):
        raise SpinOscError(f"sign must be +1 or -1, got {eps_prime!r}")
    k = int(k)
    verts = [_shear_global(v, k) for v in polygon.vertices]
    rays = polygon.rays
    if rays is not None:
        rays = tuple((d[0], k * d[0] + d[1]) for d in rays)

    u = polygon.epsilon * (1 - eps_prime) // 2
    if u != 0:
        verts, rays = _split_chain_at_cut(verts, rays, polygon.cut)
        verts = [_shear_at_cut(v, u, polygon.cut) for v in verts]
        if rays is not None:
            new_rays = []
            for anchor, d in ((verts[0], rays[0]), (verts[-1], rays[1])):
                on_right = anchor[0] > polygon.cut or (anchor[0] == polygon.cut and d[0] >= 0)
                new_rays.append((d[0], d[1] + u * d[0]) if on_right else d)
            rays = tuple(new_rays)

    verts, rays = _canonicalize(tuple(verts), rays)
    return WeightedPolygon(verts, rays, polygon.cut, eps_prime * polygon.epsilon)


@dataclass(frozen=True)
class DevelopedLattice:
    """Joint spectrum unwound onto the lattice: per-column developed heights."""

    columns: tuple  # (lambda, ndarray of developed nu values)
    shear_left: int
    shear_right: int

    def counts(self):
        return [len(nus) for _, nus in self.columns]

    def points(self):
        for lam, nus in self.columns:
            for nu in nus:
                yield lam, nu

    def write_csv(self, stream):
        stream.write("lambda,nu_developed\n")
        for lam, nu in self.points():
            stream.write(f"{lam:.17g},{nu:.17g}\n")


def develop_spectrum(js: JointSpectrum, cut_lambda: float, epsilon: int) -> DevelopedLattice:
    """Re-index the joint spectrum into a regular lattice across the cut.

    Column bottoms left of the cut anchor at height zero; columns right of
    the cut are shifted by an integer shear k * (column offset), with k picked
    from -3..3 by least-squares straightness of the top boundary for
    epsilon = -1 (bottom boundary for +1).  Per-column point counts are
    preserved exactly.
    """
    if epsilon not in (-1, 1):
        raise SpinOscError(f"sign must be +1 or -1, got {epsilon!r}")
    cols = js.columns
    if len(cols) < 2:
        raise SpinOscError("need at least two spectral columns to develop")
    lams = np.array([c.lam for c in cols])
    counts = np.array([len(c.nus) for c in cols])
    step = float(np.median(np.diff(lams)))
    offsets = np.rint((lams - cut_lambda) / step).astype(int)
    right = np.maximum(offsets, 0)

    def straightness(k):
        bases = k * right
        boundary = bases + (counts - 1 if epsilon == -1 else 0)
        y = step * boundary
        coeffs = np.polyfit(lams, y, 1)
        resid = y - np.polyval(coeffs, lams)
        return float(resid @ resid)

    candidates = sorted(range(-3, 4), key=lambda k: (straightness(k), abs(k), k))
    k_best = candidates[0]

    bases = k_best * right
    developed = tuple(
        (c.lam, step * (bases[i] + np.arange(len(c.nus)))) for i, c in enumerate(cols)
    )
    return DevelopedLattice(developed, 0, k_best)


def height_estimate(js: JointSpectrum, params: QuantumParams) -> float:
    """Height invariant estimate from the column-dimension plateau.

    The column dimension grows by one per column until the cut abscissa and
    is constant after it; half the column height (dim - 1) * hbar at the
    plateau start is the estimate, equal to n/(n+1) and approaching the
    classical height 1.
    """
    cols = js.columns
    dims = [len(c.nus) for c in cols]
    plateau = None
    for i in range(1, len(dims)):
        if dims[i] == dims[i - 1]:
            plateau = i - 1
            break
        if dims[i] < dims[i - 1]:
            raise SpinOscError("column dimensions decreased; malformed spectrum")
    if plateau is None:
        raise SpinOscError("no dimension plateau inside the lambda range")
    column_height = (dims[plateau] - 1) * params.hbar_exact
    return float(column_height / 2)


def convex_hull(points):
    """Convex hull (counterclockwise, Andrew's monotone chain) of 2D points."""
    pts = sorted(set((float(x), float(y)) for x, y in points))
    if len(pts) <= 2:
        return pts

    def half(seq):
        chain = []
        for p in seq:
            while len(chain) > 1 and _cross(_sub(chain[-1], chain[-2]), _sub(p, chain[-2])) <= 0:
                chain.pop()
            chain.append(p)
        return chain

    lower = half(pts)
    upper = half(pts[::-1])
    return lower[:-1] + upper[:-1]


def clip_to_max_abscissa(polygon: WeightedPolygon, j_max) -> list:
    """Bounded vertex list of an unbounded polygon cut off at abscissa j_max."""
    if polygon.rays is None:
        return [(float(x), float(y)) for x, y in polygon.vertices]
    j_max = Fraction(j_max)
    r0, r1 = polygon.rays
    if r0[0] <= 0 or r1[0] <= 0:
        raise SpinOscError("clipping expects rightward-unbounded polygons")
    first, last = polygon.vertices[0], polygon.vertices[-1]
    start = (j_max, first[1] + r0[1] * (j_max - first[0]) / r0[0])
    end = (j_max, last[1] + r1[1] * (j_max - last[0]) / r1[0])
    chain = [start, *polygon.vertices, end]
    return [(float(x), float(y)) for x, y in chain]


def hull_corners(points, rel_tol: float = 1e-8) -> list:
    """Convex-hull vertices with float-collinear chain points merged away.

    A hull vertex is kept only if its perpendicular deviation from the chord
    of its neighbors exceeds ``rel_tol`` times the hull diameter.
    """
    hull = convex_hull(points)
    if len(hull) <= 3:
        return hull
    xs = [p[0] for p in hull]
    ys = [p[1] for p in hull]
    scale = max(max(xs) - min(xs), max(ys) - min(ys), 1e-300)
    corners = list(hull)
    changed = True
    while changed and len(corners) > 3:
        changed = False
        for i in range(len(corners)):
            prev_pt = corners[i - 1]
            nxt_pt = corners[(i + 1) % len(corners)]
            chord = _sub(nxt_pt, prev_pt)
            offset = _sub(corners[i], prev_pt)
            deviation = abs(_cross(chord, offset)) / math.hypot(*chord)
            if deviation < rel_tol * scale:
                del corners[i]
                changed = True
                break
    return corners


def vertex_hausdorff(points_a, points_b) -> float:
    """Symmetric Hausdorff distance between two finite vertex sets."""
    a = np.array([(float(x), float(y)) for x, y in points_a])
    b = np.array([(float(x), float(y)) for x, y in points_b])
    d = np.linalg.norm(a[:, None, :] - b[None, :, :], axis=2)
    return max(float(d.min(axis=1).max()), float(d.min(axis=0).max()))
