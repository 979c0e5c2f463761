"""Small 2-D convex geometry toolkit for rate regions.

Every rate region in this package is a convex polygon in the non-negative
quadrant, possibly degenerate (a segment, a point, or empty).  Regions are
built by intersecting half-planes ``a1*r1 + a2*r2 <= b`` and stored as a
counterclockwise vertex list starting from (0, 0) whenever (0, 0) is a
vertex.  Membership tests use an absolute tolerance of 1e-9.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

TOL = 1e-9


@dataclass(frozen=True)
class RatePair:
    r1: float
    r2: float

    def __iter__(self):
        yield self.r1
        yield self.r2


@dataclass
class RateRegion:
    """Convex polygon of achievable (R1, R2) pairs.

    ``vertices`` is counterclockwise; degenerate regions keep 0, 1 or 2
    vertices.  All coordinates are in bits per channel use.
    """

    vertices: list[tuple[float, float]] = field(default_factory=list)

    @property
    def is_empty(self) -> bool:
        return len(self.vertices) == 0

    @property
    def is_point(self) -> bool:
        return len(self.vertices) == 1

    @property
    def is_segment(self) -> bool:
        return len(self.vertices) == 2

    def contains(self, pair, tol: float = TOL) -> bool:
        return contains(self, pair, tol)

    def max_r1(self) -> float:
        return max((v[0] for v in self.vertices), default=0.0)

    def max_r2(self) -> float:
        return max((v[1] for v in self.vertices), default=0.0)


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


COLLINEAR_EPS = 1e-14


def hull(points, tol: float = COLLINEAR_EPS) -> list[tuple[float, float]]:
    """Convex hull (monotone chain), robust to degenerate input.

    Returns a CCW vertex list.  The collinearity epsilon is tiny on
    purpose: dropping a vertex shaves off up to cross/edge-length of
    area, and the containment checks downstream run at 1e-9, so only
    vertices that are collinear to within float noise may go.  Micro
    scale sliver regions keep their corners this way.  An all-collinear
    input yields the two extreme points.
    """
    pts = sorted(set((float(x), float(y)) for x, y in points))
    if len(pts) <= 2:
        return pts
    lo = []
    for p in pts:
        while len(lo) >= 2 and _cross(lo[-2], lo[-1], p) <= tol:
            lo.pop()
        lo.append(p)
    hi = []
    for p in reversed(pts):
        while len(hi) >= 2 and _cross(hi[-2], hi[-1], p) <= tol:
            hi.pop()
        hi.append(p)
    out = lo[:-1] + hi[:-1]
    if len(out) < 3:
        # collinear cloud: keep the two extremes
        return [pts[0], pts[-1]]
    return out


def _dedupe(points, tol):
    out = []
    for p in points:
        if not any(abs(p[0] - q[0]) <= tol and abs(p[1] - q[1]) <= tol for q in out):
            out.append(p)
    return out


def _start_at_origin(verts, tol):
    for i, v in enumerate(verts):
        if abs(v[0]) <= tol and abs(v[1]) <= tol:
            return verts[i:] + verts[:i]
    # otherwise start at lexicographic minimum for a canonical order
    i = min(range(len(verts)), key=lambda j: verts[j])
    return verts[i:] + verts[:i]


def intersect_halfplanes(constraints, tol: float = TOL) -> RateRegion:
    """Intersect half-planes ``(a1, a2, b)`` meaning a1*x + a2*y <= b.

    The system must be bounded (every caller adds the axis constraints
    x, y >= 0 and finite caps).  Vertices are the feasible pairwise line
    intersections, hulled and ordered CCW starting from the origin.
    """
    cons = [(float(a1), float(a2), float(b)) for a1, a2, b in constraints]

    def feasible(p):
        return all(a1 * p[0] + a2 * p[1] <= b + tol * max(1.0, abs(b))
                   for a1, a2, b in cons)

    cand = []
    n = len(cons)
    for i in range(n):
        a1, a2, b1 = cons[i]
        for j in range(i + 1, n):
            c1, c2, b2 = cons[j]
            det = a1 * c2 - a2 * c1
            if abs(det) <= 1e-12:
                continue
            x = (b1 * c2 - b2 * a2) / det
            y = (a1 * b2 - c1 * b1) / det
            if feasible((x, y)):
                cand.append((x, y))
    cand = _dedupe(cand, 1e-9)
    if not cand:
        return RateRegion([])
    verts = hull(cand)
    verts = [(_snap(x), _snap(y)) for x, y in verts]
    verts = _dedupe(verts, tol)
    if len(verts) > 2:
        verts = _start_at_origin(verts, tol)
    return RateRegion(verts)


def _snap(x, tol=1e-12):
    r = round(x)
    return float(r) if abs(x - r) <= tol else x


def _point_seg_dist(p, a, b):
    ax, ay = a
    bx, by = b
    dx, dy = bx - ax, by - ay
    L2 = dx * dx + dy * dy
    if L2 <= 1e-24:
        return math.hypot(p[0] - ax, p[1] - ay)
    t = max(0.0, min(1.0, ((p[0] - ax) * dx + (p[1] - ay) * dy) / L2))
    return math.hypot(p[0] - (ax + t * dx), p[1] - (ay + t * dy))


def contains(region: RateRegion, pair, tol: float = TOL) -> bool:
    """Closed-region membership with absolute tolerance."""
    p = tuple(pair)
    verts = region.vertices
    if not verts:
        return False
    if len(verts) == 1:
        return math.hypot(p[0] - verts[0][0], p[1] - verts[0][1]) <= tol
    if len(verts) == 2:
        return _point_seg_dist(p, verts[0], verts[1]) <= tol
    n = len(verts)
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        if _cross(a, b, p) < -tol * max(1.0, math.hypot(b[0] - a[0], b[1] - a[1])):
            return False
    return True


def subset(inner: RateRegion, outer: RateRegion, tol: float = TOL) -> bool:
    """True iff every vertex of ``inner`` lies in ``outer`` (both convex)."""
    if inner.is_empty:
        return True
    return all(contains(outer, v, tol) for v in inner.vertices)


def point_region_distance(p, region: RateRegion) -> float:
    verts = region.vertices
    if not verts:
        return math.inf
    if len(verts) == 1:
        return math.hypot(p[0] - verts[0][0], p[1] - verts[0][1])
    if len(verts) == 2:
        return _point_seg_dist(p, verts[0], verts[1])
    if contains(region, p, 0.0):
        return 0.0
    n = len(verts)
    return min(_point_seg_dist(p, verts[i], verts[(i + 1) % n]) for i in range(n))


def hausdorff(a: RateRegion, b: RateRegion) -> float:
    """Hausdorff distance between two convex regions.

    For convex sets the supremum is attained at a vertex, so checking
    vertices of each region against the other is exact.
    """
    if a.is_empty and b.is_empty:
        return 0.0
    if a.is_empty or b.is_empty:
        return math.inf
    d1 = max(point_region_distance(v, b) for v in a.vertices)
    d2 = max(point_region_distance(v, a) for v in b.vertices)
    return max(d1, d2)


def regions_equal(a: RateRegion, b: RateRegion, tol: float = TOL) -> bool:
    return subset(a, b, tol) and subset(b, a, tol)


def hull_region(points) -> RateRegion:
    """RateRegion from an arbitrary point cloud."""
    pts = list(points)
    if not pts:
        return RateRegion([])
    verts = hull(pts)
    if len(verts) > 2:
        verts = _start_at_origin(verts, TOL)
    return RateRegion(verts)
