"""Exact rectangle / convex-quad geometry.

Coordinate frame is the image convention (y grows downward) and positive
angles rotate clockwise on screen.  A vertex of a box with angle ``theta`` is
``center + (dx*cos t + dy*sin t, -dx*sin t + dy*cos t)`` for the corner offset
``(dx, dy)``.

All values are immutable; every function here is pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from cobb._kern import quad_area, quad_intersection_area
from cobb.errors import DegenerateGeometryError, InvalidArgumentError, UndefinedIoUError

# Absolute tolerance for geometric predicates on unit-scale inputs; callers
# scale it by a bounding diagonal for larger inputs.
GEOM_EPS = 1e-9

_HALF_PI = 0.5 * math.pi


def _require_finite(name: str, *values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise InvalidArgumentError(f"{name} must be finite, got {v!r}")


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def __post_init__(self):
        _require_finite("coordinate", self.x, self.y)


@dataclass(frozen=True)
class HorizontalBox:
    """Axis-aligned box given by center and extents."""

    xc: float
    yc: float
    w: float
    h: float

    def __post_init__(self):
        _require_finite("HorizontalBox field", self.xc, self.yc, self.w, self.h)
        if self.w < 0 or self.h < 0:
            raise InvalidArgumentError(f"negative extent: w={self.w}, h={self.h}")


@dataclass(frozen=True)
class OrientedBox:
    """Rotated rectangle: center, two side lengths, clockwise angle.

    Construction canonicalizes the angle into [0, pi/2): full-turn symmetry
    removes multiples of pi, and a quarter-turn is absorbed by relabeling the
    two sides.  Side labels are never sorted by length.
    """

    cx: float
    cy: float
    w_side: float
    h_side: float
    theta: float

    def __post_init__(self):
        _require_finite("OrientedBox field", self.cx, self.cy, self.w_side, self.h_side, self.theta)
        if self.w_side <= 0 or self.h_side <= 0:
            raise DegenerateGeometryError(
                f"sides must be positive: w_side={self.w_side}, h_side={self.h_side}"
            )
        t = math.fmod(self.theta, math.pi)
        if t < 0:
            t += math.pi
        if t >= math.pi:  # fmod rounding at the boundary
            t -= math.pi
        if t >= _HALF_PI:
            t -= _HALF_PI
            w, h = self.w_side, self.h_side
            object.__setattr__(self, "w_side", h)
            object.__setattr__(self, "h_side", w)
        object.__setattr__(self, "theta", t)

    @property
    def diagonal(self) -> float:
        return math.hypot(self.w_side, self.h_side)

    @property
    def area(self) -> float:
        return self.w_side * self.h_side


def canonicalize(box: OrientedBox) -> OrientedBox:
    """Idempotent canonical form (the constructor already applies it)."""
    return OrientedBox(box.cx, box.cy, box.w_side, box.h_side, box.theta)


@dataclass(frozen=True)
class ConvexQuad:
    """Convex quadrilateral with a deterministic vertex order.

    Vertices run counterclockwise in the y-down frame and start at the
    lexicographically smallest (y, then x) vertex.  Zero-area (collinear)
    quads are representable; genuinely non-convex input is rejected.
    """

    vertices: tuple[Point2, Point2, Point2, Point2]

    @staticmethod
    def from_points(points) -> "ConvexQuad":
        pts = [p if isinstance(p, Point2) else Point2(p[0], p[1]) for p in points]
        if len(pts) != 4:
            raise InvalidArgumentError(f"quad needs 4 vertices, got {len(pts)}")
        _validate_convex(pts)
        return ConvexQuad(tuple(_canonical_order(pts)))

    def flat(self) -> tuple[float, ...]:
        v = self.vertices
        return (v[0].x, v[0].y, v[1].x, v[1].y, v[2].x, v[2].y, v[3].x, v[3].y)

    @property
    def area(self) -> float:
        return quad_area(self.flat())


def _cross(o: Point2, a: Point2, b: Point2) -> float:
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def _validate_convex(pts: list[Point2]) -> None:
    scale = max(abs(p.x) + abs(p.y) for p in pts) or 1.0
    tol = GEOM_EPS * scale * scale
    pos = neg = False
    for i in range(4):
        c = _cross(pts[i], pts[(i + 1) % 4], pts[(i + 2) % 4])
        if c > tol:
            pos = True
        elif c < -tol:
            neg = True
    if pos and neg:
        raise InvalidArgumentError("vertices do not form a convex quadrilateral")


def _canonical_order(pts: list[Point2]) -> list[Point2]:
    # CCW in y-down frame <=> negative shoelace sum in raw coordinates.
    s = 0.0
    for i in range(4):
        a, b = pts[i], pts[(i + 1) % 4]
        s += a.x * b.y - b.x * a.y
    if s > 0:
        pts = pts[::-1]
    start = min(range(4), key=lambda i: (pts[i].y, pts[i].x))
    return pts[start:] + pts[:start]


def vertices_of(box: OrientedBox) -> ConvexQuad:
    """The four corners of the rectangle."""
    c, s = math.cos(box.theta), math.sin(box.theta)
    hw, hh = 0.5 * box.w_side, 0.5 * box.h_side
    pts = []
    for dx, dy in ((-hw, -hh), (hw, -hh), (hw, hh), (-hw, hh)):
        pts.append(Point2(box.cx + dx * c + dy * s, box.cy - dx * s + dy * c))
    return ConvexQuad.from_points(pts)


def outer_hbb(box: OrientedBox) -> HorizontalBox:
    """Smallest axis-aligned box containing the rectangle."""
    c, s = abs(math.cos(box.theta)), abs(math.sin(box.theta))
    w = box.w_side * c + box.h_side * s
    h = box.w_side * s + box.h_side * c
    return HorizontalBox(box.cx, box.cy, w, h)


def rotate(box: OrientedBox, dtheta: float) -> OrientedBox:
    """Rotate clockwise by ``dtheta`` about the box center."""
    _require_finite("dtheta", dtheta)
    return OrientedBox(box.cx, box.cy, box.w_side, box.h_side, box.theta + dtheta)


def rotate_about(box: OrientedBox, px: float, py: float, dtheta: float) -> OrientedBox:
    """Rotate clockwise by ``dtheta`` about an arbitrary pivot."""
    _require_finite("pivot/dtheta", px, py, dtheta)
    c, s = math.cos(dtheta), math.sin(dtheta)
    dx, dy = box.cx - px, box.cy - py
    return OrientedBox(
        px + dx * c + dy * s,
        py - dx * s + dy * c,
        box.w_side,
        box.h_side,
        box.theta + dtheta,
    )


def adjust_side(box: OrientedBox, ratio: float) -> tuple[OrientedBox, OrientedBox]:
    """Scale one side by ``ratio``: returns the w-scaled and h-scaled boxes."""
    if not math.isfinite(ratio) or ratio <= 0:
        raise InvalidArgumentError(f"ratio must be positive, got {ratio!r}")
    return (
        OrientedBox(box.cx, box.cy, box.w_side * ratio, box.h_side, box.theta),
        OrientedBox(box.cx, box.cy, box.w_side, box.h_side * ratio, box.theta),
    )


def intersection_area(a: ConvexQuad, b: ConvexQuad) -> float:
    """Area of the convex intersection polygon (half-plane clipping)."""
    return quad_intersection_area(a.flat(), b.flat())


def _as_quad(shape) -> ConvexQuad:
    if isinstance(shape, OrientedBox):
        return vertices_of(shape)
    if isinstance(shape, ConvexQuad):
        return shape
    raise InvalidArgumentError(f"expected OrientedBox or ConvexQuad, got {type(shape).__name__}")


def iou(a, b) -> float:
    """Intersection over union of two boxes/quads via polygon clipping.

    This is the brute-force oracle every closed form in the package is
    validated against.
    """
    qa, qb = _as_quad(a), _as_quad(b)
    area_a, area_b = qa.area, qb.area
    if area_a == 0.0 and area_b == 0.0:
        raise UndefinedIoUError("IoU of two zero-area shapes is undefined")
    inter = quad_intersection_area(qa.flat(), qb.flat())
    union = area_a + area_b - inter
    if union <= 0.0:
        raise UndefinedIoUError("empty union")
    v = inter / union
    return 0.0 if v < 0.0 else (1.0 if v > 1.0 else v)


# ---------------------------------------------------------------------------
# Minimum-area enclosing rectangle (rotating calipers over the convex hull)


def _convex_hull(points: list[Point2]) -> list[Point2]:
    pts = sorted(set((p.x, p.y) for p in points))
    if len(pts) < 3:
        return [Point2(x, y) for x, y in pts]

    def build(seq):
        out = []
        for x, y in seq:
            while len(out) >= 2 and (
                (out[-1][0] - out[-2][0]) * (y - out[-2][1])
                - (out[-1][1] - out[-2][1]) * (x - out[-2][0])
            ) <= 0:
                out.pop()
            out.append((x, y))
        return out

    lower = build(pts)
    upper = build(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    return [Point2(x, y) for x, y in hull]


def min_area_rect(points) -> OrientedBox:
    """Minimum-area oriented rectangle enclosing the points.

    Requires at least 3 non-collinear points; the optimum has one side flush
    with a hull edge, so only hull-edge orientations are scanned.
    """
    pts = [p if isinstance(p, Point2) else Point2(p[0], p[1]) for p in points]
    if len(pts) < 3:
        raise DegenerateGeometryError("min_area_rect needs at least 3 points")
    hull = _convex_hull(pts)
    if len(hull) < 3:
        raise DegenerateGeometryError("points are collinear")

    best = None
    n = len(hull)
    for i in range(n):
        a, b = hull[i], hull[(i + 1) % n]
        ex, ey = b.x - a.x, b.y - a.y
        norm = math.hypot(ex, ey)
        if norm == 0.0:
            continue
        ux, uy = ex / norm, ey / norm
        lo_u = hi_u = lo_v = hi_v = None
        for p in hull:
            u = p.x * ux + p.y * uy
            v = -p.x * uy + p.y * ux
            lo_u = u if lo_u is None or u < lo_u else lo_u
            hi_u = u if hi_u is None or u > hi_u else hi_u
            lo_v = v if lo_v is None or v < lo_v else lo_v
            hi_v = v if hi_v is None or v > hi_v else hi_v
        area = (hi_u - lo_u) * (hi_v - lo_v)
        if best is None or area < best[0]:
            best = (area, ux, uy, lo_u, hi_u, lo_v, hi_v)

    if best is None or best[0] <= 0.0:
        raise DegenerateGeometryError("points are collinear")
    _, ux, uy, lo_u, hi_u, lo_v, hi_v = best
    cu, cv = 0.5 * (lo_u + hi_u), 0.5 * (lo_v + hi_v)
    cx = cu * ux - cv * uy
    cy = cu * uy + cv * ux
    # the u axis (cos t, -sin t) carries w_side; theta is clockwise-positive
    theta = math.atan2(-uy, ux)
    return OrientedBox(cx, cy, hi_u - lo_u, hi_v - lo_v, theta)
