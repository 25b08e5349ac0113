"""The continuous OBB codec.

An oriented box maps to nine numbers: its outer horizontal box (xc, yc, w, h),
the sliding ratio ``rs`` of the second-smallest sorted vertex coordinate along
the longer HBB dimension, and four IoU scores that disambiguate the four
distinct boxes sharing one (xc, yc, w, h, rs).  The pairwise IoUs of those
four candidates have closed forms; every entry is validated against the
polygon-clipping oracle in :mod:`cobb.geometry`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from cobb.errors import DegenerateGeometryError, InvalidArgumentError
from cobb.geometry import (
    ConvexQuad,
    HorizontalBox,
    OrientedBox,
    iou,
    min_area_rect,
    outer_hbb,
    vertices_of,
)

_RS_CLAMP_TOL = 1e-12


@dataclass(frozen=True)
class CobbVector:
    """Nine-parameter encoding: outer HBB, sliding ratio, four IoU scores."""

    xc: float
    yc: float
    w: float
    h: float
    rs: float
    scores: tuple[float, float, float, float]

    def as_tuple(self) -> tuple[float, ...]:
        return (self.xc, self.yc, self.w, self.h, self.rs) + self.scores


@dataclass(frozen=True)
class CandidateSet:
    """The four boxes sharing one outer HBB and sliding ratio.

    Index order follows the construction: 0 and 3 are the pair whose area
    ratio against the HBB is below one half, 1 and 2 the pair above.
    """

    hbb: HorizontalBox
    rs: float
    quads: tuple[ConvexQuad, ConvexQuad, ConvexQuad, ConvexQuad]

    def areas(self) -> tuple[float, float, float, float]:
        return tuple(q.area for q in self.quads)


def _clamp_rs(rs: float, tol: float = _RS_CLAMP_TOL) -> float:
    if not math.isfinite(rs) or rs < -tol or rs > 0.5 + tol:
        raise InvalidArgumentError(f"sliding ratio outside [0, 0.5]: {rs!r}")
    return min(max(rs, 0.0), 0.5)


def sliding_ratio(box: OrientedBox) -> float:
    """Gap between the two smallest sorted vertex coordinates, normalized.

    Uses x-coordinates over w when the outer HBB is taller than wide,
    y-coordinates over h otherwise.
    """
    hbb = outer_hbb(box)
    if hbb.w <= 0.0 or hbb.h <= 0.0:
        raise DegenerateGeometryError("zero-extent outer HBB")
    verts = vertices_of(box).vertices
    if hbb.w < hbb.h:
        c = sorted(v.x for v in verts)
        rs = (c[1] - c[0]) / hbb.w
    else:
        c = sorted(v.y for v in verts)
        rs = (c[1] - c[0]) / hbb.h
    return min(max(rs, 0.0), 0.5)


def slide_offsets(w: float, h: float, rs: float) -> tuple[float, float]:
    """Half-spans (x_s, y_s) of the sliding vertices from the HBB center."""
    rs = _clamp_rs(rs)
    if w >= h:
        ys = 0.5 * (1.0 - 2.0 * rs) * h
        xs = 0.5 * math.sqrt(max(0.0, 1.0 - 4.0 * (h * h) / (w * w) * rs * (1.0 - rs))) * w
    else:
        ys = 0.5 * math.sqrt(max(0.0, 1.0 - 4.0 * (w * w) / (h * h) * rs * (1.0 - rs))) * h
        xs = 0.5 * (1.0 - 2.0 * rs) * w
    return xs, ys


def four_candidates(hbb: HorizontalBox, rs: float) -> CandidateSet:
    """Construct the four boxes sharing ``(hbb, rs)``.

    Each candidate has one vertex per HBB side; the four sign choices of the
    two slide offsets give the four members.
    """
    if hbb.w <= 0.0 or hbb.h <= 0.0:
        raise InvalidArgumentError("HBB extents must be positive")
    rs = _clamp_rs(rs)
    xc, yc, w, h = hbb.xc, hbb.yc, hbb.w, hbb.h
    xs, ys = slide_offsets(w, h, rs)
    top, bot = yc - 0.5 * h, yc + 0.5 * h
    lef, rig = xc - 0.5 * w, xc + 0.5 * w
    quads = (
        ConvexQuad.from_points([(xc - xs, top), (rig, yc + ys), (xc + xs, bot), (lef, yc - ys)]),
        ConvexQuad.from_points([(xc + xs, top), (rig, yc + ys), (xc - xs, bot), (lef, yc - ys)]),
        ConvexQuad.from_points([(xc - xs, top), (rig, yc - ys), (xc + xs, bot), (lef, yc + ys)]),
        ConvexQuad.from_points([(xc + xs, top), (rig, yc - ys), (xc - xs, bot), (lef, yc + ys)]),
    )
    return CandidateSet(hbb, rs, quads)


def classify(box: OrientedBox) -> int:
    """Candidate index reproducing the box: argmax oracle IoU, lowest on ties."""
    cands = four_candidates(outer_hbb(box), sliding_ratio(box))
    best, best_iou = 0, -1.0
    for i, quad in enumerate(cands.quads):
        v = iou(box, quad) if quad.area > 0.0 else 0.0
        if v > best_iou:
            best, best_iou = i, v
    return best


def _closed_forms(w: float, h: float, rs: float) -> tuple[float, float, float, float]:
    """Pairwise candidate IoUs (0-1, 0-2, 0-3, 1-2) assuming w >= h."""
    rsx = 0.5 * (1.0 - math.sqrt(max(0.0, 1.0 - 4.0 * (h * h) / (w * w) * rs * (1.0 - rs))))
    rsy = rs
    l1 = math.hypot(rsx * w, rsy * h)
    l2 = math.hypot((1.0 - rsx) * w, (1.0 - rsy) * h)
    l3 = math.hypot(rsx * w, (1.0 - rsy) * h)
    l4 = math.hypot((1.0 - rsx) * w, rsy * h)

    i01 = (1.0 - ((1.0 - 2.0 * rsx) * rsx * w * w) / ((1.0 - rsy) * h * h)) * l1 * l2
    iou01 = i01 / (l1 * l2 + l3 * l4 - i01)

    i02 = (1.0 - ((1.0 - 2.0 * rsy) * rsy * h * h) / ((1.0 - rsx) * w * w)) * l1 * l2
    iou02 = i02 / (l1 * l2 + l3 * l4 - i02)

    i03 = (rsx + rsy - 2.0 * rsx * rsy) ** 2 / ((1.0 - rsx) * (1.0 - rsy)) * w * h / 2.0
    iou03 = i03 / (2.0 * l1 * l2 - i03) if i03 != 0.0 else 0.0

    h1 = 0.5 * w - (0.5 - rsy) / (1.0 - rsy) * rsx * w
    h2 = 0.5 * h - (0.5 - rsx) / (1.0 - rsx) * rsy * h
    tana = ((0.5 - rsx) / (1.0 - rsx) * l4) / (l3 / (2.0 * (1.0 - rsy)))
    tanb = ((0.5 - rsy) / (1.0 - rsy) * l3) / (l4 / (2.0 * (1.0 - rsx)))
    if tana * tanb != 0.0:
        i12 = 2.0 * tana * tanb / (tana + tanb) * (h1 * h1 + h2 * h2) + 2.0 * h1 * h2
        iou12 = i12 / (2.0 * l3 * l4 - i12)
    else:
        iou12 = 2.0 * h1 * h2 / (2.0 * l3 * l4 - 2.0 * h1 * h2)
    return iou01, iou02, iou03, iou12


def iou_matrix(w: float, h: float, rs: float):
    """4x4 matrix of pairwise candidate IoUs.

    Valid for positive extents and rs in [0, 0.5], continuous on that whole
    range (at rs = 0 the below-half candidates degenerate to the HBB
    diagonals and their rows go to [1, 0, 0, 0] / [0, 0, 0, 1]).  For a
    wider-than-tall HBB the closed forms apply directly; otherwise they are
    evaluated on the transposed HBB, which swaps the roles of the 0-1 and 0-2
    pairs (candidates 1 and 2 trade places under the x/y reflection).
    """
    if not (math.isfinite(w) and math.isfinite(h)) or w <= 0.0 or h <= 0.0:
        raise InvalidArgumentError("HBB extents must be positive")
    rs = _clamp_rs(rs)
    if w >= h:
        m01, m02, m03, m12 = _closed_forms(w, h, rs)
    else:
        m02, m01, m03, m12 = _closed_forms(h, w, rs)
    clamp = lambda v: 0.0 if v < 0.0 else (1.0 if v > 1.0 else v)
    m01, m02, m03, m12 = clamp(m01), clamp(m02), clamp(m03), clamp(m12)
    return [
        [1.0, m01, m02, m03],
        [m01, 1.0, m12, m02],
        [m02, m12, 1.0, m01],
        [m03, m02, m01, 1.0],
    ]


def encode(box: OrientedBox) -> CobbVector:
    """Encode a box: outer HBB, sliding ratio, and its candidate's score row."""
    hbb = outer_hbb(box)
    rs = sliding_ratio(box)
    row = iou_matrix(hbb.w, hbb.h, rs)[classify(box)]
    return CobbVector(hbb.xc, hbb.yc, hbb.w, hbb.h, rs, tuple(row))


def select_candidate(cands: CandidateSet, scores) -> int:
    """Argmax score; exact ties prefer larger candidate area, then lower index.

    Encoded rows tie only across coincident candidates, where any choice is
    equivalent.  The area preference guards externally supplied all-ones
    score vectors at rs = 0, where two candidates degenerate to HBB
    diagonals and plain lowest-index would pick a zero-area quad.
    """
    order = sorted(range(4), key=lambda i: (-scores[i], -cands.quads[i].area, i))
    return order[0]


def decode(v: CobbVector) -> OrientedBox:
    """Decode nine parameters to the highest-scoring candidate box."""
    for s in v.scores:
        if not math.isfinite(s):
            raise InvalidArgumentError(f"non-finite score {s!r}")
    if not (v.w > 0.0 and v.h > 0.0):
        raise InvalidArgumentError("decoded HBB extents must be positive")
    cands = four_candidates(HorizontalBox(v.xc, v.yc, v.w, v.h), _clamp_rs(v.rs, tol=math.inf))
    quad = cands.quads[select_candidate(cands, v.scores)]
    return min_area_rect(quad.vertices)


# ---------------------------------------------------------------------------
# Relation between the sliding ratio and the area ratio


def _aspect(w: float, h: float) -> float:
    if not (math.isfinite(w) and math.isfinite(h)) or w <= 0.0 or h <= 0.0:
        raise InvalidArgumentError("HBB extents must be positive")
    return min(w / h, h / w)


def rs_from_ra(ra: float, w: float, h: float) -> float:
    """Sliding ratio of the boxes whose area is ``ra`` times their HBB's.

    ``ra`` must lie in (0, 1]; the infimum 0 is the thin diagonal limit and is
    not attainable by a valid box.
    """
    if not math.isfinite(ra) or ra <= 0.0 or ra > 1.0 + _RS_CLAMP_TOL:
        raise InvalidArgumentError(f"area ratio outside (0, 1]: {ra!r}")
    ra = min(ra, 1.0)
    r2 = _aspect(w, h) ** 2
    disc = (r2 + 1.0) ** 2 - 16.0 * r2 * ra * (1.0 - ra)
    rhs = (r2 + 1.0 - math.sqrt(max(0.0, disc))) / (2.0 * r2)
    rhs = min(max(rhs, 0.0), 1.0)
    return 0.5 * (1.0 - math.sqrt(1.0 - rhs))


def ra_from_rs(rs: float, w: float, h: float, branch: str) -> float:
    """Invert :func:`rs_from_ra`; ``branch`` picks ra <= 0.5 or ra >= 0.5."""
    if branch not in ("below", "above"):
        raise InvalidArgumentError(f"branch must be 'below' or 'above', got {branch!r}")
    rs = _clamp_rs(rs)
    r2 = _aspect(w, h) ** 2
    u = 4.0 * rs * (1.0 - rs)
    v = u * ((r2 + 1.0) - r2 * u) / 4.0
    root = math.sqrt(max(0.0, 1.0 - 4.0 * v))
    return 0.5 * (1.0 - root) if branch == "below" else 0.5 * (1.0 + root)
