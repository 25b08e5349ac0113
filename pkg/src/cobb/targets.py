"""Proposal-relative regression targets and the composite loss.

The HBB part follows the standard two-stage detector bias (center offsets
normalized by proposal extents, log extent ratios).  The sliding ratio enters
either as ``r_sig = 2*rs`` (bounded head) or the log form ``r_ln`` whose sign
tracks the area-ratio branch.  Scores are raised to a configurable power to
sharpen the gap between the true candidate and the rest.  Oriented proposals
reduce to the horizontal rule after de-rotating both shapes about the
proposal center.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from cobb import codec
from cobb.errors import DegenerateGeometryError, InvalidArgumentError
from cobb.geometry import HorizontalBox, OrientedBox, iou, min_area_rect, rotate_about

DEFAULT_LAMBDA = {"sig": 2.0, "ln": 1.0}

_LOG2 = math.log(2.0)


@dataclass(frozen=True)
class Proposal:
    kind: str  # "horizontal" | "oriented"
    xp: float
    yp: float
    wp: float
    hp: float
    theta_p: float = 0.0

    def __post_init__(self):
        if self.kind not in ("horizontal", "oriented"):
            raise InvalidArgumentError(f"unknown proposal kind {self.kind!r}")
        if not (self.wp > 0.0 and self.hp > 0.0):
            raise DegenerateGeometryError("proposal extents must be positive")
        if self.kind == "horizontal" and self.theta_p != 0.0:
            raise InvalidArgumentError("horizontal proposals have theta_p = 0")

    @staticmethod
    def horizontal(xp, yp, wp, hp) -> "Proposal":
        return Proposal("horizontal", xp, yp, wp, hp, 0.0)

    @staticmethod
    def oriented(xp, yp, wp, hp, theta_p) -> "Proposal":
        return Proposal("oriented", xp, yp, wp, hp, theta_p)


@dataclass(frozen=True)
class TargetVector:
    tx: float
    ty: float
    tw: float
    th: float
    rt: float
    st: tuple[float, float, float, float]
    variant: str
    lam: float

    def as_tuple(self) -> tuple[float, ...]:
        return (self.tx, self.ty, self.tw, self.th, self.rt) + self.st


@dataclass(frozen=True)
class LossWeights:
    """Weights for the box, ratio and score terms plus the smooth-L1 knee."""

    w_box: float = 1.0
    w_r: float = 1.0
    w_s: float = 1.0
    smooth_l1_beta: float = 1.0

    def __post_init__(self):
        if min(self.w_box, self.w_r, self.w_s) < 0 or self.smooth_l1_beta <= 0:
            raise InvalidArgumentError("weights must be >= 0 and beta > 0")


def _rt_from_rs(rs: float, ra: float, variant: str) -> float:
    if variant == "sig":
        return 2.0 * rs
    if variant == "ln":
        if ra < 0.5:
            return 1.0 + math.log2(rs) if rs > 0.0 else -math.inf
        return 1.0 + math.log2(1.0 - rs)
    raise InvalidArgumentError(f"unknown variant {variant!r}")


def _rs_from_rt(rt: float, variant: str) -> float:
    """Invert the ratio target; out-of-range predictions are clamped."""
    if variant == "sig":
        rt = min(max(rt, 0.0), 1.0)
        return 0.5 * rt
    if variant == "ln":
        rt = min(rt, 1.0)
        # rt <= 0 comes from the ra < 0.5 branch, rt >= 0 from the other;
        # both agree at the rs = 0.5 merge point.
        if rt <= 0.0:
            return min(2.0 ** (rt - 1.0), 0.5)
        return 1.0 - 2.0 ** (rt - 1.0)
    raise InvalidArgumentError(f"unknown variant {variant!r}")


def _derotated(gt: OrientedBox, proposal: Proposal) -> tuple[OrientedBox, Proposal]:
    if proposal.kind == "horizontal":
        return gt, proposal
    gt2 = rotate_about(gt, proposal.xp, proposal.yp, -proposal.theta_p)
    return gt2, Proposal.horizontal(proposal.xp, proposal.yp, proposal.wp, proposal.hp)


def encode_target(
    gt: OrientedBox,
    proposal: Proposal,
    variant: str = "sig",
    lam: float | None = None,
) -> TargetVector:
    """Regression target of a ground-truth box relative to a proposal."""
    if lam is None:
        lam = DEFAULT_LAMBDA.get(variant)
        if lam is None:
            raise InvalidArgumentError(f"unknown variant {variant!r}")
    gt, proposal = _derotated(gt, proposal)
    vec = codec.encode(gt)
    if vec.w <= 0.0 or vec.h <= 0.0:
        raise DegenerateGeometryError("degenerate ground-truth HBB")
    ra = gt.area / (vec.w * vec.h)
    return TargetVector(
        tx=(vec.xc - proposal.xp) / proposal.wp,
        ty=(vec.yc - proposal.yp) / proposal.hp,
        tw=math.log(vec.w / proposal.wp),
        th=math.log(vec.h / proposal.hp),
        rt=_rt_from_rs(vec.rs, ra, variant),
        st=tuple(s**lam for s in vec.scores),
        variant=variant,
        lam=lam,
    )


def decode_target(t: TargetVector, proposal: Proposal) -> OrientedBox:
    """Invert :func:`encode_target`.

    The candidate class comes solely from the score argmax; the ratio target
    only carries the sliding ratio (its sign picks the inversion branch for
    the log variant).
    """
    for v in (t.tx, t.ty, t.tw, t.th, t.rt, *t.st):
        if not math.isfinite(v):
            raise InvalidArgumentError(f"non-finite target component {v!r}")
    orig = proposal
    if proposal.kind == "oriented":
        proposal = Proposal.horizontal(proposal.xp, proposal.yp, proposal.wp, proposal.hp)
    w = proposal.wp * math.exp(t.tw)
    h = proposal.hp * math.exp(t.th)
    if not (math.isfinite(w) and math.isfinite(h)) or w <= 0.0 or h <= 0.0:
        raise InvalidArgumentError("recovered extents must be positive and finite")
    hbb = HorizontalBox(
        t.tx * proposal.wp + proposal.xp,
        t.ty * proposal.hp + proposal.yp,
        w,
        h,
    )
    rs = _rs_from_rt(t.rt, t.variant)
    cands = codec.four_candidates(hbb, rs)
    quad = cands.quads[codec.select_candidate(cands, t.st)]
    box = min_area_rect(quad.vertices)
    if orig.kind == "oriented":
        box = rotate_about(box, orig.xp, orig.yp, orig.theta_p)
    return box


def smooth_l1(diff: float, beta: float = 1.0) -> float:
    d = abs(diff)
    return 0.5 * d * d / beta if d < beta else d - 0.5 * beta


def cobb_loss(pred: TargetVector, target: TargetVector, weights: LossWeights = LossWeights()) -> float:
    """Weighted smooth-L1 over the box, ratio and score components."""
    if pred.variant != target.variant or pred.lam != target.lam:
        raise InvalidArgumentError("pred/target variant or lambda mismatch")
    beta = weights.smooth_l1_beta
    box_term = (
        smooth_l1(pred.tx - target.tx, beta)
        + smooth_l1(pred.ty - target.ty, beta)
        + smooth_l1(pred.tw - target.tw, beta)
        + smooth_l1(pred.th - target.th, beta)
    )
    r_term = smooth_l1(pred.rt - target.rt, beta)
    s_term = sum(smooth_l1(p - q, beta) for p, q in zip(pred.st, target.st))
    return weights.w_box * box_term + weights.w_r * r_term + weights.w_s * s_term


# ---------------------------------------------------------------------------
# Sensitivity of the decoded box to the scalar ratio parameter


def _decode_ratio_param(fn: str, r: float, hbb: HorizontalBox) -> OrientedBox:
    if fn == "r_ln":
        rs = _rs_from_rt(r, "ln")
        branch_above = r > 0.0
    elif fn == "f_ln_of_ra":
        if r > 1.0:
            raise InvalidArgumentError(f"log area ratio above 1: {r!r}")
        ra = 2.0 ** (r - 1.0)
        rs = codec.rs_from_ra(ra, hbb.w, hbb.h)
        branch_above = ra >= 0.5
    else:
        raise InvalidArgumentError(f"unknown ratio function {fn!r}")
    cands = codec.four_candidates(hbb, rs)
    quad = cands.quads[1 if branch_above else 0]
    return min_area_rect(quad.vertices)


def sensitivity_probe(variant_fn: str, r: float, eps: float, hbb: HorizontalBox) -> float:
    """Decoded-shape sensitivity (1 - IoU(dec(r), dec(r+eps))) / eps."""
    if eps <= 0.0:
        raise InvalidArgumentError("eps must be positive")
    a = _decode_ratio_param(variant_fn, r, hbb)
    b = _decode_ratio_param(variant_fn, r + eps, hbb)
    return (1.0 - iou(a, b)) / eps
