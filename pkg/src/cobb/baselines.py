"""Reference OBB codecs behind one interface.

Four classic parameterizations (acute-angle, long-edge, circular-smooth-label
angle classification, gliding-vertex) plus the continuous nine-parameter
codec, each exposing ``encode`` to a flat vector and ``decode`` back to an
:class:`~cobb.geometry.OrientedBox`.  The continuity audit and the CLI drive
codecs exclusively through this interface.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from cobb import codec as cobb_codec
from cobb import targets
from cobb.errors import InvalidArgumentError
from cobb.geometry import OrientedBox, min_area_rect, outer_hbb, vertices_of
from cobb.targets import LossWeights, Proposal, TargetVector, cobb_loss, smooth_l1

_QUARTER_PI = 0.25 * math.pi
_HALF_PI = 0.5 * math.pi


@dataclass(frozen=True)
class CodecDescriptor:
    name: str
    dim: int
    decodes_exactly: bool


class BoxCodec:
    """Interface shared by all codecs."""

    name: str = ""
    dim: int = 0
    component_names: tuple[str, ...] = ()
    decodes_exactly: bool = True

    @property
    def descriptor(self) -> CodecDescriptor:
        return CodecDescriptor(self.name, self.dim, self.decodes_exactly)

    def encode(self, box: OrientedBox) -> np.ndarray:
        raise NotImplementedError

    def decode(self, vec) -> OrientedBox:
        raise NotImplementedError

    def loss(self, a, b) -> float:
        """Default loss: elementwise smooth-L1 summed over components."""
        return float(sum(smooth_l1(x - y) for x, y in zip(a, b)))

    def curve_components(self, box: OrientedBox) -> np.ndarray:
        """Components plotted by the sweep CSVs (defaults to the encoding)."""
        return self.encode(box)

    curve_component_names: tuple[str, ...] | None = None

    def parameter_groups(self) -> dict[str, list[int]]:
        """Component groups for the estimation-difficulty (NAE) summary."""
        return {}


class CobbCodec(BoxCodec):
    """Continuous codec in regression-target form against a fixed proposal.

    The encoding is the proposal-relative target (center offsets, log
    extents, ratio target, powered scores) against the unit horizontal
    proposal, so the audit exercises the same path a detector head would.
    Curve sweeps report the raw representation (outer HBB, sliding ratio,
    scores) instead.
    """

    dim = 9
    component_names = ("tx", "ty", "tw", "th", "rt", "s0", "s1", "s2", "s3")
    curve_component_names = ("xc", "yc", "w", "h", "rs", "s0", "s1", "s2", "s3")
    decodes_exactly = True

    def __init__(self, variant: str = "sig", lam: float | None = None):
        if variant not in ("sig", "ln"):
            raise InvalidArgumentError(f"unknown variant {variant!r}")
        self.variant = variant
        self.lam = targets.DEFAULT_LAMBDA[variant] if lam is None else lam
        self.name = "cobb" if variant == "sig" else "cobb-ln"
        self.proposal = Proposal.horizontal(0.0, 0.0, 1.0, 1.0)

    def encode(self, box: OrientedBox) -> np.ndarray:
        t = targets.encode_target(box, self.proposal, self.variant, self.lam)
        return np.array(t.as_tuple(), dtype=float)

    def decode(self, vec) -> OrientedBox:
        t = TargetVector(
            float(vec[0]), float(vec[1]), float(vec[2]), float(vec[3]), float(vec[4]),
            (float(vec[5]), float(vec[6]), float(vec[7]), float(vec[8])),
            self.variant, self.lam,
        )
        return targets.decode_target(t, self.proposal)

    def loss(self, a, b) -> float:
        ta = TargetVector(a[0], a[1], a[2], a[3], a[4], tuple(a[5:9]), self.variant, self.lam)
        tb = TargetVector(b[0], b[1], b[2], b[3], b[4], tuple(b[5:9]), self.variant, self.lam)
        return cobb_loss(ta, tb, LossWeights())

    def curve_components(self, box: OrientedBox) -> np.ndarray:
        return np.array(cobb_codec.encode(box).as_tuple(), dtype=float)

    def parameter_groups(self) -> dict[str, list[int]]:
        return {"xy": [0, 1], "wh": [2, 3], "r": [4], "scores": [5, 6, 7, 8]}


class AcuteAngleCodec(BoxCodec):
    """(cx, cy, w, h, theta) with theta wrapped into [-pi/4, pi/4)."""

    name = "acute"
    dim = 5
    component_names = ("cx", "cy", "w", "h", "theta")
    decodes_exactly = True

    def encode(self, box: OrientedBox) -> np.ndarray:
        w, h, t = box.w_side, box.h_side, box.theta  # t in [0, pi/2)
        if t >= _QUARTER_PI:
            t -= _HALF_PI
            w, h = h, w
        return np.array([box.cx, box.cy, w, h, t], dtype=float)

    def decode(self, vec) -> OrientedBox:
        return OrientedBox(float(vec[0]), float(vec[1]), float(vec[2]), float(vec[3]), float(vec[4]))

    def parameter_groups(self) -> dict[str, list[int]]:
        return {"xy": [0, 1], "wh": [2, 3], "angle": [4]}


class LongEdgeCodec(BoxCodec):
    """(cx, cy, long, short, theta of the long side in [-pi/2, pi/2)).

    Exact squares keep the first side's angle (documented tie rule).
    """

    name = "long-edge"
    dim = 5
    component_names = ("cx", "cy", "long", "short", "theta")
    decodes_exactly = True

    @staticmethod
    def _long_edge_angle(box: OrientedBox) -> tuple[float, float, float]:
        if box.w_side >= box.h_side:
            lng, shrt, t = box.w_side, box.h_side, box.theta
        else:
            lng, shrt, t = box.h_side, box.w_side, box.theta + _HALF_PI
        if t >= _HALF_PI:
            t -= math.pi
        return lng, shrt, t

    def encode(self, box: OrientedBox) -> np.ndarray:
        lng, shrt, t = self._long_edge_angle(box)
        return np.array([box.cx, box.cy, lng, shrt, t], dtype=float)

    def decode(self, vec) -> OrientedBox:
        return OrientedBox(float(vec[0]), float(vec[1]), float(vec[2]), float(vec[3]), float(vec[4]))

    def parameter_groups(self) -> dict[str, list[int]]:
        return {"xy": [0, 1], "wh": [2, 3], "angle": [4]}


class CslCodec(BoxCodec):
    """Long-edge box with the angle as a circularly smoothed classification.

    The angle lives in a label vector: a periodic Gaussian window over
    ``bins`` discrete angles covering the long-edge period pi.  Decoding
    takes the argmax bin center, which quantizes the angle to half a bin.
    """

    decodes_exactly = False

    def __init__(self, bins: int = 90, window_sigma: float = 2.0):
        if bins < 4:
            raise InvalidArgumentError(f"need at least 4 bins, got {bins}")
        self.bins = bins
        self.window_sigma = window_sigma  # in bins
        self.name = "csl"
        self.dim = 4 + bins
        self.component_names = ("cx", "cy", "long", "short") + tuple(
            f"bin{i}" for i in range(bins)
        )
        self.bin_width = math.pi / bins
        self.bin_centers = np.array([-_HALF_PI + i * self.bin_width for i in range(bins)])

    def window(self, theta_long: float) -> np.ndarray:
        d = np.abs(self.bin_centers - theta_long)
        d = np.minimum(d, math.pi - d)  # circular distance, period pi
        sigma = self.window_sigma * self.bin_width
        return np.exp(-0.5 * (d / sigma) ** 2)

    def encode(self, box: OrientedBox) -> np.ndarray:
        lng, shrt, t = LongEdgeCodec._long_edge_angle(box)
        return np.concatenate([[box.cx, box.cy, lng, shrt], self.window(t)])

    def decode(self, vec) -> OrientedBox:
        label = np.asarray(vec[4:], dtype=float)
        theta = self.bin_centers[int(np.argmax(label))]
        return OrientedBox(float(vec[0]), float(vec[1]), float(vec[2]), float(vec[3]), float(theta))

    def parameter_groups(self) -> dict[str, list[int]]:
        return {"xy": [0, 1], "wh": [2, 3], "label": list(range(4, self.dim))}


class GlidingVertexCodec(BoxCodec):
    """Outer HBB plus four vertex slide fractions.

    Each box vertex sits on one HBB side; ``alpha_i`` is its fractional
    position along that side measured from the side's counterclockwise-first
    corner (y-down frame): top from the top-right corner leftward, right from
    the bottom-right corner upward, bottom from the bottom-left rightward,
    left from the top-left downward.  An axis-aligned box encodes to zeros.
    Decoding rebuilds the (possibly irregular) quad and refines it with the
    minimum-area enclosing rectangle.
    """

    name = "gv"
    dim = 8
    component_names = ("xc", "yc", "w", "h", "a_top", "a_right", "a_bottom", "a_left")
    decodes_exactly = True

    def encode(self, box: OrientedBox) -> np.ndarray:
        hbb = outer_hbb(box)
        verts = vertices_of(box).vertices
        top = min(verts, key=lambda p: (p.y, -p.x))
        right = max(verts, key=lambda p: (p.x, p.y))
        bottom = max(verts, key=lambda p: (p.y, -p.x))
        left = min(verts, key=lambda p: (p.x, p.y))
        x_lo, x_hi = hbb.xc - 0.5 * hbb.w, hbb.xc + 0.5 * hbb.w
        y_lo, y_hi = hbb.yc - 0.5 * hbb.h, hbb.yc + 0.5 * hbb.h
        a = (
            (x_hi - top.x) / hbb.w,
            (y_hi - right.y) / hbb.h,
            (bottom.x - x_lo) / hbb.w,
            (left.y - y_lo) / hbb.h,
        )
        a = tuple(min(max(v, 0.0), 1.0) for v in a)
        return np.array([hbb.xc, hbb.yc, hbb.w, hbb.h, *a], dtype=float)

    def decode(self, vec) -> OrientedBox:
        xc, yc, w, h, at, ar, ab, al = (float(v) for v in vec[:8])
        if w <= 0.0 or h <= 0.0:
            raise InvalidArgumentError("decoded HBB extents must be positive")
        x_lo, x_hi = xc - 0.5 * w, xc + 0.5 * w
        y_lo, y_hi = yc - 0.5 * h, yc + 0.5 * h
        pts = [
            (x_hi - at * w, y_lo),
            (x_hi, y_hi - ar * h),
            (x_lo + ab * w, y_hi),
            (x_lo, y_lo + al * h),
        ]
        return min_area_rect(pts)

    def parameter_groups(self) -> dict[str, list[int]]:
        return {"xy": [0, 1], "wh": [2, 3], "alpha": [4, 5, 6, 7]}


def available_codecs() -> tuple[str, ...]:
    return ("cobb", "cobb-ln", "acute", "long-edge", "csl", "gv")


def get_codec(name: str, **kwargs) -> BoxCodec:
    """Instantiate a codec by registry name."""
    if name == "cobb":
        return CobbCodec("sig", **kwargs)
    if name == "cobb-ln":
        return CobbCodec("ln", **kwargs)
    if name == "acute":
        return AcuteAngleCodec()
    if name == "long-edge":
        return LongEdgeCodec()
    if name == "csl":
        return CslCodec(**kwargs)
    if name == "gv":
        return GlidingVertexCodec()
    raise InvalidArgumentError(f"unknown codec {name!r}; available: {', '.join(available_codecs())}")
