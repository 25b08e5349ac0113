"""Continuous oriented-bounding-box codec, baselines, and continuity audit."""

from cobb._kern import IMPLEMENTATION as KERNEL_IMPLEMENTATION
from cobb.codec import (
    CandidateSet,
    CobbVector,
    classify,
    decode,
    encode,
    four_candidates,
    iou_matrix,
    ra_from_rs,
    rs_from_ra,
    sliding_ratio,
)
from cobb.errors import (
    CobbError,
    DegenerateGeometryError,
    DotaParseError,
    InvalidArgumentError,
    UndefinedIoUError,
    UndefinedNormalizationError,
)
from cobb.geometry import (
    ConvexQuad,
    HorizontalBox,
    OrientedBox,
    Point2,
    adjust_side,
    intersection_area,
    iou,
    min_area_rect,
    outer_hbb,
    rotate,
    rotate_about,
    vertices_of,
)
from cobb.targets import (
    LossWeights,
    Proposal,
    TargetVector,
    cobb_loss,
    decode_target,
    encode_target,
    sensitivity_probe,
)

__version__ = "0.1.0"

__all__ = [
    "KERNEL_IMPLEMENTATION",
    "CandidateSet",
    "CobbVector",
    "CobbError",
    "ConvexQuad",
    "DegenerateGeometryError",
    "DotaParseError",
    "HorizontalBox",
    "InvalidArgumentError",
    "LossWeights",
    "OrientedBox",
    "Point2",
    "Proposal",
    "TargetVector",
    "UndefinedIoUError",
    "UndefinedNormalizationError",
    "adjust_side",
    "classify",
    "cobb_loss",
    "decode",
    "decode_target",
    "encode",
    "encode_target",
    "four_candidates",
    "intersection_area",
    "iou",
    "iou_matrix",
    "min_area_rect",
    "outer_hbb",
    "ra_from_rs",
    "rotate",
    "rotate_about",
    "rs_from_ra",
    "sensitivity_probe",
    "sliding_ratio",
    "vertices_of",
]
