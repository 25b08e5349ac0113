"""Baseline codecs: roundtrips and the boundary behaviors that define them."""

import math

import numpy as np
import pytest

from cobb.baselines import (
    AcuteAngleCodec,
    CobbCodec,
    CslCodec,
    GlidingVertexCodec,
    LongEdgeCodec,
    available_codecs,
    get_codec,
)
from cobb.errors import InvalidArgumentError
from cobb.geometry import OrientedBox, iou
from test_codec import seeded_boxes

QUARTER = math.pi / 4


class TestRegistry:
    def test_names(self):
        assert set(available_codecs()) == {"cobb", "cobb-ln", "acute", "long-edge", "csl", "gv"}
        for name in available_codecs():
            c = get_codec(name)
            assert c.name == name and c.dim == len(c.component_names)

    def test_descriptors(self):
        assert get_codec("cobb").descriptor.decodes_exactly
        assert not get_codec("csl").descriptor.decodes_exactly
        assert get_codec("csl").descriptor.dim == 94

    def test_unknown(self):
        with pytest.raises(InvalidArgumentError):
            get_codec("nope")


class TestAcute:
    def test_horizontal(self):
        enc = AcuteAngleCodec().encode(OrientedBox(0, 0, 4, 2, 0))
        assert list(enc) == [0, 0, 4, 2, 0]

    def test_boundary_jump(self):
        c = AcuteAngleCodec()
        lo = c.encode(OrientedBox(0, 0, 4, 2, QUARTER - 1e-6))
        hi = c.encode(OrientedBox(0, 0, 4, 2, QUARTER + 1e-6))
        assert abs(lo[4] - hi[4]) == pytest.approx(math.pi / 2, abs=1e-5)
        assert lo[2] == 4 and hi[2] == 2  # sides swapped across the wrap

    def test_roundtrip(self):
        c = AcuteAngleCodec()
        for box in seeded_boxes(200, seed=41):
            assert iou(box, c.decode(c.encode(box))) >= 1 - 1e-9


class TestLongEdge:
    def test_plain(self):
        enc = LongEdgeCodec().encode(OrientedBox(0, 0, 4, 2, math.pi / 6))
        assert list(enc) == pytest.approx([0, 0, 4, 2, math.pi / 6])

    def test_aspect_flip_near_square(self):
        c = LongEdgeCodec()
        eps = 1e-9
        wide = c.encode(OrientedBox(0, 0, 1 + eps, 1 - eps, math.pi / 6))
        tall = c.encode(OrientedBox(0, 0, 1 - eps, 1 + eps, math.pi / 6))
        assert wide[4] == pytest.approx(math.pi / 6)
        assert tall[4] == pytest.approx(math.pi / 6 - math.pi / 2)

    def test_square_tie_keeps_first_side(self):
        enc = LongEdgeCodec().encode(OrientedBox(0, 0, 2, 2, 0.3))
        assert enc[4] == pytest.approx(0.3)

    def test_roundtrip_non_square(self):
        c = LongEdgeCodec()
        for box in seeded_boxes(200, seed=42):
            if abs(box.w_side - box.h_side) < 1e-6:
                continue
            assert iou(box, c.decode(c.encode(box))) >= 1 - 1e-9


class TestCsl:
    def test_bin_center_roundtrips_exactly(self):
        c = CslCodec(bins=90)
        theta = float(c.bin_centers[50])
        box = OrientedBox(0, 0, 4, 2, theta)
        assert iou(box, c.decode(c.encode(box))) >= 1 - 1e-9

    def test_bin_boundary_quantizes(self):
        c = CslCodec(bins=90)
        theta = float(c.bin_centers[50]) + 0.5 * c.bin_width
        box = OrientedBox(0, 0, 4, 2, theta)
        dec = c.decode(c.encode(box))
        # off by half a bin in angle, so the roundtrip is visibly lossy
        assert iou(box, dec) < 1 - 1e-3
        err = abs(dec.theta - box.theta)
        assert min(err, math.pi / 2 - err) <= 0.5 * c.bin_width + 1e-12

    def test_window_against_hand_evaluation(self):
        c = CslCodec(bins=90, window_sigma=2.0)
        sigma = 2.0 * math.pi / 90
        for theta in (0.1, 0.7, 1.2):
            box = OrientedBox(0, 0, 3, 1, theta)
            label = c.encode(box)[4:]
            assert label.max() == pytest.approx(math.exp(-0.5 * (min(
                abs(c.bin_centers[int(np.argmax(label))] - theta),
                math.pi - abs(c.bin_centers[int(np.argmax(label))] - theta)) / sigma) ** 2))
            for k in (10, 40, 77):
                d = abs(float(c.bin_centers[k]) - theta)
                d = min(d, math.pi - d)
                assert label[k] == pytest.approx(math.exp(-0.5 * (d / sigma) ** 2), abs=1e-12)
            assert int(np.argmax(label)) == int(np.argmin(np.abs(c.bin_centers - theta)))

    def test_too_few_bins(self):
        with pytest.raises(InvalidArgumentError):
            CslCodec(bins=3)


class TestGlidingVertex:
    def test_axis_aligned_alphas_zero(self):
        enc = GlidingVertexCodec().encode(OrientedBox(0, 0, 4, 2, 0))
        assert list(enc) == [0, 0, 4, 2, 0, 0, 0, 0]

    def test_near_horizontal_alpha_jump(self):
        c = GlidingVertexCodec()
        plus = c.encode(OrientedBox(0, 0, 4, 2, 1e-4))
        minus = c.encode(OrientedBox(0, 0, 4, 2, -1e-4))
        assert float(np.max(np.abs(plus[4:] - minus[4:]))) > 0.5
        # yet the boxes are nearly identical
        assert iou(OrientedBox(0, 0, 4, 2, 1e-4), OrientedBox(0, 0, 4, 2, -1e-4)) > 0.999

    def test_roundtrip(self):
        c = GlidingVertexCodec()
        for box in seeded_boxes(200, seed=43):
            assert iou(box, c.decode(c.encode(box))) >= 1 - 1e-9

    def test_alphas_in_unit_interval(self):
        c = GlidingVertexCodec()
        for box in seeded_boxes(100, seed=44):
            enc = c.encode(box)
            assert np.all(enc[4:] >= 0.0) and np.all(enc[4:] <= 1.0)


class TestCobbCodecAdapter:
    def test_roundtrip_both_variants(self):
        for name in ("cobb", "cobb-ln"):
            c = get_codec(name)
            for box in seeded_boxes(100, seed=45, scale=0.2):
                assert iou(box, c.decode(c.encode(box))) >= 1 - 1e-9

    def test_loss_zero_on_equal(self):
        c = CobbCodec("sig")
        enc = c.encode(OrientedBox(0.1, 0.2, 0.5, 0.25, 0.7))
        assert c.loss(enc, enc) == 0.0

    def test_curve_components_are_raw_representation(self):
        from cobb.codec import encode as raw_encode

        c = CobbCodec("sig")
        box = OrientedBox(0, 0, 4, 2, 0.5)
        assert list(c.curve_components(box)) == pytest.approx(list(raw_encode(box).as_tuple()))
