"""Sweep CSVs: continuity of the nine-parameter codec, jumps of the baselines."""

import math

import numpy as np
import pytest

from cobb.baselines import get_codec
from cobb.curves import aspect_sweep, column_jumps, emit_curves, max_neighbor_step, rotation_sweep
from cobb.geometry import OrientedBox

BOX = OrientedBox(0, 0, 4, 2, 0)
GRID = 1440  # quarter-degree steps


class TestRotationSweep:
    def test_cobb_columns_continuous(self):
        header, rows = rotation_sweep(get_codec("cobb"), BOX, GRID)
        step = 2 * math.pi / GRID
        # every component obeys a grid-local Lipschitz bound; bound chosen an
        # order above the observed slopes, far below any genuine jump
        for col in range(1, rows.shape[1]):
            assert max_neighbor_step(rows[:, col]) <= 16 * step, header[col]

    def test_cobb_rs_period_and_peaks(self):
        header, rows = rotation_sweep(get_codec("cobb"), BOX, GRID)
        rs = rows[:, header.index("rs")]
        quarter = GRID // 4  # pi/2 of rotation
        assert np.allclose(rs[:GRID - quarter], rs[quarter:], atol=1e-9)
        # peaks at the diagonal angles: atan(h/w) or atan(w/h), mod pi/2
        peak = float(rows[int(np.argmax(rs)), 0]) % (math.pi / 2)
        tol = 2 * math.pi / GRID
        assert (
            abs(peak - math.atan2(2, 4)) <= tol or abs(peak - math.atan2(4, 2)) <= tol
        )
        assert rs.max() == pytest.approx(0.5, abs=1e-3)

    def test_acute_angle_column_jumps(self):
        header, rows = rotation_sweep(get_codec("acute"), BOX, GRID)
        theta = rows[:, header.index("theta")]
        half = GRID // 2  # the box repeats after half a turn
        jumps = column_jumps(theta[: half + 1], threshold=1.0)
        assert len(jumps) == 2
        locations = [float(rows[j, 0]) for j in jumps]
        assert locations[0] == pytest.approx(math.pi / 4, abs=2 * math.pi / GRID)
        assert locations[1] == pytest.approx(3 * math.pi / 4, abs=2 * math.pi / GRID)
        for j in jumps:
            assert abs(theta[j + 1] - theta[j]) == pytest.approx(math.pi / 2, abs=0.02)


class TestAspectSweep:
    def test_longedge_square_step(self):
        square = OrientedBox(0, 0, 1, 1, math.pi / 6)
        header, rows = aspect_sweep(get_codec("long-edge"), square, 513)
        theta = rows[:, header.index("theta")]
        jumps = column_jumps(theta, threshold=1.0)
        assert len(jumps) == 1
        assert float(rows[jumps[0], 0]) == pytest.approx(1.0, abs=0.01)

    def test_cobb_aspect_continuous(self):
        header, rows = aspect_sweep(get_codec("cobb"), OrientedBox(0, 0, 1, 1, 0.4), 513)
        ratios = rows[:, 0]
        log_step = math.log(ratios[1] / ratios[0])
        for col in range(1, rows.shape[1]):
            assert max_neighbor_step(rows[:, col]) <= 16 * log_step, header[col]


class TestEmit:
    def test_file_shape_and_float_format(self, tmp_path):
        path = tmp_path / "c.csv"
        n = emit_curves(get_codec("cobb"), "rotation", BOX, path, grid_points=32)
        lines = path.read_text().splitlines()
        assert n == 32 and len(lines) == 33
        assert lines[0] == "sweep,xc,yc,w,h,rs,s0,s1,s2,s3"
        value = lines[2].split(",")[0]
        assert float(value) == pytest.approx(2 * math.pi / 32)
        assert len(value.replace("-", "").replace(".", "").replace("e", "").lstrip("0")) <= 17

    def test_unknown_sweep(self, tmp_path):
        from cobb.errors import InvalidArgumentError

        with pytest.raises(InvalidArgumentError):
            emit_curves(get_codec("cobb"), "shear", BOX, tmp_path / "x.csv")
