import csv
import struct

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from fracrd.grid import BoundaryCondition
from fracrd.io import (heatmap_bytes, read_pnm, read_snapshot, with_boundary, write_csv,
                       write_pgm, write_ppm, write_snapshot)


def test_snapshot_round_trip_bitwise(tmp_path, rng):
    u = rng.standard_normal((5, 6, 7))
    v = rng.standard_normal((5, 6, 7))
    u[0, 0, 0] = -0.0
    u[1, 0, 0] = np.finfo(float).tiny / 4
    p = write_snapshot(tmp_path / "s.frrd", [u, v], "neumann", (1.5, 2.0), (1e-4, 0.0), 12.5)
    s = read_snapshot(p)
    assert s.dim == 3 and s.dof == (5, 6, 7)
    assert s.bc is BoundaryCondition.NEUMANN
    assert s.alpha == (1.5, 2.0) and s.kappa == (1e-4, 0.0) and s.time == 12.5
    for a, b in zip(s.arrays, (u, v)):
        assert a.tobytes() == b.tobytes()


def test_snapshot_layout(tmp_path):
    a = np.arange(6, dtype=float).reshape(2, 3)  # a[ix, iy]
    p = write_snapshot(tmp_path / "s.frrd", [a], "dirichlet", (1.8,), (10.0,), 0.25)
    data = p.read_bytes()
    assert data[:4] == b"FRRD"
    version, dim, nx, ny, S, code = struct.unpack_from("<6I", data, 4)
    assert (version, dim, nx, ny, S, code) == (1, 2, 2, 3, 1, BoundaryCondition.DIRICHLET.code)
    off = 4 + 24
    assert struct.unpack_from("<3d", data, off) == (1.8, 10.0, 0.25)
    payload = np.frombuffer(data[off + 24:], dtype="<f8")
    assert payload.size == 6
    # x varies fastest
    np.testing.assert_array_equal(payload, [a[0, 0], a[1, 0], a[0, 1], a[1, 1], a[0, 2], a[1, 2]])


def test_snapshot_rejects_corruption(tmp_path):
    p = write_snapshot(tmp_path / "s.frrd", [np.zeros(4)], "periodic", (2.0,), (1.0,), 0.0)
    raw = p.read_bytes()
    (tmp_path / "bad1").write_bytes(b"XXXX" + raw[4:])
    (tmp_path / "bad2").write_bytes(raw[:-8])
    for name in ("bad1", "bad2"):
        with pytest.raises(ValueError):
            read_snapshot(tmp_path / name)


@given(hnp.arrays(np.float64, hnp.array_shapes(min_dims=1, max_dims=3, min_side=1, max_side=6)))
@settings(max_examples=40, deadline=None)
def test_snapshot_round_trip_property(tmp_path_factory, a):
    p = tmp_path_factory.mktemp("snap") / "s.frrd"
    write_snapshot(p, [a], "periodic", (2.0,), (1.0,), 1.0)
    assert read_snapshot(p).arrays[0].tobytes() == np.ascontiguousarray(a).tobytes()


def test_pgm_scaling_and_orientation(tmp_path):
    a = np.zeros((3, 4))  # 3 x-columns, 4 y-rows
    a[2, 3] = 5.0  # largest x, largest y: top-right pixel
    a[0, 0] = -1.0  # origin: bottom-left pixel
    img = read_pnm(write_pgm(tmp_path / "a.pgm", a))
    assert img.shape == (4, 3)
    assert img[0, 2] == 255 and img[-1, 0] == 0
    assert img[1, 1] == round(255 / 6)


def test_pgm_constant_is_zero(tmp_path):
    img = read_pnm(write_pgm(tmp_path / "c.pgm", np.full((5, 5), 3.3)))
    assert np.all(img == 0)


def test_pgm_dirichlet_ring(tmp_path):
    a = np.ones((7, 7))
    img = read_pnm(write_pgm(tmp_path / "d.pgm", a, "dirichlet"))
    assert img.shape == (9, 9)
    assert np.all(img[0] == 0) and np.all(img[:, -1] == 0) and img[4, 4] == 255
    assert with_boundary(a, "periodic") is a


def test_pgm_3d_mid_slice_and_1d():
    a = np.zeros((4, 4, 5))
    a[:, :, 2] = np.arange(16).reshape(4, 4)
    img = heatmap_bytes(a)
    assert img.shape == (4, 4) and img.max() == 255
    assert heatmap_bytes(np.arange(5.0)).shape == (1, 5)


def test_ppm_channels(tmp_path):
    u = np.arange(16.0).reshape(4, 4)
    v = -u
    img = read_pnm(write_ppm(tmp_path / "c.ppm", u, v))
    assert img.shape == (4, 4, 3)
    assert np.all(img[..., 1] == 0)
    assert np.array_equal(img[..., 0], heatmap_bytes(u))
    assert np.array_equal(img[..., 2], heatmap_bytes(v))
    with pytest.raises(ValueError):
        write_ppm(tmp_path / "x.ppm", u, np.zeros((3, 3)))


def test_csv(tmp_path):
    p = write_csv(tmp_path / "t.csv", ["a", "b"], [(0.1, None), (2, 1e-300)])
    rows = list(csv.reader(open(p)))
    assert rows == [["a", "b"], ["0.1", ""], ["2", "1e-300"]]
