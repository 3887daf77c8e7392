"""Output writers: binary snapshots, PGM/PPM heatmaps, CSV tables.

Snapshot layout (all little-endian)::

    b"FRRD"  u32 version  u32 dim  u32 dof[dim]  u32 species  u32 bc_code
    f64 (alpha, kappa) per species  f64 time
    f64 payload: species after species, each with x varying fastest

Heatmaps put x along image columns and y along rows, with y increasing
upward (the first image row is the largest y). 3-D fields are cut at the
middle z index. Images cover the active DOF; passing ``bc`` pads Dirichlet
fields with their zero boundary ring.
"""
from __future__ import annotations

import csv
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .grid import BoundaryCondition

__all__ = [
    "Snapshot",
    "write_snapshot",
    "read_snapshot",
    "heatmap_bytes",
    "write_pgm",
    "write_ppm",
    "read_pnm",
    "write_csv",
    "with_boundary",
]

MAGIC = b"FRRD"
VERSION = 1


@dataclass(frozen=True)
class Snapshot:
    dim: int
    dof: tuple[int, ...]
    bc: BoundaryCondition
    alpha: tuple[float, ...]
    kappa: tuple[float, ...]
    time: float
    arrays: list[np.ndarray]


def write_snapshot(path, arrays: Sequence[np.ndarray], bc, alpha, kappa, time: float) -> Path:
    arrays = [np.asarray(a, dtype=np.float64) for a in arrays]
    if not arrays:
        raise ValueError("snapshot needs at least one species")
    shape = arrays[0].shape
    if any(a.shape != shape for a in arrays):
        raise ValueError("all species must share one shape")
    S = len(arrays)
    if len(alpha) != S or len(kappa) != S:
        raise ValueError("need one alpha and one kappa per species")
    bc = BoundaryCondition.parse(bc)
    dim = len(shape)
    head = MAGIC + struct.pack(f"<II{dim}III", VERSION, dim, *shape, S, bc.code)
    head += struct.pack(f"<{2 * S}d", *[v for pair in zip(alpha, kappa) for v in pair])
    head += struct.pack("<d", time)
    path = Path(path)
    with open(path, "wb") as fh:
        fh.write(head)
        for a in arrays:
            fh.write(a.ravel(order="F").astype("<f8").tobytes())
    return path


def read_snapshot(path) -> Snapshot:
    data = Path(path).read_bytes()
    if data[:4] != MAGIC:
        raise ValueError(f"{path}: not a snapshot file")
    off = 4
    version, dim = struct.unpack_from("<II", data, off)
    off += 8
    if version != VERSION:
        raise ValueError(f"{path}: unsupported snapshot version {version}")
    if dim not in (1, 2, 3):
        raise ValueError(f"{path}: bad dimension {dim}")
    dof = struct.unpack_from(f"<{dim}I", data, off)
    off += 4 * dim
    S, code = struct.unpack_from("<II", data, off)
    off += 8
    ak = struct.unpack_from(f"<{2 * S}d", data, off)
    off += 16 * S
    (time,) = struct.unpack_from("<d", data, off)
    off += 8
    n = int(np.prod(dof))
    if len(data) - off != S * n * 8:
        raise ValueError(f"{path}: payload is {len(data) - off} bytes, expected {S * n * 8}")
    flat = np.frombuffer(data, dtype="<f8", offset=off).astype(np.float64)
    arrays = [flat[s * n:(s + 1) * n].reshape(dof, order="F") for s in range(S)]
    return Snapshot(dim, tuple(dof), BoundaryCondition.from_code(code),
                    tuple(ak[0::2]), tuple(ak[1::2]), time, arrays)


def with_boundary(a: np.ndarray, bc) -> np.ndarray:
    """Pad a Dirichlet field with its zero boundary; other fields are returned as is."""
    if BoundaryCondition.parse(bc) is BoundaryCondition.DIRICHLET:
        return np.pad(a, 1)
    return a


def _plane(a: np.ndarray) -> np.ndarray:
    """2-D image array (rows top to bottom) from a 1-, 2- or 3-D field."""
    if a.ndim == 3:
        a = a[:, :, a.shape[2] // 2]
    if a.ndim == 1:
        return a[None, :]
    return a.T[::-1]


def _scale(img: np.ndarray) -> np.ndarray:
    lo, hi = float(np.min(img)), float(np.max(img))
    if not hi > lo:
        return np.zeros(img.shape, dtype=np.uint8)
    return np.rint((img - lo) * (255.0 / (hi - lo))).astype(np.uint8)


def heatmap_bytes(a: np.ndarray) -> np.ndarray:
    """Min-max scaled 8-bit image of a field (0 = minimum, 255 = maximum, constant = all 0)."""
    return _scale(_plane(np.asarray(a, dtype=float)))


def write_pgm(path, a: np.ndarray, bc=None) -> Path:
    a = np.asarray(a, dtype=float)
    if bc is not None:
        a = with_boundary(a, bc)
    img = heatmap_bytes(a)
    path = Path(path)
    h, w = img.shape
    path.write_bytes(f"P5\n{w} {h}\n255\n".encode() + img.tobytes())
    return path


def write_ppm(path, u: np.ndarray, v: np.ndarray, bc=None) -> Path:
    """Two-species composite: ``u`` in the red channel, ``v`` in blue, each scaled separately."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise ValueError("species shapes differ")
    if bc is not None:
        u, v = with_boundary(u, bc), with_boundary(v, bc)
    r, b = heatmap_bytes(u), heatmap_bytes(v)
    rgb = np.zeros(r.shape + (3,), dtype=np.uint8)
    rgb[..., 0] = r
    rgb[..., 2] = b
    h, w = r.shape
    path = Path(path)
    path.write_bytes(f"P6\n{w} {h}\n255\n".encode() + rgb.tobytes())
    return path


def read_pnm(path) -> np.ndarray:
    """Read back a binary PGM (P5) or PPM (P6) written by this module."""
    data = Path(path).read_bytes()
    parts = data.split(b"\n", 3)
    kind = parts[0]
    w, h = map(int, parts[1].split())
    if int(parts[2]) != 255:
        raise ValueError("only 8-bit images are supported")
    raw = np.frombuffer(parts[3], dtype=np.uint8)
    if kind == b"P5":
        return raw.reshape(h, w)
    if kind == b"P6":
        return raw.reshape(h, w, 3)
    raise ValueError(f"unsupported image type {kind!r}")


def write_csv(path, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    path = Path(path)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow(["" if v is None else (repr(float(v)) if isinstance(v, (float, np.floating)) else v)
                        for v in row])
    return path
