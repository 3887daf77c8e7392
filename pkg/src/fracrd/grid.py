"""Grid geometry, boundary conditions, field containers and error metrics.

Fields are numpy arrays indexed ``[ix, iy, iz]`` over the *active* nodes of a
uniform grid with ``N`` intervals per axis:

* periodic  -> nodes ``x_0 .. x_{N-1}``  (``N`` values, ``x_N`` is ``x_0``)
* dirichlet -> nodes ``x_1 .. x_{N-1}``  (``N-1`` values, boundary is zero)
* neumann   -> nodes ``x_0 .. x_N``      (``N+1`` values)
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import GridError

__all__ = [
    "BoundaryCondition",
    "Grid",
    "Field",
    "State",
    "make_grid",
    "max_norm_error",
    "convergence_order",
]


class BoundaryCondition(enum.Enum):
    PERIODIC = "periodic"
    DIRICHLET = "dirichlet"
    NEUMANN = "neumann"

    @classmethod
    def parse(cls, value) -> "BoundaryCondition":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            names = ", ".join(m.value for m in cls)
            raise GridError(f"unknown boundary condition {value!r} (expected one of {names})") from None

    def active_dof(self, N: int) -> int:
        if self is BoundaryCondition.PERIODIC:
            return N
        if self is BoundaryCondition.DIRICHLET:
            return N - 1
        return N + 1

    @property
    def code(self) -> int:
        """Integer tag used in binary snapshot headers."""
        return _BC_CODES[self]

    @classmethod
    def from_code(cls, code: int) -> "BoundaryCondition":
        for bc, c in _BC_CODES.items():
            if c == code:
                return bc
        raise GridError(f"unknown boundary-condition code {code}")


_BC_CODES = {
    BoundaryCondition.PERIODIC: 0,
    BoundaryCondition.DIRICHLET: 1,
    BoundaryCondition.NEUMANN: 2,
}


@dataclass(frozen=True)
class Grid:
    """Uniform square/cubic grid with one ``N`` and one ``h`` on every axis."""

    dim: int
    lower: tuple[float, ...]
    upper: tuple[float, ...]
    N: int
    bc: BoundaryCondition

    @property
    def h(self) -> float:
        return (self.upper[0] - self.lower[0]) / self.N

    @property
    def n_active(self) -> int:
        return self.bc.active_dof(self.N)

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.n_active,) * self.dim

    @property
    def size(self) -> int:
        return self.n_active ** self.dim

    def coords(self, axis: int = 0) -> np.ndarray:
        """Coordinates of the active nodes along ``axis``."""
        start = 1 if self.bc is BoundaryCondition.DIRICHLET else 0
        idx = np.arange(start, start + self.n_active)
        return self.lower[axis] + idx * self.h

    def mesh(self) -> tuple[np.ndarray, ...]:
        """``ij``-indexed coordinate arrays, one per axis."""
        axes = [self.coords(a) for a in range(self.dim)]
        return tuple(np.meshgrid(*axes, indexing="ij"))

    def zeros(self) -> np.ndarray:
        return np.zeros(self.shape)


def make_grid(dim: int, bounds, N: int, bc) -> Grid:
    """Build a validated :class:`Grid`.

    ``bounds`` is either one ``(lower, upper)`` pair used on every axis or a
    sequence of ``dim`` pairs. All axes must have the same length, because the
    tensor-sum eigenvalue formulas assume a single mesh width.
    """
    if dim not in (1, 2, 3):
        raise GridError(f"dimension must be 1, 2 or 3, got {dim}")
    if int(N) != N or N < 4:
        raise GridError(f"N must be an integer >= 4, got {N}")
    N = int(N)
    bc = BoundaryCondition.parse(bc)

    pairs = _normalise_bounds(bounds, dim)
    lengths = []
    for lo, hi in pairs:
        if not (math.isfinite(lo) and math.isfinite(hi)) or hi <= lo:
            raise GridError(f"degenerate or inverted bounds ({lo}, {hi})")
        lengths.append(hi - lo)
    if any(not math.isclose(L, lengths[0], rel_tol=1e-12) for L in lengths):
        raise GridError(f"anisotropic domain not supported: axis lengths {lengths}")

    return Grid(
        dim=dim,
        lower=tuple(float(lo) for lo, _ in pairs),
        upper=tuple(float(hi) for _, hi in pairs),
        N=N,
        bc=bc,
    )


def _normalise_bounds(bounds, dim):
    arr = np.asarray(bounds, dtype=float)
    if arr.shape == (2,):
        return [tuple(arr)] * dim
    if arr.shape == (dim, 2):
        return [tuple(row) for row in arr]
    raise GridError(f"bounds must be a (lower, upper) pair or {dim} such pairs, got shape {arr.shape}")


@dataclass
class Field:
    """Values of one species on the active nodes of ``grid``."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != self.grid.shape:
            raise GridError(f"field shape {self.values.shape} does not match grid shape {self.grid.shape}")


@dataclass
class State:
    """Ordered species fields sharing one grid."""

    fields: tuple[Field, ...]

    def __post_init__(self):
        self.fields = tuple(self.fields)
        if not self.fields:
            raise GridError("a state needs at least one species")
        grid = self.fields[0].grid
        for f in self.fields[1:]:
            if f.grid != grid:
                raise GridError("all species of a state must share one grid")

    @classmethod
    def from_arrays(cls, grid: Grid, arrays: Sequence[np.ndarray]) -> "State":
        return cls(tuple(Field(grid, a) for a in arrays))

    @property
    def grid(self) -> Grid:
        return self.fields[0].grid

    @property
    def arrays(self) -> list[np.ndarray]:
        return [f.values for f in self.fields]

    def __len__(self):
        return len(self.fields)

    def __getitem__(self, i) -> Field:
        return self.fields[i]

    def copy(self) -> "State":
        return State(tuple(Field(f.grid, f.values.copy()) for f in self.fields))


def _values(x) -> np.ndarray:
    return x.values if isinstance(x, Field) else np.asarray(x, dtype=float)


def max_norm_error(numeric, exact) -> float:
    """Maximum absolute pointwise difference over the active nodes."""
    a, b = _values(numeric), _values(exact)
    if a.shape != b.shape:
        raise GridError(f"shape mismatch: {a.shape} vs {b.shape}")
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))


def convergence_order(e_coarse: float, e_fine: float) -> float:
    """Observed order ``log2(E_h / E_{h/2})`` under halving of ``h`` and ``tau``."""
    if not (e_coarse > 0 and e_fine > 0):
        raise ValueError(f"errors must be strictly positive, got {e_coarse}, {e_fine}")
    return math.log2(e_coarse / e_fine)
