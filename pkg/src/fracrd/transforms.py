"""Fast diagonalising transforms for the compact Laplacian, one per boundary condition.

Normalisation: ``forward`` is the unnormalised action of the eigenvector
matrix ``P`` and ``inverse`` carries every scale factor, so that
``inverse(forward(u)) == u``.

periodic
    ``P[i, j] = exp(-2*pi*1j*i*j/N)``, i.e. the DFT. Real input is transformed
    with ``rfftn``, so the last axis of a spectrum holds only ``N//2 + 1``
    modes. Pass ``full=True`` to :meth:`TransformPlan.forward` for the full
    complex spectrum.
dirichlet
    ``P[i, j] = sin(i*j*pi/N)`` for ``i, j = 1..N-1`` (DST-I). ``P @ P = (N/2) I``,
    so the inverse is the forward scaled by ``2/N``.
neumann
    The vector ``u = (u_0..u_N)`` is extended by its reflection
    ``(u_{N-1}..u_1)`` to length ``2N`` and DFT'd; the first ``N+1`` outputs are
    kept. That equals the DCT-I, i.e. ``P @ (w * u)`` with
    ``P[i, j] = cos(i*j*pi/N)``, ``i, j = 0..N``, and weights ``w = (1, 2, .., 2, 1)``.
    The inverse is the same reflection with an inverse DFT, i.e. DCT-I / ``2N``.

Multi-dimensional transforms are applied axis by axis (batched 1-D transforms).
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np
import scipy.fft as sfft

from .errors import GridError
from .grid import BoundaryCondition, Field, Grid

__all__ = ["TransformPlan", "plan_transform", "forward", "inverse", "default_workers"]


def default_workers() -> int:
    """Thread count for the FFT backend, capped by ``FRACRD_THREADS`` (default 1)."""
    raw = os.environ.get("FRACRD_THREADS", "").strip()
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, min(n, os.cpu_count() or 1))


@dataclass(frozen=True)
class TransformPlan:
    """Reusable description of the per-axis transform for one grid.

    Plans hold no mutable scratch, so one plan may be shared between threads.
    """

    grid: Grid
    workers: int = field(default_factory=default_workers)

    @property
    def kind(self) -> str:
        return {
            BoundaryCondition.PERIODIC: "dft",
            BoundaryCondition.DIRICHLET: "dst1",
            BoundaryCondition.NEUMANN: "dct1",
        }[self.grid.bc]

    @property
    def length(self) -> int:
        """Length of the 1-D transform applied along each axis."""
        return self.grid.n_active

    @property
    def reflected_length(self) -> int | None:
        """Length of the even-reflected DFT that realises the Neumann transform."""
        if self.grid.bc is BoundaryCondition.NEUMANN:
            return 2 * self.grid.N
        return None

    @property
    def axes(self) -> tuple[int, ...]:
        return tuple(range(self.grid.dim))

    @property
    def spectral_shape(self) -> tuple[int, ...]:
        shape = self.grid.shape
        if self.grid.bc is BoundaryCondition.PERIODIC:
            return shape[:-1] + (shape[-1] // 2 + 1,)
        return shape

    @property
    def spectral_dtype(self):
        return np.complex128 if self.grid.bc is BoundaryCondition.PERIODIC else np.float64

    def restrict(self, modes: np.ndarray) -> np.ndarray:
        """Map a full mode-indexed array (e.g. eigenvalues) onto the spectral layout."""
        modes = np.asarray(modes)
        if modes.shape != self.grid.shape:
            raise GridError(f"mode array shape {modes.shape} does not match grid {self.grid.shape}")
        if self.grid.bc is BoundaryCondition.PERIODIC:
            return np.ascontiguousarray(modes[..., : self.spectral_shape[-1]])
        return np.ascontiguousarray(modes)

    def _check(self, u):
        u = u.values if isinstance(u, Field) else np.asarray(u)
        if u.shape != self.grid.shape:
            raise GridError(f"field shape {u.shape} does not match grid shape {self.grid.shape}")
        return u

    # Raw pair: inverse_raw(forward_raw(u)) == u, scale factors that cancel
    # between the two (powers of two, exact in floating point) are dropped.
    def forward_raw(self, u: np.ndarray) -> np.ndarray:
        bc = self.grid.bc
        if bc is BoundaryCondition.PERIODIC:
            return sfft.rfftn(u, axes=self.axes, workers=self.workers)
        if bc is BoundaryCondition.DIRICHLET:
            return sfft.dstn(u, type=1, axes=self.axes, workers=self.workers)
        return sfft.dctn(u, type=1, axes=self.axes, workers=self.workers)

    def inverse_raw(self, s: np.ndarray) -> np.ndarray:
        bc = self.grid.bc
        if bc is BoundaryCondition.PERIODIC:
            return sfft.irfftn(s, s=self.grid.shape, axes=self.axes, workers=self.workers)
        if bc is BoundaryCondition.DIRICHLET:
            return sfft.idstn(s, type=1, axes=self.axes, workers=self.workers)
        return sfft.idctn(s, type=1, axes=self.axes, workers=self.workers)

    def forward(self, u, full: bool = False) -> np.ndarray:
        u = self._check(u)
        bc = self.grid.bc
        if bc is BoundaryCondition.PERIODIC and full:
            return sfft.fftn(u, axes=self.axes, workers=self.workers)
        s = self.forward_raw(u)
        if bc is BoundaryCondition.DIRICHLET:
            s *= 0.5 ** self.grid.dim
        return s

    def inverse(self, s: np.ndarray) -> np.ndarray:
        s = np.asarray(s)
        bc = self.grid.bc
        if bc is BoundaryCondition.PERIODIC and s.shape == self.grid.shape:
            # full complex spectrum
            return sfft.ifftn(s, axes=self.axes, workers=self.workers).real
        if s.shape != self.spectral_shape:
            raise GridError(f"spectrum shape {s.shape} does not match plan {self.spectral_shape}")
        u = self.inverse_raw(s)
        if bc is BoundaryCondition.DIRICHLET:
            u *= 2.0 ** self.grid.dim
        return u


def plan_transform(grid: Grid, workers: int | None = None) -> TransformPlan:
    if workers is None:
        return TransformPlan(grid)
    return TransformPlan(grid, workers=max(1, int(workers)))


def forward(plan: TransformPlan, field, full: bool = False) -> np.ndarray:
    return plan.forward(field, full=full)


def inverse(plan: TransformPlan, spectral: np.ndarray) -> Field:
    return Field(plan.grid, plan.inverse(spectral))
