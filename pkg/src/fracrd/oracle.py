"""Dense brute-force references for validating the fast paths at small N.

Nothing here is fast: matrices are formed explicitly and decomposed with a
general eigensolver. The fast transform path must agree with these.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import OracleError
from .grid import BoundaryCondition
from .spectrum import eigenvalues_1d

__all__ = [
    "DensePair",
    "dense_pair",
    "dense_eigen_check",
    "dense_fractional_apply",
    "dense_fractional_matrix",
    "exact_linear_step",
    "kron_sum",
    "fractional_apply_deviation",
    "linear_step_errors",
    "OracleReport",
    "oracle_report",
]

MAX_DENSE_N = 64


@dataclass(frozen=True)
class DensePair:
    A: np.ndarray
    B: np.ndarray
    bc: BoundaryCondition
    N: int
    h: float

    @property
    def T(self) -> np.ndarray:
        """Compact representation ``A^{-1} B`` of ``-Laplace``."""
        return np.linalg.solve(self.A, self.B)


def dense_pair(N: int, h: float, bc) -> DensePair:
    """Mass matrix ``A`` and stiffness ``B`` of the compact scheme, exactly as printed per boundary type."""
    bc = BoundaryCondition.parse(bc)
    if N > MAX_DENSE_N:
        raise ValueError(f"dense oracle limited to N <= {MAX_DENSE_N}, got {N}")
    if N < 4:
        raise ValueError(f"N must be >= 4, got {N}")
    n = bc.active_dof(N)
    A = np.diag(np.full(n, 5 / 6)) + np.diag(np.full(n - 1, 1 / 12), 1) + np.diag(np.full(n - 1, 1 / 12), -1)
    B = np.diag(np.full(n, 2.0)) - np.diag(np.ones(n - 1), 1) - np.diag(np.ones(n - 1), -1)
    if bc is BoundaryCondition.PERIODIC:
        A[0, -1] = A[-1, 0] = 1 / 12
        B[0, -1] = B[-1, 0] = -1.0
    elif bc is BoundaryCondition.NEUMANN:
        A[0, 1] = A[-1, -2] = 1 / 6
        B[0, 1] = B[-1, -2] = -2.0
    return DensePair(A=A, B=B / (h * h), bc=bc, N=N, h=h)


def _eig(T):
    w, V = scipy.linalg.eig(T)
    if np.max(np.abs(w.imag)) > 1e-8 * max(1.0, np.max(np.abs(w.real))):
        raise OracleError("compact Laplacian has complex eigenvalues")
    w = w.real
    V = V.real if np.iscomplexobj(V) and np.max(np.abs(V.imag)) == 0 else V
    scale = max(1.0, np.max(np.abs(w)))
    # the constant mode comes out as +-roundoff; pin it so fractional powers stay real
    w = np.where(np.abs(w) < 1e-12 * scale, 0.0, w)
    return w, V


def _check_decomposition(T, w, V):
    Vinv = np.linalg.inv(V)
    resid = np.max(np.abs((V * w) @ Vinv - T))
    if resid > 1e-10 * max(1.0, np.max(np.abs(T))):
        raise OracleError(f"eigendecomposition residual {resid:.3e} too large")
    return Vinv


def dense_eigen_check(N: int, h: float, bc, alpha: float | None = None,
                      closed_form: np.ndarray | None = None) -> float:
    """Max deviation between sorted dense eigenvalues of ``A^{-1} B`` and the closed form.

    The deviation is relative to the largest eigenvalue (the constant mode is
    zero, so entrywise relative errors are undefined there). ``alpha``, if
    given, compares the ``alpha/2`` powers instead.
    """
    pair = dense_pair(N, h, bc)
    w, _ = _eig(pair.T)
    ref = eigenvalues_1d(N, h, pair.bc) if closed_form is None else np.asarray(closed_form, float)
    if ref.shape != w.shape:
        raise OracleError(f"eigenvalue count {w.size} does not match closed form {ref.size}")
    w = np.sort(w)
    ref = np.sort(ref)
    if alpha is not None:
        w = np.power(np.clip(w, 0, None), alpha / 2)
        ref = np.power(np.clip(ref, 0, None), alpha / 2)
    return float(np.max(np.abs(w - ref)) / np.max(np.abs(ref)))


def kron_sum(T: np.ndarray, dim: int) -> np.ndarray:
    """Matrix of ``T`` acting along every axis of a C-ordered ``dim``-D array."""
    n = T.shape[0]
    I = np.eye(n)
    out = np.zeros((n ** dim, n ** dim))
    for axis in range(dim):
        factors = [T if a == axis else I for a in range(dim)]
        term = factors[0]
        for f in factors[1:]:
            term = np.kron(term, f)
        out += term
    return out


def dense_fractional_matrix(pair: DensePair, alpha: float, dim: int = 1) -> np.ndarray:
    """``V diag(w^{alpha/2}) V^{-1}`` for the (Kronecker-summed) compact Laplacian."""
    T = pair.T if dim == 1 else kron_sum(pair.T, dim)
    w, V = _eig(T)
    Vinv = _check_decomposition(T, w, V)
    if np.min(w) < 0:
        raise OracleError("negative eigenvalue in compact Laplacian")
    M = (V * np.power(w, alpha / 2)) @ Vinv
    return M.real if np.iscomplexobj(M) else M


def dense_fractional_apply(pair: DensePair, alpha: float, u: np.ndarray) -> np.ndarray:
    """Dense ``T^{alpha/2} u`` where ``u`` is a 1-D vector or a d-D array on the active grid.

    For d > 1 the 1-D decomposition ``T = V diag(w) V^{-1}`` is applied along
    each axis, which is the eigendecomposition of the Kronecker sum without
    forming it; this keeps the reference accurate at ``N^d`` unknowns.
    """
    u = np.asarray(u, dtype=float)
    n = pair.A.shape[0]
    if any(s != n for s in u.shape):
        raise ValueError(f"array shape {u.shape} does not match {n} active nodes per axis")
    if u.ndim == 1:
        return dense_fractional_matrix(pair, alpha) @ u
    T = pair.T
    w, V = _eig(T)
    Vinv = _check_decomposition(T, w, V)
    coef = u.astype(V.dtype)
    for axis in range(u.ndim):
        coef = np.moveaxis(np.tensordot(Vinv, coef, axes=([1], [axis])), 0, axis)
    lam = w
    for _ in range(1, u.ndim):
        lam = np.add.outer(lam, w)
    coef = coef * np.power(lam, alpha / 2)
    for axis in range(u.ndim):
        coef = np.moveaxis(np.tensordot(V, coef, axes=([1], [axis])), 0, axis)
    return coef.real if np.iscomplexobj(coef) else coef


def exact_linear_step(A: np.ndarray, B: np.ndarray, tau: float, v: np.ndarray) -> np.ndarray:
    """Exact propagator ``expm((B - A) tau) v`` of ``v' + A v = B v``."""
    if tau == 0:
        return np.array(v, dtype=float, copy=True)
    return scipy.linalg.expm((np.asarray(B) - np.asarray(A)) * tau) @ np.asarray(v)


def fractional_apply_deviation(N: int, bc, alpha: float, dim: int = 1, trials: int = 10,
                               seed: int = 0) -> float:
    """Worst max-norm gap between the transform path and the dense reference over random fields."""
    from .grid import make_grid
    from .spectrum import apply_fractional_laplacian, eigenvalue_field
    from .transforms import plan_transform

    grid = make_grid(dim, (0.0, 1.0), N, bc)
    pair = dense_pair(N, grid.h, grid.bc)
    plan = plan_transform(grid)
    ef = eigenvalue_field(grid).with_alpha(alpha)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        u = rng.standard_normal(grid.shape)
        fast = apply_fractional_laplacian(plan, ef, u)
        worst = max(worst, float(np.max(np.abs(fast - dense_fractional_apply(pair, alpha, u)))))
    return worst


def _linear_model(bc, alpha, kappa, b):
    from .models import ReactionModel

    return ReactionModel(
        name="linear", species=("u",), kappa=(float(kappa),), alpha=(float(alpha),), params={},
        dim=1, bounds=(0.0, 1.0), bcs=(BoundaryCondition.parse(bc),),
        reaction_factory=lambda m, g, k: (lambda arrays, t: [b * arrays[0]]),
        initial_factory=lambda m, g: [np.zeros(g.shape)],
    )


def linear_step_errors(N: int, bc, alpha: float, kappa: float = 1.0, levels: int = 3,
                       tau0: float | None = None, seed: int = 0):
    """One-step errors of ETDRK4-P13 against ``expm`` on ``u' + kappa T^{alpha/2} u = b(x) u``.

    ``b(x) = 1 + cos(2 pi x) / 2`` and the start vector is random. The default
    ``tau0`` puts ``tau0 * rho`` at 0.1, with ``rho`` the spectral radius of the
    linear operator, which is inside the asymptotic range; the step is then
    halved ``levels - 1`` times. Returns ``(taus, errors)``.
    """
    from .etd import StepperContext
    from .grid import make_grid

    grid = make_grid(1, (0.0, 1.0), N, bc)
    b = 1.0 + 0.5 * np.cos(2 * np.pi * grid.coords(0))
    pair = dense_pair(N, grid.h, grid.bc)
    A = kappa * dense_fractional_matrix(pair, alpha)
    B = np.diag(b)
    if tau0 is None:
        rho = kappa * np.max(np.abs(eigenvalues_1d(N, grid.h, grid.bc))) ** (alpha / 2) + np.max(np.abs(b))
        tau0 = 0.1 / rho
    v = np.random.default_rng(seed).standard_normal(grid.shape)
    model = _linear_model(grid.bc, alpha, kappa, b)
    taus, errors = [], []
    for k in range(levels):
        tau = tau0 / 2**k
        ctx = StepperContext(grid, model, tau)
        got = ctx.step([v], 0.0)[0]
        taus.append(tau)
        errors.append(float(np.max(np.abs(got - exact_linear_step(A, B, tau, v)))))
    return taus, errors


@dataclass(frozen=True)
class OracleReport:
    N: int
    bc: BoundaryCondition
    alpha: float
    eigen_deviation: float
    apply_deviation: float
    step_order: float
    eigen_tol: float = 1e-10
    apply_tol: float = 1e-10
    order_target: float = 5.0
    order_tol: float = 0.2

    @property
    def checks(self):
        return [
            ("eigenvalues", self.eigen_deviation, self.eigen_deviation <= self.eigen_tol),
            ("fractional_apply", self.apply_deviation, self.apply_deviation <= self.apply_tol),
            ("step_order", self.step_order, abs(self.step_order - self.order_target) <= self.order_tol),
        ]

    @property
    def ok(self) -> bool:
        return all(passed for _, _, passed in self.checks)


def oracle_report(N: int, bc, alpha: float) -> OracleReport:
    """Run the dense cross-checks used by ``fracrd oracle-check``."""
    from .etd import fit_order

    bc = BoundaryCondition.parse(bc)
    if N > MAX_DENSE_N:
        raise ValueError(f"dense oracle limited to N <= {MAX_DENSE_N}, got {N}")
    h = 1.0 / N
    eig = dense_eigen_check(N, h, bc, alpha)
    app = fractional_apply_deviation(N, bc, alpha)
    taus, errs = linear_step_errors(N, bc, alpha)
    return OracleReport(N, bc, float(alpha), eig, app, fit_order(taus, errs))
