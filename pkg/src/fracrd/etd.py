"""ETDRK4-P13 time stepping in the diagonalised (spectral) basis.

For ``u_t + kappa T^{alpha/2} u = f(u, t)`` each mode evolves with its own
scalar ``L = kappa * tau * lambda^{alpha/2}``. The scheme replaces every
matrix exponential by the (1, 3) Padé approximant of ``exp(-z)``; all the
resulting rational functions of ``L`` are precomputed once as arrays, and a step
costs four reaction evaluations plus transforms and fused elementwise products.
"""
from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import _kernels
from .errors import DivergenceError
from .grid import Grid, State
from .spectrum import EigenvalueField, eigenvalue_field
from .transforms import TransformPlan, plan_transform

__all__ = [
    "EtdCoefficients",
    "StepperContext",
    "precompute_coefficients",
    "etdrk4_step",
    "integrate",
    "scalar_step",
]

log = logging.getLogger(__name__)

Reaction = Callable[[Sequence[np.ndarray], float], list]


@dataclass(frozen=True)
class EtdCoefficients:
    """The six rational weight arrays of one species, evaluated at ``y = kappa*tau*lambda^{alpha/2}``.

    ``r13`` advances over a full step and ``q13`` over a half step; ``phi`` weights
    the half-step stages, ``phi1..phi3`` the Simpson-like final combination.
    """

    tau: float
    y: np.ndarray
    r13: np.ndarray
    q13: np.ndarray
    phi: np.ndarray
    phi1: np.ndarray
    phi2: np.ndarray
    phi3: np.ndarray

    def arrays(self):
        return self.r13, self.q13, self.phi, self.phi1, self.phi2, self.phi3


def precompute_coefficients(lambda_pow, kappa: float, tau: float, kernels=None) -> EtdCoefficients:
    """Evaluate the ETDRK4-P13 weights for one diffusive (or ``kappa = 0``) species.

    ``lambda_pow`` is an :class:`EigenvalueField` with its fractional power set,
    or a plain array of ``lambda^{alpha/2}`` values.
    """
    if not tau > 0:
        raise ValueError(f"time step must be positive, got {tau}")
    if kappa < 0:
        raise ValueError(f"diffusion coefficient must be >= 0, got {kappa}")
    if isinstance(lambda_pow, EigenvalueField):
        if lambda_pow.lam_pow is None:
            raise ValueError("eigenvalue field has no fractional power")
        lambda_pow = lambda_pow.lam_pow
    lp = np.ascontiguousarray(lambda_pow, dtype=np.float64)
    y = kappa * tau * lp if kappa > 0 else np.zeros_like(lp)
    k = kernels or _kernels.backend
    return EtdCoefficients(tau, y, *k.etd_coefficients(y, tau))


def scalar_step(L, tau: float, f: Callable, u, t: float = 0.0):
    """One ETDRK4-P13 step of the scalar problem ``u' + (L/tau) u = f(u, t)``.

    ``L`` and ``u`` may be complex; this is the 1x1 version of
    :meth:`StepperContext.step` and is used by the stability analysis.
    """
    L = complex(L) if isinstance(L, complex) else float(L)
    d1 = 24.0 + L * (18.0 + L * (6.0 + L))
    d2 = 192.0 + L * (72.0 + L * (12.0 + L))
    r13 = (24.0 - 6.0 * L) / d1
    q13 = 24.0 * (8.0 - L) / d2
    phi = tau * (96.0 + L * (12.0 + L)) / d2
    phi1 = tau * (4.0 - L) / d1
    phi2 = 2.0 * tau * (4.0 + L) / d1
    phi3 = tau * (4.0 + L * (3.0 + L)) / d1
    fu = f(u, t)
    a = q13 * u + phi * fu
    fa = f(a, t + tau / 2)
    b = q13 * u + phi * fa
    fb = f(b, t + tau / 2)
    c = q13 * a + phi * (2 * fb - fu)
    fc = f(c, t + tau)
    return r13 * u + phi1 * fu + phi2 * (fa + fb) + phi3 * fc


def _debug_default():
    v = os.environ.get("FRACRD_DEBUG", "")
    return bool(v) and v != "0"


class StepperContext:
    """Everything needed to advance one model on one grid with a fixed step.

    Eigenvalue fields and coefficient arrays are shared between species with
    equal ``alpha`` (resp. equal ``(kappa, alpha)``).
    """

    def __init__(self, grid: Grid, model, tau: float, *, kernels=None,
                 check_stages: bool | None = None, workers: int | None = None,
                 reaction: Reaction | None = None):
        if not tau > 0:
            raise ValueError(f"time step must be positive, got {tau}")
        model.check_grid(grid)
        self.grid = grid
        self.model = model
        self.tau = float(tau)
        self.kernels = kernels or _kernels.backend
        self.check_stages = _debug_default() if check_stages is None else check_stages
        self.plan: TransformPlan = plan_transform(grid, workers)
        self.reaction: Reaction = reaction or model.reaction(grid)

        base = eigenvalue_field(grid)
        by_alpha: dict[float, EigenvalueField] = {}
        by_pair: dict[tuple, EtdCoefficients] = {}
        self.eigen: list[EigenvalueField] = []
        self.coefficients: list[EtdCoefficients] = []
        self._spectral: list[tuple[np.ndarray, ...]] = []
        spectral_cache: dict[tuple, tuple] = {}
        for kappa, alpha in zip(model.kappa, model.alpha):
            if alpha not in by_alpha:
                by_alpha[alpha] = base.with_alpha(alpha, relaxed=model.relaxed_alpha)
            ef = by_alpha[alpha]
            key = (float(kappa), float(alpha))
            if key not in by_pair:
                by_pair[key] = precompute_coefficients(ef, kappa, self.tau, self.kernels)
                spectral_cache[key] = tuple(self.plan.restrict(c) for c in by_pair[key].arrays())
            self.eigen.append(ef)
            self.coefficients.append(by_pair[key])
            self._spectral.append(spectral_cache[key])

    @property
    def n_species(self) -> int:
        return len(self.coefficients)

    def _react(self, arrays, t, stage, step):
        try:
            out = self.reaction(arrays, t)
        except DivergenceError as exc:
            raise DivergenceError(f"{exc} (stage {stage}, step {step})", stage=stage, step=step) from exc
        return out

    def _guard(self, arrays, stage, step):
        for s, a in enumerate(arrays):
            if not np.isfinite(a).all():
                raise DivergenceError(
                    f"non-finite values in species {self.model.species[s]!r} "
                    f"at stage {stage} of step {step}", stage=stage, step=step)

    def step(self, arrays: Sequence[np.ndarray], t: float, step_index: int = 0) -> list[np.ndarray]:
        """Advance raw species arrays from ``t`` to ``t + tau``."""
        F, Fi = self.plan.forward_raw, self.plan.inverse_raw
        k = self.kernels
        tau = self.tau
        S = self.n_species
        co = self._spectral

        uh = [F(u) for u in arrays]
        fu = self._react(arrays, t, "u", step_index)
        Ffu = [F(x) for x in fu]

        # spectrum of stage a is reused for stage c instead of re-transforming a
        ah = [k.combine2(co[s][1], uh[s], co[s][2], Ffu[s]) for s in range(S)]
        a = [Fi(x) for x in ah]
        if self.check_stages:
            self._guard(a, "a", step_index)
        fa = self._react(a, t + tau / 2, "a", step_index)

        b = [Fi(k.combine2(co[s][1], uh[s], co[s][2], F(fa[s]))) for s in range(S)]
        if self.check_stages:
            self._guard(b, "b", step_index)
        fb = self._react(b, t + tau / 2, "b", step_index)

        c = [Fi(k.combine2(co[s][1], ah[s], co[s][2], F(2.0 * fb[s] - fu[s]))) for s in range(S)]
        if self.check_stages:
            self._guard(c, "c", step_index)
        fc = self._react(c, t + tau, "c", step_index)

        out = []
        for s in range(S):
            r13, _, _, phi1, phi2, phi3 = co[s]
            spec = k.combine4(r13, uh[s], phi1, Ffu[s], phi2, F(fa[s] + fb[s]), phi3, F(fc[s]))
            out.append(Fi(spec))
        self._guard(out, "final", step_index)
        return out


def etdrk4_step(ctx: StepperContext, state: State, t: float, step_index: int = 0) -> State:
    if state.grid != ctx.grid or len(state) != ctx.n_species:
        raise ValueError("state does not match the stepper context")
    return State.from_arrays(ctx.grid, ctx.step(state.arrays, t, step_index))


def _steps_between(t0, t1, tau, what):
    n = (t1 - t0) / tau
    k = int(round(n))
    if abs(n - k) * tau > 1e-9 * tau:
        raise ValueError(f"{what} {t1} is not a multiple of tau={tau} from t0={t0}")
    return k


def integrate(ctx: StepperContext, state0: State, t0: float, T: float,
              snapshot_times: Sequence[float] | None = None,
              on_snapshot: Callable[[float, State], None] | None = None,
              keep: bool = True) -> list[tuple[float, State]]:
    """Step from ``t0`` to ``T`` and collect snapshots.

    Snapshot times must lie in ``[t0, T]`` on the step lattice ``t0 + k*tau``;
    this is checked before any stepping. With no snapshot times only the final
    state is returned. ``on_snapshot`` is called as each snapshot is reached;
    with ``keep=False`` snapshots are not accumulated in the returned list.
    """
    if T < t0:
        raise ValueError(f"final time {T} precedes start time {t0}")
    tau = ctx.tau
    M = _steps_between(t0, T, tau, "final time")
    times = [T] if snapshot_times is None else sorted(float(s) for s in snapshot_times)
    wanted = {}
    for s in times:
        if s < t0 - 1e-9 * tau or s > T + 1e-9 * tau:
            raise ValueError(f"snapshot time {s} outside [{t0}, {T}]")
        wanted[_steps_between(t0, s, tau, "snapshot time")] = s

    results: list[tuple[float, State]] = []

    def emit(k, arrays):
        st = State.from_arrays(ctx.grid, [a.copy() for a in arrays])
        if on_snapshot is not None:
            on_snapshot(wanted[k], st)
        if keep:
            results.append((wanted[k], st))

    arrays = [np.ascontiguousarray(a, dtype=np.float64) for a in state0.arrays]
    if 0 in wanted:
        emit(0, arrays)
    report = max(1, M // 10)
    for k in range(M):
        t = t0 + k * tau
        arrays = ctx.step(arrays, t, k)
        if k + 1 in wanted:
            emit(k + 1, arrays)
        if (k + 1) % report == 0:
            log.debug("step %d/%d  t=%.6g", k + 1, M, t0 + (k + 1) * tau)
    return results


def fit_order(taus: Sequence[float], errors: Sequence[float]) -> float:
    """Least-squares slope of ``log(error)`` against ``log(tau)``."""
    lt = np.log(np.asarray(taus, dtype=float))
    le = np.log(np.asarray(errors, dtype=float))
    slope, _ = np.polyfit(lt, le, 1)
    return float(slope)

