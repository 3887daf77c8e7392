"""Joint space-time refinement studies on the manufactured-solution models."""
from __future__ import annotations

import time
from dataclasses import dataclass

from .etd import StepperContext, integrate
from .grid import convergence_order, max_norm_error
from .models import fisher1d, huxley2d

__all__ = ["ConvergenceRow", "run_manufactured", "convergence_table", "refinement_levels", "EXAMPLES"]

EXAMPLES = ("fisher1d", "huxley2d")


@dataclass(frozen=True)
class ConvergenceRow:
    h: float
    tau: float
    max_error: float
    order: float | None
    wall_seconds: float


def run_manufactured(model, N: int, tau: float, bc=None, T: float = 1.0, kernels=None) -> float:
    """Integrate ``model`` from its exact initial state to ``T`` and return the max-norm error."""
    grid = model.make_grid(N, bc)
    ctx = StepperContext(grid, model, tau, kernels=kernels)
    (_, final), = integrate(ctx, model.initial_state(grid), 0.0, T)
    return max_norm_error(final[0], model.exact_state(grid, T)[0])


def refinement_levels(example: str, levels: int, kappa: float):
    """``(N, tau)`` pairs: fisher1d starts at h = 1/8 with tau = h/(4 kappa),
    huxley2d at h = 1/10 with tau = h/10; both halve h and tau together."""
    if example == "fisher1d":
        return [(8 * 2**k, 1.0 / (8 * 2**k) / (4 * kappa)) for k in range(levels)]
    if example == "huxley2d":
        return [(10 * 2**k, 0.1 / (10 * 2**k)) for k in range(levels)]
    raise ValueError(f"unknown example {example!r}; choose from {', '.join(EXAMPLES)}")


def convergence_table(example: str, alpha: float, bc=None, levels: int = 4,
                      kappa: float | None = None, kernels=None) -> list[ConvergenceRow]:
    if levels < 1:
        raise ValueError(f"levels must be >= 1, got {levels}")
    if example == "fisher1d":
        kappa = 10.0 if kappa is None else kappa
        model = fisher1d(alpha=alpha, kappa=kappa)
    elif example == "huxley2d":
        kappa = 1.0 if kappa is None else kappa
        model = huxley2d(alpha=alpha, kappa=kappa, bc=bc or "neumann")
    else:
        raise ValueError(f"unknown example {example!r}; choose from {', '.join(EXAMPLES)}")
    rows: list[ConvergenceRow] = []
    for N, tau in refinement_levels(example, levels, kappa):
        start = time.perf_counter()
        err = run_manufactured(model, N, tau, bc, kernels=kernels)
        wall = time.perf_counter() - start
        order = convergence_order(rows[-1].max_error, err) if rows else None
        rows.append(ConvergenceRow(1.0 / N, tau, err, order, wall))
    return rows
