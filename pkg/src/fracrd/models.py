"""Reaction-diffusion model presets: reactions, parameters, initial data, exact solutions.

Every preset builder returns a :class:`ReactionModel`. Reactions are pointwise:
the value at a node depends only on the species values there (plus, for the
manufactured problems, the node coordinates and time).
"""
from __future__ import annotations

import inspect
from dataclasses import dataclass, field, replace
from typing import Callable, Mapping

import numpy as np

from . import _kernels
from .errors import DivergenceError, GridError
from .grid import BoundaryCondition, Grid, State, make_grid

__all__ = [
    "ReactionModel",
    "fisher1d",
    "huxley2d",
    "fitzhugh_nagumo",
    "gierer_meinhardt",
    "gray_scott",
    "schnakenberg3d",
    "PRESETS",
    "build_model",
    "preset_defaults",
]

PI = np.pi


@dataclass(frozen=True)
class ReactionModel:
    name: str
    species: tuple[str, ...]
    kappa: tuple[float, ...]
    alpha: tuple[float, ...]
    params: Mapping[str, float]
    dim: int
    bounds: tuple[float, float]
    bcs: tuple[BoundaryCondition, ...]
    reaction_factory: Callable = field(repr=False)
    initial_factory: Callable = field(repr=False)
    exact_factory: Callable | None = field(default=None, repr=False)
    fixed_domain: bool = False
    relaxed_alpha: bool = False

    def __post_init__(self):
        S = len(self.species)
        if len(self.kappa) != S or len(self.alpha) != S:
            raise ValueError(f"{self.name}: need one kappa and one alpha per species")
        lo = 0.0 if self.relaxed_alpha else 1.0
        for a in self.alpha:
            if not (lo < a <= 2.0):
                raise ValueError(f"{self.name}: alpha must lie in ({lo:g}, 2], got {a}")
        for k in self.kappa:
            if not k >= 0:
                raise ValueError(f"{self.name}: kappa must be >= 0, got {k}")

    @property
    def n_species(self) -> int:
        return len(self.species)

    @property
    def has_exact(self) -> bool:
        return self.exact_factory is not None

    @property
    def default_bc(self) -> BoundaryCondition:
        return self.bcs[0]

    def check_grid(self, grid: Grid) -> None:
        if grid.dim != self.dim:
            raise GridError(f"{self.name} is {self.dim}-D, grid is {grid.dim}-D")
        if grid.bc not in self.bcs:
            allowed = ", ".join(b.value for b in self.bcs)
            raise GridError(f"{self.name} does not support {grid.bc.value} boundaries (allowed: {allowed})")
        if self.fixed_domain:
            for lo, hi in zip(grid.lower, grid.upper):
                if not (np.isclose(lo, self.bounds[0]) and np.isclose(hi, self.bounds[1])):
                    raise GridError(f"{self.name} is defined on {self.bounds} in every direction")

    def make_grid(self, N: int, bc=None, bounds=None) -> Grid:
        grid = make_grid(self.dim, self.bounds if bounds is None else bounds, N,
                         self.default_bc if bc is None else bc)
        self.check_grid(grid)
        return grid

    def reaction(self, grid: Grid, kernels=None):
        """Return ``f(arrays, t) -> list of arrays`` bound to ``grid``."""
        self.check_grid(grid)
        return self.reaction_factory(self, grid, kernels or _kernels.backend)

    def initial_state(self, grid: Grid) -> State:
        self.check_grid(grid)
        return State.from_arrays(grid, self.initial_factory(self, grid))

    def exact_state(self, grid: Grid, t: float) -> State | None:
        if self.exact_factory is None:
            return None
        self.check_grid(grid)
        return State.from_arrays(grid, self.exact_factory(self, grid, t))

    def with_diffusion(self, kappa=None, alpha=None) -> "ReactionModel":
        """Copy with per-species ``kappa`` and/or ``alpha`` replaced."""
        changes = {}
        if kappa is not None:
            changes["kappa"] = tuple(float(k) for k in kappa)
        if alpha is not None:
            changes["alpha"] = tuple(float(a) for a in alpha)
        return replace(self, **changes)


def _bc_choice(bc, allowed, name):
    bc = BoundaryCondition.parse(bc)
    if bc not in allowed:
        raise GridError(f"{name} does not support {bc.value} boundaries")
    return bc


# Example 1 of the convergence study: fractional Fisher equation in 1-D.

def _fisher_reaction(model, grid, kernels):
    x = grid.coords(0)
    alpha, kappa = model.alpha[0], model.kappa[0]
    s = np.sin(2 * PI * x)
    s3 = s ** 3
    s6 = s3 * s3
    # kappa * (-Laplace)^{alpha/2} applied to sin^3(2 pi x) = (3 sin(2 pi x) - sin(6 pi x)) / 4
    frac = 0.25 * kappa * (3 * (2 * PI) ** alpha * s - (6 * PI) ** alpha * np.sin(6 * PI * x))

    def f(arrays, t):
        u = arrays[0]
        et = np.exp(-t)
        return [-2 * et * s3 + et * frac + et * et * s6 + u - u * u]

    return f


def _fisher_exact(model, grid, t):
    x = grid.coords(0)
    return [np.exp(-t) * np.sin(2 * PI * x) ** 3]


def fisher1d(alpha: float = 1.8, kappa: float = 10.0) -> ReactionModel:
    """Manufactured Fisher problem on [0, 1], Dirichlet, exact ``u = exp(-t) sin^3(2 pi x)``."""
    return ReactionModel(
        name="fisher1d", species=("u",), kappa=(float(kappa),), alpha=(float(alpha),),
        params={}, dim=1, bounds=(0.0, 1.0), bcs=(BoundaryCondition.DIRICHLET,),
        reaction_factory=_fisher_reaction,
        initial_factory=lambda m, g: _fisher_exact(m, g, 0.0),
        exact_factory=_fisher_exact, fixed_domain=True,
    )


# Example 2: fractional Huxley-type equation in 2-D with a manufactured source.

def _huxley_profile(grid):
    X, Y = grid.mesh()
    return np.cos(2 * PI * X) ** 3 * np.cos(2 * PI * Y) ** 3, X, Y


def _huxley_reaction(model, grid, kernels):
    alpha, kappa = model.alpha[0], model.kappa[0]
    c, X, Y = _huxley_profile(grid)
    c2x, c6x = np.cos(2 * PI * X), np.cos(6 * PI * X)
    c2y, c6y = np.cos(2 * PI * Y), np.cos(6 * PI * Y)
    p = alpha / 2
    Phi = (kappa / 16) * (9 * (8 * PI ** 2) ** p * c2x * c2y
                          + 3 * (40 * PI ** 2) ** p * c6x * c2y
                          + 3 * (40 * PI ** 2) ** p * c2x * c6y
                          + (72 * PI ** 2) ** p * c6x * c6y)

    def f(arrays, t):
        u = arrays[0]
        ta = t ** alpha
        w = ta * c
        src = alpha * t ** (alpha - 1) * c + ta * Phi - w * (1 - w) * (w - 1)
        return [u * (1 - u) * (u - 1) + src]

    return f


def _huxley_exact(model, grid, t):
    c, _, _ = _huxley_profile(grid)
    return [t ** model.alpha[0] * c]


def huxley2d(alpha: float = 2.0, kappa: float = 1.0, bc="neumann") -> ReactionModel:
    """Manufactured problem on [0, 1]^2 with exact ``u = t^alpha cos^3(2 pi x) cos^3(2 pi y)``.

    The reaction is ``u (1 - u) (u - 1)``; periodic and Neumann boundaries give
    the same discrete solution.
    """
    allowed = (BoundaryCondition.NEUMANN, BoundaryCondition.PERIODIC)
    bc = _bc_choice(bc, allowed, "huxley2d")
    return ReactionModel(
        name="huxley2d", species=("u",), kappa=(float(kappa),), alpha=(float(alpha),),
        params={}, dim=2, bounds=(0.0, 1.0),
        bcs=(bc,) + tuple(b for b in allowed if b is not bc),
        reaction_factory=_huxley_reaction,
        initial_factory=lambda m, g: [np.zeros(g.shape)],
        exact_factory=_huxley_exact, fixed_domain=True,
    )


def _two_species_kernel(kernel_name, *param_names):
    def factory(model, grid, kernels):
        fn = getattr(kernels, kernel_name)
        args = [model.params[p] for p in param_names]

        def f(arrays, t):
            u, v = arrays
            fu = np.empty(grid.shape)
            fv = np.empty(grid.shape)
            fn(u, v, *args, fu, fv)
            return [fu, fv]

        return f

    return factory


def _fhn_initial(model, grid):
    X, Y = grid.mesh()
    u = np.where((X > 0) & (X <= 0.125) & (Y > 0) & (Y < 0.125), 1.0, 0.0)
    v = np.where((X > 0) & (X < 2.5) & (Y >= 0.125) & (Y < 2.5), 0.1, 0.0)
    return [u, v]


def fitzhugh_nagumo(alpha: float = 2.0, kappa: float = 1e-4, bc="periodic", mu: float = 0.1,
                    eps: float = 0.01, beta: float = 0.5, gamma: float = 1.0,
                    delta: float = 0.0) -> ReactionModel:
    """FitzHugh-Nagumo on [0, 2.5]^2; only ``u`` diffuses.

    Initial data are indicator functions evaluated at the nodes with the
    inequalities exactly as stated; nodes outside both regions start at zero.
    """
    allowed = (BoundaryCondition.PERIODIC, BoundaryCondition.NEUMANN)
    bc = _bc_choice(bc, allowed, "fitzhugh_nagumo")
    params = dict(mu=mu, eps=eps, beta=beta, gamma=gamma, delta=delta)
    return ReactionModel(
        name="fitzhugh_nagumo", species=("u", "v"), kappa=(float(kappa), 0.0),
        alpha=(float(alpha), float(alpha)), params=params, dim=2, bounds=(0.0, 2.5),
        bcs=(bc,) + tuple(b for b in allowed if b is not bc),
        reaction_factory=_two_species_kernel("fitzhugh_nagumo", "mu", "eps", "beta", "gamma", "delta"),
        initial_factory=_fhn_initial,
    )


def _gm_reaction(model, grid, kernels):
    eps, mu = model.params["eps"], model.params["mu"]

    def f(arrays, t):
        u, v = arrays
        fu = np.empty(grid.shape)
        fv = np.empty(grid.shape)
        bad = kernels.gierer_meinhardt(u, v, eps, mu, fu, fv)
        if bad:
            raise DivergenceError(f"Gierer-Meinhardt inhibitor v <= 0 at {bad} node(s)")
        return [fu, fv]

    return f


def _gm_initial(model, grid):
    X, Y = grid.mesh()
    eps = model.params["eps"]
    r = np.sqrt(X * X + Y * Y)
    j = np.arange(1, 21)
    ripple = np.cos(0.5 * PI * Y[..., None] * j).sum(axis=-1)
    u = 0.5 * (1 + 0.001 * ripple) / np.cosh(r / (2 * eps)) ** 2
    v = np.cosh(1 - r) / (3 * np.cosh(1.0))
    return [u, v]


def gierer_meinhardt(alpha: float = 2.0, beta: float = 1.8, K: float = 0.0162,
                     eps: float = 0.04, mu: float = 0.1) -> ReactionModel:
    """Gierer-Meinhardt on [-1, 1]^2 with Neumann boundaries.

    ``u`` diffuses with order ``alpha`` and ``kappa_u = eps^2``; ``v`` with order
    ``beta`` and ``kappa_v = K / mu``. A non-positive ``v`` aborts the run.
    """
    params = dict(eps=eps, mu=mu, K=K)
    return ReactionModel(
        name="gierer_meinhardt", species=("u", "v"), kappa=(eps * eps, K / mu),
        alpha=(float(alpha), float(beta)), params=params, dim=2, bounds=(-1.0, 1.0),
        bcs=(BoundaryCondition.NEUMANN,),
        reaction_factory=_gm_reaction, initial_factory=_gm_initial,
    )


def _gs_initial(model, grid):
    X, Y = grid.mesh()
    inside = (X - 0.5) ** 2 + (Y - 0.5) ** 2 <= 0.0016
    return [np.where(inside, 0.5, 1.0), np.where(inside, 0.25, 0.0)]


def gray_scott(alpha: float = 2.0, F: float = 0.03, K: float = 0.055,
               kappa_u: float = 2e-5, kappa_v: float = 1e-5) -> ReactionModel:
    """Gray-Scott on the periodic unit square, seeded by a small disk at the centre."""
    return ReactionModel(
        name="gray_scott", species=("u", "v"), kappa=(kappa_u, kappa_v),
        alpha=(float(alpha), float(alpha)), params=dict(F=F, K=K), dim=2, bounds=(0.0, 1.0),
        bcs=(BoundaryCondition.PERIODIC,),
        reaction_factory=_two_species_kernel("gray_scott", "F", "K"),
        initial_factory=_gs_initial,
    )


def _sb_initial(model, grid):
    X, Y, Z = grid.mesh()
    c = model.params["l"] / 2
    u = 1 - np.exp(-10 * ((X - c) ** 2 + (Y - c) ** 2 + (Z - c) ** 2))
    v = np.exp(-10 * ((X - c) ** 2 + 2 * (Y - c) ** 2 + (Z - c) ** 2))
    return [u, v]


def schnakenberg3d(alpha: float = 2.0, l: float = 10.0, kappa_u: float = 1.0,  # noqa: E741
                   kappa_v: float = 10.0, gamma: float = 1.0, a: float = 0.1,
                   b: float = 0.9) -> ReactionModel:
    """Schnakenberg on the periodic cube (0, l)^3; steady state ``(a + b, b / (a + b)^2)``."""
    if not l > 0:
        raise ValueError(f"domain length must be positive, got {l}")
    return ReactionModel(
        name="schnakenberg3d", species=("u", "v"), kappa=(kappa_u, kappa_v),
        alpha=(float(alpha), float(alpha)), params=dict(l=l, gamma=gamma, a=a, b=b),
        dim=3, bounds=(0.0, float(l)), bcs=(BoundaryCondition.PERIODIC,),
        reaction_factory=_two_species_kernel("schnakenberg", "gamma", "a", "b"),
        initial_factory=_sb_initial,
    )


PRESETS = {
    "fisher1d": fisher1d,
    "huxley2d": huxley2d,
    "fitzhugh_nagumo": fitzhugh_nagumo,
    "gierer_meinhardt": gierer_meinhardt,
    "gray_scott": gray_scott,
    "schnakenberg3d": schnakenberg3d,
}


def preset_defaults(name: str) -> dict:
    """Keyword parameters (with defaults) accepted by the preset builder ``name``."""
    try:
        builder = PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown model {name!r}; choose from {', '.join(PRESETS)}") from None
    return {p.name: p.default for p in inspect.signature(builder).parameters.values()}


def build_model(name: str, **params) -> ReactionModel:
    defaults = preset_defaults(name)
    unknown = set(params) - set(defaults)
    if unknown:
        raise ValueError(f"{name} has no parameter(s) {', '.join(sorted(unknown))}")
    return PRESETS[name](**params)
