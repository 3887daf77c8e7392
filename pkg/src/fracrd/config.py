"""Simulation config files.

A config is a sequence of ``[section]`` headers and ``key = value`` lines;
``#`` starts a comment and lists are whitespace separated. Keys that appear
before the first header belong to ``[simulation]``. Example::

    [simulation]
    model = gray_scott
    tau = 1
    T = 2000
    snapshots = 500 1000 2000

    [grid]
    N = 256

    [model]
    K = 0.055

Sections and keys:

simulation
    ``model`` (required), ``tau`` (required), ``T`` (required), ``t0`` (0),
    ``snapshots`` (defaults to ``T``), ``seed`` (reserved, unused by presets).
grid
    ``N`` (required), ``bc`` (model default), ``lower`` / ``upper`` (model domain).
model
    any keyword parameter of the preset builder except ``bc``.
species
    ``alpha`` and ``kappa``: one value for all species or one per species.
output
    ``dir`` (``out``), ``formats`` (subset of ``snapshot pgm ppm``; default ``snapshot``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError
from .grid import BoundaryCondition, Grid
from .models import ReactionModel, build_model, preset_defaults

__all__ = ["SimulationConfig", "parse_config", "load_config", "FORMATS"]

FORMATS = ("snapshot", "pgm", "ppm")

_KEYS = {
    "simulation": {"model", "tau", "T", "t0", "snapshots", "seed"},
    "grid": {"N", "bc", "lower", "upper"},
    "species": {"alpha", "kappa"},
    "output": {"dir", "formats"},
    "model": None,  # checked against the preset signature
}
_REQUIRED = (("simulation", "model"), ("simulation", "tau"), ("simulation", "T"), ("grid", "N"))


@dataclass
class SimulationConfig:
    model: ReactionModel
    model_params: dict
    N: int
    bc: BoundaryCondition
    bounds: tuple[float, float]
    tau: float
    T: float
    t0: float = 0.0
    snapshots: tuple[float, ...] = ()
    seed: int = 0
    out_dir: Path = Path("out")
    formats: tuple[str, ...] = ("snapshot",)
    lines: dict = field(default_factory=dict, repr=False)

    @property
    def model_name(self) -> str:
        return self.model.name

    @property
    def n_steps(self) -> int:
        return int(round((self.T - self.t0) / self.tau))

    def grid(self) -> Grid:
        return self.model.make_grid(self.N, self.bc, self.bounds)


def _tokenize(text: str):
    """Yield ``(section, key, value, line)``; syntax errors raise ConfigError."""
    section = "simulation"
    seen = set()
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigError(f"malformed section header {raw.strip()!r}", no)
            section = line[1:-1].strip().lower()
            if section not in _KEYS:
                raise ConfigError(f"unknown section [{section}]", no)
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", no)
        key, value = (s.strip() for s in line.split("=", 1))
        if not key:
            raise ConfigError("empty key", no)
        if not value:
            raise ConfigError(f"no value for {key!r}", no)
        if (section, key) in seen:
            raise ConfigError(f"duplicate key {key!r} in [{section}]", no)
        seen.add((section, key))
        yield section, key, value, no


def _float(value, key, line):
    try:
        x = float(value)
    except ValueError:
        raise ConfigError(f"{key} must be a number, got {value!r}", line) from None
    if not math.isfinite(x):
        raise ConfigError(f"{key} must be finite, got {value!r}", line)
    return x


def _int(value, key, line):
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"{key} must be an integer, got {value!r}", line) from None


def _floats(value, key, line):
    return [_float(v, key, line) for v in value.split()]


def _per_species(values, S, key, line):
    if len(values) == 1:
        return values * S
    if len(values) != S:
        raise ConfigError(f"{key} needs 1 or {S} values, got {len(values)}", line)
    return values


def _on_lattice(t, t0, tau):
    n = (t - t0) / tau
    return abs(n - round(n)) * tau <= 1e-9 * tau


def parse_config(text: str) -> SimulationConfig:
    raw: dict[tuple[str, str], tuple[str, int]] = {}
    for section, key, value, no in _tokenize(text):
        allowed = _KEYS[section]
        if allowed is not None and key not in allowed:
            raise ConfigError(f"unknown key {key!r} in [{section}]", no)
        raw[(section, key)] = (value, no)
    last = max((no for _, no in raw.values()), default=0)
    for sk in _REQUIRED:
        if sk not in raw:
            raise ConfigError(f"missing required key {sk[1]!r} in [{sk[0]}]", last)

    def get(section, key):
        return raw.get((section, key), (None, None))

    lines = {f"{s}.{k}": no for (s, k), (_, no) in raw.items()}

    name, no = get("simulation", "model")
    try:
        defaults = preset_defaults(name)
    except ValueError as exc:
        raise ConfigError(str(exc), no) from None

    params = {}
    for (section, key), (value, no) in raw.items():
        if section != "model":
            continue
        if key not in defaults or key == "bc":
            raise ConfigError(f"unknown parameter {key!r} for model {name}", no)
        params[key] = _float(value, key, no)

    bc_val, bc_no = get("grid", "bc")
    bc = None
    if bc_val is not None:
        try:
            bc = BoundaryCondition.parse(bc_val)
        except ValueError as exc:
            raise ConfigError(str(exc), bc_no) from None
        if "bc" in defaults:
            params["bc"] = bc
    try:
        model = build_model(name, **params)
    except ValueError as exc:
        line = max((lines.get(f"model.{k}", 0) for k in params if k != "bc"), default=0)
        raise ConfigError(str(exc), line or lines["simulation.model"]) from None
    if bc is None:
        bc = model.default_bc
    elif bc not in model.bcs:
        raise ConfigError(f"{name} does not support {bc.value} boundaries", bc_no)

    S = model.n_species
    alpha_val, alpha_no = get("species", "alpha")
    kappa_val, kappa_no = get("species", "kappa")
    alpha = kappa = None
    if alpha_val is not None:
        alpha = _per_species(_floats(alpha_val, "alpha", alpha_no), S, "alpha", alpha_no)
        lo = 0.0 if model.relaxed_alpha else 1.0
        for a in alpha:
            if not lo < a <= 2.0:
                raise ConfigError(f"alpha must lie in ({lo:g}, 2], got {a:g}", alpha_no)
    if kappa_val is not None:
        kappa = _per_species(_floats(kappa_val, "kappa", kappa_no), S, "kappa", kappa_no)
        for k in kappa:
            if k < 0:
                raise ConfigError(f"kappa must be >= 0, got {k:g}", kappa_no)
    if alpha is not None or kappa is not None:
        model = model.with_diffusion(kappa=kappa, alpha=alpha)

    N_val, N_no = get("grid", "N")
    N = _int(N_val, "N", N_no)
    if N < 4:
        raise ConfigError(f"N must be >= 4, got {N}", N_no)
    lo_val, lo_no = get("grid", "lower")
    hi_val, hi_no = get("grid", "upper")
    lower = model.bounds[0] if lo_val is None else _float(lo_val, "lower", lo_no)
    upper = model.bounds[1] if hi_val is None else _float(hi_val, "upper", hi_no)
    if not upper > lower:
        raise ConfigError(f"upper bound {upper} must exceed lower bound {lower}", hi_no or lo_no or N_no)

    tau_val, tau_no = get("simulation", "tau")
    tau = _float(tau_val, "tau", tau_no)
    if not tau > 0:
        raise ConfigError(f"tau must be > 0, got {tau:g}", tau_no)
    t0_val, t0_no = get("simulation", "t0")
    t0 = 0.0 if t0_val is None else _float(t0_val, "t0", t0_no)
    T_val, T_no = get("simulation", "T")
    T = _float(T_val, "T", T_no)
    if T < t0 or (T > t0 and T - t0 < tau * (1 - 1e-9)):
        raise ConfigError(f"T must equal t0 or be at least t0 + tau, got T={T:g}", T_no)
    if not _on_lattice(T, t0, tau):
        raise ConfigError(f"T={T:g} is not a multiple of tau={tau:g} from t0={t0:g}", T_no)

    snap_val, snap_no = get("simulation", "snapshots")
    if snap_val is None:
        snaps = (T,)
    else:
        snaps = tuple(sorted(_floats(snap_val, "snapshots", snap_no)))
        for s in snaps:
            if s < t0 or s > T:
                raise ConfigError(f"snapshot time {s:g} outside [{t0:g}, {T:g}]", snap_no)
            if not _on_lattice(s, t0, tau):
                raise ConfigError(f"snapshot time {s:g} is not a multiple of tau={tau:g}", snap_no)

    seed_val, seed_no = get("simulation", "seed")
    seed = 0 if seed_val is None else _int(seed_val, "seed", seed_no)

    dir_val, _ = get("output", "dir")
    fmt_val, fmt_no = get("output", "formats")
    formats = ("snapshot",) if fmt_val is None else tuple(fmt_val.split())
    for f in formats:
        if f not in FORMATS:
            raise ConfigError(f"unknown output format {f!r} (choose from {', '.join(FORMATS)})", fmt_no)
    if "ppm" in formats and S != 2:
        raise ConfigError("ppm composites need a two-species model", fmt_no)

    cfg = SimulationConfig(
        model=model, model_params={k: v for k, v in params.items() if k != "bc"}, N=N, bc=bc,
        bounds=(lower, upper), tau=tau, T=T, t0=t0, snapshots=snaps, seed=seed,
        out_dir=Path(dir_val or "out"), formats=formats, lines=lines,
    )
    try:
        cfg.grid()
    except ValueError as exc:
        raise ConfigError(str(exc), hi_no or lo_no or N_no) from None
    return cfg


def load_config(path) -> SimulationConfig:
    return parse_config(Path(path).read_text(encoding="utf-8"))
