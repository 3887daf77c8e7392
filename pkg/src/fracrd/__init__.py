"""Space-fractional reaction-diffusion solver.

Fourth-order compact differences with the matrix transfer technique in space,
ETDRK4-P13 in time, and fast transforms (FFT, DST-I, DCT-I) to diagonalise the
discrete Laplacian so every matrix function is elementwise arithmetic.
"""
from ._kernels import BACKEND
from .errors import ConfigError, DivergenceError, FracRDError, GridError, OracleError
from .etd import StepperContext, etdrk4_step, integrate, precompute_coefficients
from .grid import BoundaryCondition, Field, Grid, State, convergence_order, make_grid, max_norm_error
from .models import PRESETS, build_model
from .spectrum import EigenvalueField, eigenvalue_field, eigenvalues_1d, fractional_power
from .transforms import TransformPlan, plan_transform

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BoundaryCondition",
    "ConfigError",
    "DivergenceError",
    "EigenvalueField",
    "Field",
    "FracRDError",
    "Grid",
    "GridError",
    "OracleError",
    "PRESETS",
    "State",
    "StepperContext",
    "TransformPlan",
    "build_model",
    "convergence_order",
    "eigenvalue_field",
    "eigenvalues_1d",
    "etdrk4_step",
    "fractional_power",
    "integrate",
    "make_grid",
    "max_norm_error",
    "plan_transform",
    "precompute_coefficients",
]
