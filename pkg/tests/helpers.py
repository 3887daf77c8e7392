"""Small model builders shared by the tests."""
import numpy as np

from fracrd.grid import BoundaryCondition
from fracrd.models import ReactionModel


def custom_model(f, dim=1, bc="periodic", alpha=2.0, kappa=1.0, bounds=(0.0, 1.0), species=("u",)):
    """Model with reaction ``f(arrays, t)`` and zero initial data."""
    S = len(species)
    kappa = kappa if isinstance(kappa, tuple) else (kappa,) * S
    alpha = alpha if isinstance(alpha, tuple) else (alpha,) * S
    return ReactionModel(
        name="custom", species=species, kappa=kappa, alpha=alpha, params={}, dim=dim,
        bounds=bounds, bcs=(BoundaryCondition.parse(bc),),
        reaction_factory=lambda m, g, k: f,
        initial_factory=lambda m, g: [np.zeros(g.shape) for _ in range(S)],
    )


def diffusion_model(**kw):
    return custom_model(lambda arrays, t: [np.zeros_like(a) for a in arrays], **kw)
