"""Exact computations on finite subset spaces of simplicial sets."""

from .exp import BudgetExceeded, ExpBuild, build_exp, components, exp_induced, exp_inclusion
from .groups import Presentation, abelianization, certify_pi1, pi1_presentation, tietze_simplify
from .homology import betti_mod_p, boundary_matrix, homology, induced_zero_on_homology
from .models import build_model
from .simplicial import (
    SimplexRef,
    SimplicialError,
    SimplicialMap,
    SimplicialSet,
    apply_degeneracy,
    enumerate_level,
    normalize_face,
    validate,
)
from .snf import IntMatrix, smith_normal_form

__all__ = [
    "BudgetExceeded", "ExpBuild", "IntMatrix", "Presentation", "SimplexRef", "SimplicialError",
    "SimplicialMap", "SimplicialSet", "abelianization", "apply_degeneracy", "betti_mod_p",
    "boundary_matrix", "build_exp", "build_model", "certify_pi1", "components", "enumerate_level",
    "exp_induced", "exp_inclusion", "homology", "induced_zero_on_homology", "normalize_face",
    "pi1_presentation", "smith_normal_form", "tietze_simplify", "validate",
]
