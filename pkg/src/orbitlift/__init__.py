"""Exact constructions around lifts of nilpotent orbits through a dual pair."""

from .scalars import FIELD, AlgebraSpec, DElement, rat
from .dlinalg import DMatrix
from .hermitian import HermitianModule, adjoint, is_lie_algebra_element, kappa, lie_algebra_basis
from .tableaux import (
    TableauRow,
    YoungTableau,
    build_module,
    invariant_form,
    is_admissible,
    jordan_type,
    theta_lift_tableau,
)
from .sl2 import Sl2Triple, grade, weight_forms
from .dualpair import DualPair, MomentLift, build_moment_lift, moment, phi_T, stable_range_lift

__all__ = [
    "FIELD",
    "AlgebraSpec",
    "DElement",
    "rat",
    "DMatrix",
    "HermitianModule",
    "adjoint",
    "is_lie_algebra_element",
    "kappa",
    "lie_algebra_basis",
    "TableauRow",
    "YoungTableau",
    "build_module",
    "invariant_form",
    "is_admissible",
    "jordan_type",
    "theta_lift_tableau",
    "Sl2Triple",
    "grade",
    "weight_forms",
    "DualPair",
    "MomentLift",
    "build_moment_lift",
    "moment",
    "phi_T",
    "stable_range_lift",
]
