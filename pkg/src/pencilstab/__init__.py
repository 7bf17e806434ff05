"""Stability of pencils of quadrics over k[t] localized at (t)."""

__version__ = "0.1.0"

from .ring import QQ, FieldSpec, LaurentScalar, val_t
from .pencil import (
    CoordinateChange,
    DependentPencil,
    Pencil,
    QuadraticForm,
    WeightSystem,
    act,
    mult,
    plucker,
    saturate,
    val_rho,
)
from .disc import disc_valuation, generic_fibre_smooth, pencil_determinant, pencil_discriminant
from .stability import (
    InternalInvariantViolation,
    NonSmoothGenericFibre,
    SearchBudget,
    Status,
    certificate_semistable,
    check_stability,
    destabilization_step,
    is_destabilizer,
    search_destabilizer,
    semistable_reduce,
)
from .diagnose import CentralFibre, contains_plane, diagnose_point, min_rank_in_pencil
