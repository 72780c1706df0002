"""Exact numerical rings, characteristic classes and positive cones.

Grassmannians, products of Grassmannians and projective bundles over curves,
with pseudoeffective, nef, pliant and complete-intersection cones and the
Hodge-index obstruction.  All arithmetic is over the rationals.
"""

__version__ = "0.1.0"

from .cones import Inertia, PolyCone, dual, hull, inertia
from .errors import (
    CodimMismatch,
    ParseError,
    PosconesError,
    RingMismatch,
    SemanticError,
    Unsupported,
)
from .expr import evaluate_expr, parse
from .grassmannian import GrassmannRing, ProductRing, lr_coefficient, tautological_bundles
from .modelio import load_model, model_from_document
from .positivity import (
    VarietyModel,
    ci_cone,
    containment_report,
    eff_cone,
    grassmannian_model,
    hodge_obstruction,
    nef_cone,
    nef_cone_from_eff,
    plandflop_model,
    pliant_cone,
    product_model,
    projbundle_model,
)
from .projbundle import HNData, ProjBundleRing, nu
from .ring import NumericalRing, RingClass, degree, format_class, pairing_matrix
from .schur import Partition, dual_segre_series, jacobi_trudi, whitney_quotient

__all__ = [name for name in dir() if not name.startswith("_")]
