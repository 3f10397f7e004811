"""Exact construction of the small quasi-quantum group u_q^s(sl2) and its modules."""

from .cyclo import (
    FieldContext,
    Scalar,
    cyclotomic_polynomial,
    make_context,
    qint,
    scalar_from_str,
    scalar_to_str,
)
from .errors import (
    ConstructionError,
    ContextMismatchError,
    DivisionByZeroError,
    EigendataError,
    InvalidArgumentError,
    RepresentationError,
    UQSL2Error,
    UnsupportedParameterError,
)
from .k0ring import (
    K0Element,
    PresPoly,
    f_poly,
    k0_mul,
    k0_reports,
    k0_table,
    projective_class,
    simple_class,
    unit_class,
    upsilon,
)
from .moncat import (
    DecompositionResult,
    clebsch_gordan_table,
    decompose,
    decompose_standard_product,
    projective_simple_rule,
    simple_simple_rule,
    tensor,
    tensor_reports,
)
from .qgroup import AlgebraContext, AlgebraElement, algebra_context
from .quasihopf import QuasiHopfData, axiom_reports
from .report import CheckReport, ReportSet
from .reps import (
    Representation,
    all_labels,
    family_T,
    family_V,
    family_Vt,
    family_W,
    family_Wt,
    hom_space,
    iso_test,
    partner_label,
    projective,
    simple,
    verify_family_constructors,
    verify_structure_counts,
    verma,
)

__version__ = "0.1.0"

__all__ = [
    "FieldContext",
    "Scalar",
    "cyclotomic_polynomial",
    "make_context",
    "qint",
    "scalar_from_str",
    "scalar_to_str",
    "UQSL2Error",
    "UnsupportedParameterError",
    "InvalidArgumentError",
    "ContextMismatchError",
    "DivisionByZeroError",
    "ConstructionError",
    "EigendataError",
    "RepresentationError",
    "AlgebraContext",
    "AlgebraElement",
    "algebra_context",
    "QuasiHopfData",
    "axiom_reports",
    "CheckReport",
    "ReportSet",
    "Representation",
    "all_labels",
    "partner_label",
    "simple",
    "projective",
    "verma",
    "family_V",
    "family_Vt",
    "family_W",
    "family_Wt",
    "family_T",
    "hom_space",
    "iso_test",
    "verify_structure_counts",
    "verify_family_constructors",
    "tensor",
    "decompose",
    "decompose_standard_product",
    "simple_simple_rule",
    "projective_simple_rule",
    "clebsch_gordan_table",
    "tensor_reports",
    "DecompositionResult",
    "K0Element",
    "PresPoly",
    "simple_class",
    "projective_class",
    "unit_class",
    "k0_mul",
    "f_poly",
    "upsilon",
    "k0_table",
    "k0_reports",
    "__version__",
]
