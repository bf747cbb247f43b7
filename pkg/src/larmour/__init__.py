"""Exact arithmetic for hermitian forms over quaternion algebras over k((t)).

The package decomposes diagonal eps-hermitian forms over a quaternion
division algebra with involution of the first kind into unit and
uniformizer parts, classifies the setting into one of ten cases, and
computes the two residue forms together with their canonical Witt classes
over the finite residue structures.  Every isometry used along the way
carries an explicit witness that can be re-verified.
"""

from .base_fields import (
    PrimeField,
    QuadExtField,
    QuadFormRes,
    RationalField,
    ResElem,
    WittClassQuadFinite,
    field_arith,
    is_isotropic_quad_finite,
    is_square,
    sqrt,
    witt_class_herm_quadext,
    witt_class_quad,
)
from .errors import (
    InputError,
    LarmourError,
    MathDomainError,
    PrecisionExhausted,
    PrecisionFailure,
    SplitAlgebra,
)
from .hermitian import (
    VERIFY_HALF_UNITS,
    HermitianForm,
    IsometryWitness,
    LarmourSplit,
    hensel_lift_isometry,
    larmour_decompose,
    normalize_values,
    scale_entry,
    simplify_ramified_entry,
    simplify_unramified_entry,
    validate_form,
)
from .involutions import (
    CaseRecord,
    InvolutionDesc,
    PresentationChange,
    apply_involution,
    classify_case,
    normalize_involution,
    sym_basis,
    symmetric_uniformizer,
)
from .quad_forms import (
    QuadFormK,
    is_anisotropic_quad_K,
    springer_boundary,
    springer_split,
)
from .quaternion import (
    HalfInt,
    QuatAlgebra,
    QuatElem,
    normalize_presentation,
    residue_D,
    valuation_D,
)
from .residue_maps import (
    BoundaryClass,
    HermRankClass,
    ResidueForm,
    ResidueTargetDesc,
    boundary,
    d0,
    d1,
    divergence_warnings,
    is_anisotropic_herm,
    residue_targets,
    witt_equal,
)
from .valued_field import (
    LaurentElem,
    LaurentField,
    SquareClassK,
    hensel_sqrt,
    is_square_K,
    parse_laurent,
    residue_K,
    square_class_K,
    valuation_K,
)

__version__ = "0.1.0"
