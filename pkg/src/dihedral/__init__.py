"""Dihedral branched-cover obstructions from Seifert matrices.

Everything runs in exact arithmetic. From a knot's Seifert matrix the
package computes the homology and linking form of the double branched
cover, enumerates the dihedral quotients of the knot group, decides
which of them extend over surfaces in the 4-ball, and evaluates the
xi signature invariant with its ribbon obstruction.
"""

from .errors import (
    CriterionInapplicableError,
    EnumerationCapError,
    EvenModulusError,
    MatrixParseError,
    NonSquareFreeError,
    SeifertMatrixError,
    SignatureIndeterminateError,
    StabilizationError,
)
from .exact import (
    IntMatrix,
    RatMatrix,
    ResidueQZ,
    SNFResult,
    det,
    four_squares,
    is_primitive,
    rational_inverse,
    scaled_inverse,
    snf,
)
from .seifert import (
    SeifertMatrix,
    SurfaceClass,
    ZeroFramedStabilization,
    connected_sum,
    knot_determinant,
    stabilize_zero_framed,
    symmetrize,
    twist_knot,
)
from .cover import (
    GroupElement,
    LinkingForm,
    TorsionGroup,
    double_cover_homology,
    evaluate_linking,
    linking_form,
    self_linking,
)
from .obstruction import (
    DEFAULT_ENUM_CAP,
    Character,
    CharKnotClass,
    ExtensionVerdict,
    QuotientClass,
    char_knot_to_character,
    characteristic_knot_classes,
    cyclic_criterion,
    enumerate_isotropic,
    is_characteristic_class,
    quotient_classes,
    seifert_criterion,
    surjective_characters,
    verdict,
    zero_framed_exists,
)
from .signatures import (
    RIBBON_CONSISTENT,
    RIBBON_OBSTRUCTED,
    SigmaWBound,
    XiValue,
    cover_signature,
    ribbon_test,
    tristram_levine,
    twist_xi3,
    xi_n,
)
from .report import (
    KnotRecord,
    Report,
    RowError,
    TwistRow,
    analyze,
    parse_matrix,
    render_matrix,
    render_report_text,
    render_twist_text,
    scan,
    twist_family,
)

__version__ = "0.1.0"

__all__ = [
    "Character",
    "CharKnotClass",
    "CriterionInapplicableError",
    "DEFAULT_ENUM_CAP",
    "EnumerationCapError",
    "EvenModulusError",
    "ExtensionVerdict",
    "GroupElement",
    "IntMatrix",
    "KnotRecord",
    "LinkingForm",
    "MatrixParseError",
    "NonSquareFreeError",
    "QuotientClass",
    "RatMatrix",
    "Report",
    "ResidueQZ",
    "RIBBON_CONSISTENT",
    "RIBBON_OBSTRUCTED",
    "RowError",
    "SeifertMatrix",
    "SeifertMatrixError",
    "SigmaWBound",
    "SignatureIndeterminateError",
    "SNFResult",
    "StabilizationError",
    "SurfaceClass",
    "TorsionGroup",
    "TwistRow",
    "XiValue",
    "ZeroFramedStabilization",
    "analyze",
    "char_knot_to_character",
    "characteristic_knot_classes",
    "connected_sum",
    "cover_signature",
    "cyclic_criterion",
    "det",
    "double_cover_homology",
    "enumerate_isotropic",
    "evaluate_linking",
    "four_squares",
    "is_characteristic_class",
    "is_primitive",
    "knot_determinant",
    "linking_form",
    "parse_matrix",
    "quotient_classes",
    "rational_inverse",
    "render_matrix",
    "render_report_text",
    "render_twist_text",
    "ribbon_test",
    "scaled_inverse",
    "scan",
    "seifert_criterion",
    "self_linking",
    "snf",
    "stabilize_zero_framed",
    "surjective_characters",
    "symmetrize",
    "tristram_levine",
    "twist_family",
    "twist_knot",
    "twist_xi3",
    "verdict",
    "xi_n",
    "zero_framed_exists",
]
