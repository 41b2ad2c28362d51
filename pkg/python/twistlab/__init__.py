from .algebra import (
    BialgebraPresentation,
    LinearMap,
    TensorElement,
    base_field,
    tensor_bialgebra,
    validate_bialgebra,
    validate_morphism,
)
from .errors import TwistlabError, ValidationFailed
from .report import CheckResult, ValidationReport
from .scalar import FieldSpec, Scalar, scalar_parse, scalar_print
from .twist import (
    RMatrix,
    Twist,
    WeakRMatrix,
    check_quasitriangular,
    check_triangular,
    check_twist,
    check_weak_rmatrix,
    decompose_rmatrix,
    phi_decompose,
    twist_bialgebra,
    twist_rmatrix,
)
from .twtr import (
    GaugeTransformation,
    TriangularBialgebra,
    TwistedMorphism,
    check_gauge,
    check_twisted_morphism,
    compose,
    diagonal,
    gauge_equivalent,
    product,
)

__all__ = [
    "BialgebraPresentation",
    "CheckResult",
    "FieldSpec",
    "GaugeTransformation",
    "LinearMap",
    "RMatrix",
    "Scalar",
    "TensorElement",
    "TriangularBialgebra",
    "Twist",
    "TwistedMorphism",
    "TwistlabError",
    "ValidationFailed",
    "ValidationReport",
    "WeakRMatrix",
    "base_field",
    "check_gauge",
    "check_quasitriangular",
    "check_triangular",
    "check_twist",
    "check_twisted_morphism",
    "check_weak_rmatrix",
    "compose",
    "decompose_rmatrix",
    "diagonal",
    "gauge_equivalent",
    "phi_decompose",
    "product",
    "scalar_parse",
    "scalar_print",
    "tensor_bialgebra",
    "twist_bialgebra",
    "twist_rmatrix",
    "validate_bialgebra",
    "validate_morphism",
]
