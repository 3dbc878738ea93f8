"""Z4-linear extended perfect codes: construction, invariants, classification."""

from .analysis import (
    ClassificationReport,
    binary_dual_basis,
    classify,
    code_rank,
    common_zero_coordinate,
    gf2_rank,
    is_linear_image,
    repetitive_dual_dimension,
)
from .codes import (
    QuaternaryCode,
    binary_image,
    code_from_check,
    dual_code,
    enumerate_codewords,
    family_code,
    halve_subcode,
    is_perfect,
    min_lee_weight,
    structural_distance_check,
)
from .errors import MalformedCheckMatrixError, NotPerfectError, ResourceCapError, Z4Error
from .structure import CanonicalForm, canonicalize, equivalent_via_canonical, product_code, row_col_sums
from .z4core import (
    BinaryWord,
    Z4Word,
    gray,
    gray_inverse,
    gray_sum_defect,
    is_repetitive,
    lee_distance,
    lee_weight,
    split_even_odd,
)
from .z4linalg import (
    CheckMatrix,
    GeneratorMatrix,
    build_check_matrix,
    column_split,
    howell_form,
    kernel_generators,
    matrices_equivalent,
)

__version__ = "0.1.0"
