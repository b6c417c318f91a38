"""Construction and exhaustive verification of orthogonal arrays.

Builds strength-2, near-strength-3, exact strength-3, resolvable,
balanced sliced and nested orthogonal arrays over any prime-power number
of levels by composing small arrays with Kronecker-sum operators, and
verifies every claimed structural property by exhaustive enumeration.
"""

__version__ = "0.1.0"

from .gf import FieldSpec, field_new
from .array import Array, OAClass, VerificationReport, read_array, write_array
from .kron import ArrayStack, generalized_kronecker_sum, kronecker_sum, scalar_mul
from .project import Projection, make_coset_projection, make_truncation

__all__ = [
    "Array",
    "ArrayStack",
    "FieldSpec",
    "OAClass",
    "Projection",
    "VerificationReport",
    "__version__",
    "field_new",
    "generalized_kronecker_sum",
    "kronecker_sum",
    "make_coset_projection",
    "make_truncation",
    "read_array",
    "scalar_mul",
    "write_array",
]
