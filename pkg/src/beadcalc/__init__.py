"""Exact computations with uni-trivalent diagrams, beads and Vogel's algebra."""

from .beads import (
    BeadedDiagram,
    GBeadedForm,
    LaurentPoly,
    expand_multilinear,
    parse_laurent,
    phi,
    psi,
    push,
    push_normal_form,
    split_by_bead_degree,
    unphi,
)
from .canon import CanonicalForm, canonicalize, decode
from .diagram import HAIR, Diagram, validate
from .enumerate import enumerate_diagrams
from .errors import BeadcalcError, CapExceeded, ValidationError
from .hair import hair, kernel_check
from .linear import LinComb, RelationSpan
from .relations import ihx_relation, is_zero, quotient_basis, reduce_element
from .vogel import LambdaElement, antisymmetrize, builtin_t, builtin_x, insert, lambda_mult, unit

__version__ = "0.1.0"

__all__ = [
    "BeadcalcError",
    "BeadedDiagram",
    "CanonicalForm",
    "CapExceeded",
    "Diagram",
    "GBeadedForm",
    "HAIR",
    "LambdaElement",
    "LaurentPoly",
    "LinComb",
    "RelationSpan",
    "ValidationError",
    "antisymmetrize",
    "builtin_t",
    "builtin_x",
    "canonicalize",
    "decode",
    "enumerate_diagrams",
    "expand_multilinear",
    "hair",
    "ihx_relation",
    "insert",
    "is_zero",
    "kernel_check",
    "lambda_mult",
    "parse_laurent",
    "phi",
    "psi",
    "push",
    "push_normal_form",
    "quotient_basis",
    "reduce_element",
    "split_by_bead_degree",
    "unit",
    "unphi",
    "validate",
]
