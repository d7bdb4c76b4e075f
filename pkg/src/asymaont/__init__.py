"""Asymmetric all-or-nothing transforms over finite fields."""

from .aont_linear import (
    AontParams,
    LinearAont,
    VerificationReport,
    inverse_transform,
    transform,
    verify_linear_aont,
)
from .catalog import catalog_lookup, load_catalog
from .gf_core import FieldSpec, build_field, field_of_order
from .matrix_gf import MatrixGF

__version__ = "0.1.0"

__all__ = [
    "AontParams",
    "FieldSpec",
    "LinearAont",
    "MatrixGF",
    "VerificationReport",
    "build_field",
    "catalog_lookup",
    "field_of_order",
    "inverse_transform",
    "load_catalog",
    "transform",
    "verify_linear_aont",
]
