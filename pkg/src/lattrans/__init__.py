"""Transversals in Latin arrays: search, canonical forms, catalogues and bounds."""

from .core import (
    HOLE,
    ArrayFormatError,
    Entry,
    GridArray,
    classify_symbols,
    col_symbols,
    delete_row_col,
    embed_fresh,
    is_latin,
    is_row_latin,
    parse_array,
    parse_arrays,
    psi,
    render_array,
    row_symbols,
)
from .kernels import IMPLEMENTATION
from .transversal import (
    SearchStats,
    Transversal,
    count_transversals,
    has_transversal,
    max_partial_transversal,
    max_partial_within,
    near_transversal_avoiding,
    validate_transversal,
    woolbright_predicate,
)
from .trisotopy import CanonicalKey, are_trisotopic, brute_canonical, canonical_form, fingerprint

__version__ = "0.1.0"

__all__ = [
    "HOLE",
    "IMPLEMENTATION",
    "ArrayFormatError",
    "CanonicalKey",
    "Entry",
    "GridArray",
    "SearchStats",
    "Transversal",
    "are_trisotopic",
    "brute_canonical",
    "canonical_form",
    "classify_symbols",
    "col_symbols",
    "count_transversals",
    "delete_row_col",
    "embed_fresh",
    "fingerprint",
    "has_transversal",
    "is_latin",
    "is_row_latin",
    "max_partial_transversal",
    "max_partial_within",
    "near_transversal_avoiding",
    "parse_array",
    "parse_arrays",
    "psi",
    "render_array",
    "row_symbols",
    "validate_transversal",
    "woolbright_predicate",
]
