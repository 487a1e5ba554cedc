"""Exact computation and verification of generalized q-Dyson constant terms."""

__version__ = "0.1.0"

from .qseries import PoleError, QLaurent, QRat, eval_poly, interpolate, poch, qbinom
from .laurentx import MultiPoly, cyclic_shift, dyson_factors, dyson_product, windowed_product
from .symfunc import Alphabet, Letter, build_alphabet, e_r, h_lambda, h_r
from .dyson import (
    CTQuery,
    DistinctPartsPlan,
    RecursionStep,
    Report,
    Violation,
    admissible_sigmas,
    clear_caches,
    compositions_of,
    constant_term,
    cyclic_check,
    cyclic_suite,
    distinct_parts_closed_form,
    distinct_parts_plan,
    distinct_parts_suite,
    dominates,
    kadell_closed_form,
    kadell_suite,
    largest_part_suite,
    nonvanishing_queries,
    nonvanishing_scan,
    orthogonality_scan,
    partitions_of,
    qdyson_closed_form,
    qdyson_suite,
    reduce_first_part,
    reduce_largest_part,
    roots_check,
    roots_suite,
    shifted_reduction_suite,
    sort_desc,
    trim_zeros,
)

__all__ = [
    "__version__",
    "PoleError",
    "QLaurent",
    "QRat",
    "eval_poly",
    "interpolate",
    "poch",
    "qbinom",
    "MultiPoly",
    "cyclic_shift",
    "dyson_factors",
    "dyson_product",
    "windowed_product",
    "Alphabet",
    "Letter",
    "build_alphabet",
    "e_r",
    "h_lambda",
    "h_r",
    "CTQuery",
    "DistinctPartsPlan",
    "RecursionStep",
    "Report",
    "Violation",
    "admissible_sigmas",
    "clear_caches",
    "compositions_of",
    "constant_term",
    "cyclic_check",
    "cyclic_suite",
    "distinct_parts_closed_form",
    "distinct_parts_plan",
    "distinct_parts_suite",
    "dominates",
    "kadell_closed_form",
    "kadell_suite",
    "largest_part_suite",
    "nonvanishing_queries",
    "nonvanishing_scan",
    "orthogonality_scan",
    "partitions_of",
    "qdyson_closed_form",
    "qdyson_suite",
    "reduce_first_part",
    "reduce_largest_part",
    "roots_check",
    "roots_suite",
    "shifted_reduction_suite",
    "sort_desc",
    "trim_zeros",
]
