"""Mod-p structure of the norm kernel V(E) of SK1 for elliptic curves over Q."""
from .assemble import ExactSequenceReport, assemble, render_report
from .corpus import CurveRecord, ScanSummary, analyze, bundled, parse_curve_file, scan
from .curves import WeierstrassModel, minimal_model
from .errors import (
    AssemblyInconsistency,
    CurveFileError,
    PrecisionError,
    ReductionTypeError,
    SingularCurveError,
)
from .galois import classify, coinvariant_dim, frobenius_screen
from .local_v import DimBound, dim_v_place
from .reduction import is_semistable, reduction_type
from .tate_q import LadicElement, tate_parameter

__version__ = "0.1.0"

__all__ = [
    "AssemblyInconsistency",
    "CurveFileError",
    "CurveRecord",
    "DimBound",
    "ExactSequenceReport",
    "LadicElement",
    "PrecisionError",
    "ReductionTypeError",
    "ScanSummary",
    "SingularCurveError",
    "WeierstrassModel",
    "analyze",
    "assemble",
    "bundled",
    "classify",
    "coinvariant_dim",
    "dim_v_place",
    "frobenius_screen",
    "is_semistable",
    "minimal_model",
    "parse_curve_file",
    "reduction_type",
    "render_report",
    "scan",
    "tate_parameter",
]
