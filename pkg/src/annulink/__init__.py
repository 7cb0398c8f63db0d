"""Exact Kauffman bracket and Jones polynomial for link diagrams in the solid torus."""

__version__ = "0.1.0"

from .diagram import (  # noqa: E402
    AnnularDiagram,
    cut_path,
    faces,
    is_alternating,
    mirror,
    orient,
    parse_diagram,
    serialize,
    validate,
    writhe,
)
from .poly import SkeinPolynomial  # noqa: E402
from .skein import bracket, evaluate_recursive, jones  # noqa: E402
from .crossings import classify_nugatory, is_dotted_reduced, nugatory_crossings  # noqa: E402

__all__ = [
    "AnnularDiagram",
    "SkeinPolynomial",
    "bracket",
    "classify_nugatory",
    "cut_path",
    "evaluate_recursive",
    "faces",
    "is_alternating",
    "is_dotted_reduced",
    "jones",
    "mirror",
    "nugatory_crossings",
    "orient",
    "parse_diagram",
    "serialize",
    "validate",
    "writhe",
]
