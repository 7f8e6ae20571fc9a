"""Exact reconstruction and checking of the virtual-fibration construction
for classic Montesinos links with equal odd denominators."""

from .tangle import (
    ApplicabilityReport,
    Case,
    LinkClass,
    MontesinosLink,
    TangleFraction,
    TangleParseError,
    component_count,
    format_montesinos,
    parse_montesinos,
    validate_theorem_hypotheses,
)
from .seifert import (
    CoverEulerData,
    Geometry,
    SeifertInvariants,
    classify_geometry,
    cover_euler_data,
    euler_number,
    orbifold_euler_char,
    seifert_invariants,
)
from .pipeline import Outcome, run

__version__ = "0.1.0"
