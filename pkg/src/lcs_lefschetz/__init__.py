"""Exact twisted cohomology and hard Lefschetz checks for left-invariant LCaK structures."""

from .exterior import ComplexFrame, Form, complexify, format_form, parse_form
from .family import build_family, reproduce_tables
from .invariant import InvariantModel, load_model, validate
from .lefschetz import (
    cohomology,
    harmonic_space,
    hlc_verdict,
    kahler_identity_suite,
    lefschetz_cohomology_map,
)
from .scalar import GaussianRational, parse_scalar

__version__ = "0.1.0"
