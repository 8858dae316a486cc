"""Exact-arithmetic toolkit for matrix-family data on projective schemes.

Builds the quadratic residual of a matrix datum, tests ideal membership, runs
the stability lattice, assembles the associated three-term complex, computes
its hypercohomology on projective space, and handles symmetry questions, all
over the rationals or a prime field.
"""

from .fields import QQ, PrimeField, parse_field_spec
from .variety import VarietySpec, PointOnY
from .adhm import AdhmDatum, random_datum
from .monad import build_monad, verify_complex, degeneration_info
from .stability import full_report
from .cohomology import HypercohomologyTable, classify
from .symmetry import act, find_equivalence, moduli_dimension_certificate

__version__ = "0.1.0"

__all__ = [
    "QQ", "PrimeField", "parse_field_spec",
    "VarietySpec", "PointOnY",
    "AdhmDatum", "random_datum",
    "build_monad", "verify_complex", "degeneration_info",
    "full_report",
    "HypercohomologyTable", "classify",
    "act", "find_equivalence", "moduli_dimension_certificate",
    "__version__",
]
