"""Finite quantale-enriched order theory.

Submodules: ``quantale`` (truth-value algebras), ``ocat`` (Omega-categories
and presheaves), ``olat`` (complete Omega-lattices), ``cd`` (complete
distributivity), ``structure`` (subalgebras, quotients, Raney-Buchi),
``girard`` (duality and free lattices), ``mining`` and ``cli``.
"""

from .cd import downarrow, is_cd
from .errors import OQLError, SizeBound
from .ocat import canonical_omega, check_category
from .olat import certify_complete, omega_lattice
from .quantale import builtin, classify, enumerate_quantales, verify_quantale
from .report import Report

__version__ = "0.1.0"

__all__ = [
    "OQLError", "Report", "SizeBound", "builtin", "canonical_omega", "certify_complete", "check_category",
    "classify", "downarrow", "enumerate_quantales", "is_cd", "omega_lattice", "verify_quantale",
]
