"""Decomposition of Ind_B^G(1) for GL3 over a local ring: cone combinatorics,
closed forms in q, and brute-force character-theoretic verification."""
from .closed_forms import (
    Poly,
    catalogue,
    constituents_of_class,
    f_poly,
    flag_identity_check,
    g_poly,
    irr_dimension,
    zeta_terms,
)
from .cone import ConePoint, equivalent, invariants, region
from .reports import Report
from .ring import make_ring

__version__ = "0.1.0"

__all__ = [
    "ConePoint",
    "Poly",
    "Report",
    "catalogue",
    "constituents_of_class",
    "equivalent",
    "f_poly",
    "flag_identity_check",
    "g_poly",
    "invariants",
    "irr_dimension",
    "make_ring",
    "region",
    "zeta_terms",
]
