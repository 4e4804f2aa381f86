"""Exact arithmetic for the quaternionic locus of discriminant D in Igusa's threefold.

Submodules: ``arith`` (rationals, quadratic surds), ``quadforms`` (class numbers),
``quaternion`` (algebras, maximal orders, principal polarizations), ``polarization``
(Riemann forms, Rosati involution), ``locus`` (components), ``hm_families``
(genus-2 models) and ``cli``.
"""

from .arith import QuadExtVal, Rat
from .hm_families import HMCurve, curve, rational_points
from .locus import InadmissibleDiscriminant, LocusReport, analyze, is_irreducible, pi0, rho, tabulate, twisting_data
from .polarization import is_principal, riemann_form, rosati_positive
from .quadforms import QuadForm, class_number, h_tilde, reduced_forms
from .quaternion import OrderCatalog, QAlgebra, QOrder, Quat, find_mu, find_twists, hilbert_symbol, ramified_set

__all__ = [
    "HMCurve", "InadmissibleDiscriminant", "LocusReport", "OrderCatalog", "QAlgebra", "QOrder", "Quat",
    "QuadExtVal", "QuadForm", "Rat", "analyze", "class_number", "curve", "find_mu", "find_twists",
    "h_tilde", "hilbert_symbol", "is_irreducible", "is_principal", "pi0", "ramified_set", "rational_points",
    "reduced_forms", "rho", "riemann_form", "rosati_positive", "tabulate", "twisting_data",
]
