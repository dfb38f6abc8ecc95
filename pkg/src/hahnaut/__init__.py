"""Exact truncated Hahn series and their automorphisms."""
from .autalg import (
    AutNormalForm,
    BlackBoxAut,
    HomToUnits,
    apply_aut,
    compose_nf,
    decompose,
    invert_nf,
    twisted_product,
)
from .coeffs import FieldAut, FieldDescriptor, QuadraticElement
from .errors import HahnError
from .exponents import INF, Exponent, GroupDescriptor, LatticeKind, OrderAutMatrix
from .laurent import LaurentUnit, MoebiusMap, moebius_classify, schilling_xs, sigma_u_apply
from .parsing import format_series, parse_exponent, parse_series
from .puiseux import PuiseuxSeries, puiseux_apply_aut
from .rayner import FamilyPolicy, SupportDescriptor, family_check_axioms
from .series import Series
from .suites import run_suite, suite_names

__version__ = "0.1.0"

__all__ = [
    "AutNormalForm",
    "BlackBoxAut",
    "HomToUnits",
    "apply_aut",
    "compose_nf",
    "decompose",
    "invert_nf",
    "twisted_product",
    "FieldAut",
    "FieldDescriptor",
    "QuadraticElement",
    "HahnError",
    "INF",
    "Exponent",
    "GroupDescriptor",
    "LatticeKind",
    "OrderAutMatrix",
    "LaurentUnit",
    "MoebiusMap",
    "moebius_classify",
    "schilling_xs",
    "sigma_u_apply",
    "format_series",
    "parse_exponent",
    "parse_series",
    "PuiseuxSeries",
    "puiseux_apply_aut",
    "FamilyPolicy",
    "SupportDescriptor",
    "family_check_axioms",
    "Series",
    "run_suite",
    "suite_names",
]
