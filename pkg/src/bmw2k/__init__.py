"""Exact computations in the two-strand cyclotomic BMW algebra B_2^k."""

from .algebra import (
    Algebra,
    AlgebraElement,
    hecke_quotient_check,
    ideal_check,
    involution,
    multiply,
    one_element,
    reduce_word,
    structure_constants,
    verify_phi,
)
from .coeff import PrimeField, RationalFunctions, Rationals, domain_create
from .params import (
    ParamSet,
    admissibility_report,
    generic_admissible,
    random_admissible_finite_field,
    symbolic_derive_h,
)
from .repv import build_v, verify_v
from .repxi import build_xi, three_by_three_check, verify_xi
from .words import format_word, parse_word

__version__ = "0.1.0"
