"""Exact computations with Frobenius closure, plus closure and separable
extensions over prime fields."""

__version__ = "0.1.0"

from .arith import FieldElement, PrimeModulus, binomial_exact, binomial_mod_p, is_prime
from .poly import GREVLEX, LEX, MonomialOrder, ParseError, Polynomial, Ring, VariableSet, format_poly, parse_poly
from .groebner import (
    GroebnerBasis,
    GroebnerResourceError,
    IdealPresentation,
    bracket_power,
    buchberger,
    colon_ideal,
    ideal_intersection,
    ideal_membership,
    normal_form,
)
from .frobenius import Found, FrobeniusCertificate, NotFoundUpTo, equational_criterion_check, frobenius_closure_test
from .separable import (
    ExtensionPresentation,
    FrobeniusWitness,
    build_extension,
    verify_separability,
    verify_symplectic_example,
    verify_u0_identity,
)
from .binomdet import BinomialMatrixSpec, DetComparison, build_binomial_matrix, check_identity, det_closed_form, det_exact
