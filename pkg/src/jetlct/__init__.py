"""Jet schemes of affine ideals and log-canonical-threshold estimates.

Exact arithmetic over Q, F_p and F_p(s); a self-checking Buchberger engine
supplies the dimensions.
"""

from .errors import (
    FieldMismatchError,
    GroebnerVerificationError,
    IneligibleIdealError,
    InvariantViolation,
    JetLctError,
    ParseError,
    ResourceExhausted,
    RingMismatchError,
)
from .fields import FieldElement, PrimeField, RationalFunctionField, Rationals
from .groebner import (
    DegRevLex,
    DimensionResult,
    GroebnerBasis,
    Lex,
    Limits,
    MonomialOrder,
    WeightedDegRevLex,
    buchberger,
    krull_dimension,
    monomial_dimension,
    normal_form,
)
from .ideal import AffineIdeal
from .jets import (
    Arc,
    JetIdeal,
    OrderResult,
    contact_ideal,
    jet_fiber_origin,
    jet_ideal,
    ord_along_arc,
    ord_at_origin,
    restrict_to_hyperplane,
)
from .lct import (
    LctReport,
    LctRow,
    Mode,
    check_inversion_of_adjunction,
    check_multiplicity_bound,
    codim_jet,
    compare_mod_p,
    lct_estimate,
)
from .polynomial import Polynomial, PolyRing, TruncatedSeries, substitute_series

__version__ = "0.1.0"
