"""Hypothesis strategies for fields, polynomials and ideals."""

from fractions import Fraction

from hypothesis import strategies as st

from jetlct.fields import PrimeField, RationalFunctionField, Rationals
from jetlct.ideal import AffineIdeal
from jetlct.polynomial import PolyRing

NAMES = ("x", "y", "z", "w")
SMALL_PRIMES = (2, 3, 5, 7)

fields_q_fp = st.one_of(st.just(Rationals()), st.sampled_from(SMALL_PRIMES).map(PrimeField))
fields_all = st.one_of(
    fields_q_fp,
    st.sampled_from((2, 3)).map(RationalFunctionField),
)


@st.composite
def rational_functions(draw, field):
    p = field.p
    num = draw(st.lists(st.integers(0, p - 1), min_size=0, max_size=4))
    den = draw(st.lists(st.integers(0, p - 1), min_size=1, max_size=3))
    if not any(den):
        den = [1]
    return field.from_polys(tuple(num), tuple(den))


def coefficients(field):
    if isinstance(field, Rationals):
        return st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
    if isinstance(field, PrimeField):
        return st.integers(0, field.p - 1)
    return rational_functions(field)


@st.composite
def polynomials(draw, ring, max_degree=4, max_terms=4, zero_constant=False):
    terms = {}
    k = draw(st.integers(0, max_terms))
    for _ in range(k):
        exp = draw(st.lists(st.integers(0, max_degree), min_size=ring.nvars, max_size=ring.nvars))
        if sum(exp) > max_degree:
            continue
        if zero_constant and sum(exp) == 0:
            continue
        terms[tuple(exp)] = draw(coefficients(ring.field))
    return ring.from_dict(terms)


@st.composite
def rings(draw, fields=fields_q_fp, max_vars=3, min_vars=1):
    n = draw(st.integers(min_vars, max_vars))
    return PolyRing(NAMES[:n], draw(fields))


@st.composite
def ideals(draw, fields=fields_q_fp, max_vars=3, max_gens=2, max_degree=3, eligible=False, min_vars=1):
    ring = draw(rings(fields, max_vars, min_vars))
    gens = draw(st.lists(polynomials(ring, max_degree, 3, zero_constant=eligible), min_size=1, max_size=max_gens))
    gens = [g for g in gens if g]
    if not gens:
        gens = [ring.gen(0) ** draw(st.integers(1, max_degree))]
    return AffineIdeal(ring, gens)


@st.composite
def monomial_ideals(draw, max_vars=6, max_gens=5, max_exp=3):
    n = draw(st.integers(1, max_vars))
    ring = PolyRing([f"v{i}" for i in range(n)], Rationals())
    k = draw(st.integers(1, max_gens))
    gens = []
    for _ in range(k):
        exp = draw(st.lists(st.integers(0, max_exp), min_size=n, max_size=n))
        gens.append(ring.monomial(exp))
    return AffineIdeal(ring, gens)
