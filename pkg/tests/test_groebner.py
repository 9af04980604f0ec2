import pickle

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jetlct.errors import ResourceExhausted, RingMismatchError
from jetlct.fields import PrimeField, RationalFunctionField, Rationals
from jetlct.groebner import (
    DegRevLex,
    Lex,
    Limits,
    MonomialOrder,
    WeightedDegRevLex,
    buchberger,
    krull_dimension,
    max_independent_set,
    monomial_dimension,
    normal_form,
)
from jetlct.ideal import AffineIdeal
from jetlct.jets import jet_fiber_origin, jet_ideal
from jetlct.polynomial import PolyRing

import oracle
from strategies import fields_q_fp, ideals, monomial_ideals, polynomials, rings

Q = Rationals()


def ideal(field, names, *gens):
    R = PolyRing(names, field)
    return AffineIdeal.from_strings(R, list(gens))


def basis_strings(G):
    return [str(g) for g in G]


def test_containment_collapses():
    assert basis_strings(buchberger(ideal(Q, "x", "x^2", "x"))) == ["x"]


def test_linear_over_q():
    assert sorted(basis_strings(buchberger(ideal(Q, ["x", "y"], "x + y", "x - y")))) == ["x", "y"]


def test_linear_over_f2():
    assert basis_strings(buchberger(ideal(PrimeField(2), ["x", "y"], "x + y", "x - y"))) == ["x + y"]


def test_normal_form_examples():
    I = ideal(Q, ["x", "y"], "x - y")
    G = buchberger(I)
    R = I.ring
    assert normal_form(R.parse("x^2"), G) == R.parse("y^2")
    assert normal_form(R.one(), G) == R.one()
    for g in I.generators:
        assert normal_form(g, G).is_zero()


def test_normal_form_ring_mismatch():
    G = buchberger(ideal(Q, ["x", "y"], "x - y"))
    with pytest.raises(RingMismatchError):
        normal_form(PolyRing(["u", "v"], Q).gen(0), G)


def test_unit_ideal_detected():
    G = buchberger(ideal(Q, ["x", "y"], "x*y - 1", "x"))
    assert G.is_unit
    assert krull_dimension(ideal(Q, ["x", "y"], "x*y - 1", "x")).dim == -1
    assert krull_dimension(ideal(Q, ["x", "y"], "x*y - 1", "x")).codim is None


def test_dimension_examples():
    d = krull_dimension(ideal(Q, ["a0", "a1", "a2"], "a0", "a1", "a2"))
    assert (d.dim, d.codim) == (0, 3)
    R = PolyRing(["a", "b", "c", "d"], Q)
    assert krull_dimension(AffineIdeal.zero(R)).dim == 4
    d = krull_dimension(ideal(Q, ["a0", "b0", "a1", "b1"], "a0*b0", "a0*b1 + a1*b0"))
    assert d.dim == 2


def test_dimension_witness_is_independent():
    I = ideal(Q, ["a0", "b0", "a1", "b1"], "a0*b0", "a0*b1 + a1*b0")
    d = krull_dimension(I)
    idx = {I.ring.index(v) for v in d.witness}
    for lm in d.basis.leading_monomials():
        assert not {i for i, e in enumerate(lm) if e} <= idx


def test_monomial_dimension_examples():
    assert monomial_dimension(ideal(Q, ["x", "y"], "x*y")).dim == 1
    assert monomial_dimension(ideal(Q, ["x", "y"], "x", "y")).dim == 0
    d = monomial_dimension(ideal(Q, ["x", "y", "z"], "x*y", "y*z"))
    assert d.dim == 2 and d.witness == ("x", "z")


def test_monomial_dimension_rejects_binomials():
    with pytest.raises(ValueError):
        monomial_dimension(ideal(Q, ["x", "y"], "x + y"))


def test_max_independent_set_small():
    # supports {0,1}, {1,2}: hit with {1}
    assert max_independent_set([0b011, 0b110], 3) == 0b101


@settings(max_examples=200)
@given(monomial_ideals(max_vars=6, max_gens=5, max_exp=3))
def test_krull_matches_monomial_oracle(I):
    a = krull_dimension(I)
    b = monomial_dimension(I)
    assert a.dim == b.dim


@settings(max_examples=60)
@given(ideals(fields_q_fp, max_vars=4, max_gens=3, max_degree=3))
def test_dimension_is_order_independent(I):
    a = krull_dimension(I, DegRevLex())
    b = krull_dimension(I, Lex())
    assert a.dim == b.dim


@settings(max_examples=60)
@given(ideals(fields_q_fp, max_vars=3, max_gens=3, max_degree=3))
def test_reduced_basis_matches_sympy_grevlex(I):
    G = buchberger(I)
    mine = {frozenset(g.terms.items()) for g in G}
    assert mine == oracle.reduced_basis(I.generators, I.ring, "grevlex")


@settings(max_examples=40)
@given(ideals(fields_q_fp, max_vars=3, max_gens=3, max_degree=3))
def test_reduced_basis_matches_sympy_lex(I):
    G = buchberger(I, Lex())
    mine = {frozenset(g.terms.items()) for g in G}
    assert mine == oracle.reduced_basis(I.generators, I.ring, "lex")


@settings(max_examples=60)
@given(ideals(fields_q_fp, max_vars=3, max_gens=3, max_degree=3))
def test_dimension_matches_sympy(I):
    assert krull_dimension(I).dim == oracle.dimension(I.generators, I.ring)


@settings(max_examples=60)
@given(ideals(fields_q_fp, max_vars=3, max_gens=3, max_degree=3))
def test_basis_is_reduced_and_contains_generators(I):
    G = buchberger(I, verify="full")
    lms = G.leading_monomials()
    for g in G:
        lc = g.terms[G.leading_monomial(g)]
        assert I.ring.field.is_one(lc)
    for k, g in enumerate(G):
        for exp in g.terms:
            for j, lm in enumerate(lms):
                if j != k:
                    assert not all(a >= b for a, b in zip(exp, lm))
    for f in I.generators:
        assert G.contains(f)


def test_rational_function_field_basis():
    R = PolyRing(["x", "y"], RationalFunctionField(3))
    I = AffineIdeal.from_strings(R, ["x^3 - s", "s*x*y - 1"])
    G = buchberger(I, verify="full")
    for f in I.generators:
        assert G.contains(f)
    assert krull_dimension(I).dim == 0


def test_deterministic_output():
    I = ideal(Q, ["x", "y", "z"], "x^2 + y*z - 1", "x*y - z^2", "y^3 - x")
    a = buchberger(I)
    b = buchberger(I)
    assert basis_strings(a) == basis_strings(b)
    shuffled = AffineIdeal(I.ring, list(reversed(I.generators)))
    assert basis_strings(buchberger(shuffled)) == basis_strings(a)


@settings(max_examples=40)
@given(st.data())
def test_weighted_homogeneous_inputs_give_homogeneous_bases(data):
    I = data.draw(ideals(fields_q_fp, max_vars=2, max_gens=1, max_degree=3, eligible=True))
    m = data.draw(st.integers(1, 3))
    F = jet_fiber_origin(jet_ideal(I, m))
    if F.is_zero_ideal:
        return
    for order in (DegRevLex(), WeightedDegRevLex(F.weights)):
        for g in buchberger(F, order):
            assert g.is_weighted_homogeneous(F.weights)


def test_weighted_order_allows_zero_weights():
    o = WeightedDegRevLex([0, 1])
    assert o.key((5, 0)) < o.key((0, 1))
    assert o.key((0, 0)) < o.key((1, 0))
    with pytest.raises(ValueError):
        WeightedDegRevLex([-1, 2])
    with pytest.raises(ValueError):
        MonomialOrder("lex", (1, 2))


def test_resource_limits():
    I = ideal(Q, ["x", "y", "z"], "x^5 + y^4 + z^3 - 1", "x^3 + y^3 + z^2 - 1", "x*y*z - 2")
    with pytest.raises(ResourceExhausted) as info:
        buchberger(I, limits=Limits(max_degree=4))
    assert "degree" in info.value.reason
    assert info.value.stats is not None
    with pytest.raises(ResourceExhausted):
        buchberger(I, limits=Limits(max_pairs=2))
    with pytest.raises(ValueError):
        Limits(time_limit=0)


def test_basis_pickles():
    G = buchberger(ideal(Q, ["x", "y"], "x^2 - y", "x*y - 1"))
    H = pickle.loads(pickle.dumps(G))
    assert H == G
    assert H.contains(PolyRing(["x", "y"], Q).parse("x^3 - 1"))


def test_verification_counts_pairs():
    G = buchberger(ideal(Q, ["x", "y", "z"], "x^2 - y*z", "y^2 - x*z", "z^2 - x*y"))
    assert G.stats.verified_pairs > 0
