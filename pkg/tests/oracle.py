"""Independent reference computations built on sympy.

Nothing here imports the Groebner engine or the series code of the package;
the only shared piece is the Polynomial container used to hand data over.
"""

import itertools
from fractions import Fraction

import sympy
from sympy import Poly, groebner, symbols

from jetlct.fields import PrimeField, Rationals


def sympy_options(field):
    if isinstance(field, Rationals):
        return {"domain": "QQ"}
    if isinstance(field, PrimeField):
        return {"modulus": field.p}
    raise TypeError(f"no sympy oracle for {field.describe()}")


def _coerce(c, field):
    if isinstance(field, PrimeField):
        return int(c) % field.p
    return Fraction(int(c.p), int(c.q)) if isinstance(c, sympy.Rational) else Fraction(c)


def to_sympy(poly, gens):
    """Sympy expression for a package polynomial over Q or F_p."""
    expr = 0
    for exp, c in poly.terms.items():
        coeff = sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sympy.Integer(c)
        mono = 1
        for g, e in zip(gens, exp):
            mono *= g**e
        expr += coeff * mono
    return expr


def term_dict(expr, gens, field):
    """``{exponent: coefficient}`` of a sympy expression, coefficients in package form."""
    if expr == 0:
        return {}
    P = Poly(expr, *gens, **sympy_options(field))
    out = {}
    for exp, c in P.terms():
        v = _coerce(c, field)
        if v:
            out[tuple(exp)] = v
    return out


def ring_symbols(ring):
    return symbols([n.replace("@", "_") for n in ring.names]) if ring.nvars else ()


def reduced_basis(polys, ring, order="grevlex"):
    """Monic reduced Groebner basis as a set of frozen term dicts."""
    gens = ring_symbols(ring)
    exprs = [to_sympy(p, gens) for p in polys if p]
    if not exprs:
        return set()
    G = groebner(exprs, *gens, order=order, **sympy_options(ring.field))
    out = set()
    for g in G.exprs:
        d = term_dict(g, gens, ring.field)
        lead = Poly(g, *gens, **sympy_options(ring.field)).monoms(order=order)[0]
        lc = d[tuple(lead)]
        if isinstance(ring.field, PrimeField):
            inv = pow(lc, -1, ring.field.p)
            d = {e: v * inv % ring.field.p for e, v in d.items()}
        else:
            d = {e: v / lc for e, v in d.items()}
        out.add(frozenset(d.items()))
    return out


def dimension(polys, ring, order="grevlex"):
    """Krull dimension from sympy's basis and a brute-force independent set."""
    gens = ring_symbols(ring)
    n = ring.nvars
    exprs = [to_sympy(p, gens) for p in polys if p]
    if not exprs:
        return n
    G = groebner(exprs, *gens, order=order, **sympy_options(ring.field))
    if any(g.is_number and g != 0 for g in G.exprs):
        return -1
    supports = []
    for g in G.exprs:
        lead = Poly(g, *gens, **sympy_options(ring.field)).monoms(order=order)[0]
        supports.append({i for i, e in enumerate(lead) if e})
    for k in range(n + 1):
        for hit in itertools.combinations(range(n), k):
            if all(s & set(hit) for s in supports):
                return n - k
    raise AssertionError("unreachable")


def jet_generators(poly, ring, m):
    """t-coefficients of ``f(sum_j a_{i,j} t^j)`` by plain sympy expansion.

    Returns a list over p of term dicts in the variable order a_{i,j} with j
    major, matching the package's jet ring.
    """
    n = ring.nvars
    t = sympy.Symbol("t")
    a = [[sympy.Symbol(f"a_{i}_{j}") for j in range(m + 1)] for i in range(n)]
    flat = [a[i][j] for j in range(m + 1) for i in range(n)]
    base = ring_symbols(ring)
    expr = to_sympy(poly, base)
    sub = {base[i]: sum(a[i][j] * t**j for j in range(m + 1)) for i in range(n)}
    full = sympy.expand(expr.subs(sub, simultaneous=True))
    out = []
    for p in range(m + 1):
        coeff = full.coeff(t, p) if p else full.subs(t, 0)
        out.append(term_dict(sympy.expand(coeff), flat, ring.field) if flat else {})
    return out
