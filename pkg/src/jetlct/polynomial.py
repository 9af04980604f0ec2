"""Sparse multivariate polynomials and truncated power series in ``t``.

A polynomial is a map from exponent tuples to nonzero raw field values.
Terms are always emitted in descending degree-reverse-lexicographic order so
that printing and iteration are deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import RingMismatchError
from .fields import Field, FieldElement

Exponent = tuple[int, ...]


def degrevlex_key(exp: Exponent) -> tuple:
    return (sum(exp), tuple(-e for e in reversed(exp)))


class PolyRing:
    """Ordered variable names over a coefficient field (a variable context)."""

    __slots__ = ("names", "field", "_index", "_hash")

    def __init__(self, names: Iterable[str], field: Field):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for name in names:
            if not name or not _valid_name(name):
                raise ValueError(f"invalid variable name {name!r}")
            if getattr(field, "parameter", None) == name:
                raise ValueError(f"variable {name!r} clashes with the field parameter")
        self.names = names
        self.field = field
        self._index = {n: i for i, n in enumerate(names)}
        self._hash = hash((names, field))

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, PolyRing):
            return NotImplemented
        return self.names == other.names and self.field == other.field

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"PolyRing({list(self.names)}, {self.field.describe()})"

    def __reduce__(self):
        return (PolyRing, (self.names, self.field))

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.constant(self.field.one)

    def constant(self, c) -> Polynomial:
        if isinstance(c, FieldElement):
            if c.field != self.field:
                raise RingMismatchError("constant from a different field")
            c = c.value
        elif isinstance(c, (int, Fraction)):
            c = self.field.coerce(c)
        if self.field.is_zero(c):
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def gen(self, i: int | str) -> Polynomial:
        if isinstance(i, str):
            i = self.index(i)
        exp = [0] * self.nvars
        exp[i] = 1
        return Polynomial(self, {tuple(exp): self.field.one})

    def gens(self) -> tuple[Polynomial, ...]:
        return tuple(self.gen(i) for i in range(self.nvars))

    def monomial(self, exp: Sequence[int], coeff=None) -> Polynomial:
        exp = tuple(exp)
        if len(exp) != self.nvars or any(e < 0 for e in exp):
            raise ValueError(f"bad exponent vector {exp} for {self.nvars} variables")
        c = self.field.one if coeff is None else self.field.coerce(coeff) if not isinstance(coeff, FieldElement) else coeff.value
        return Polynomial(self, {exp: c} if not self.field.is_zero(c) else {})

    def from_dict(self, terms: Mapping[Exponent, object]) -> Polynomial:
        """Build a polynomial from exponent -> coefficient, normalising values."""
        out = {}
        f = self.field
        for exp, c in terms.items():
            exp = tuple(exp)
            if len(exp) != self.nvars or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent vector {exp} for {self.nvars} variables")
            if isinstance(c, FieldElement):
                if c.field != f:
                    raise RingMismatchError("coefficient from a different field")
                c = c.value
            elif not f.validate(c):
                c = f.coerce(c)
            if exp in out:
                c = f.add(out[exp], c)
            if f.is_zero(c):
                out.pop(exp, None)
            else:
                out[exp] = c
        return Polynomial(self, out)

    def parse(self, text: str) -> Polynomial:
        from .parsing import parse_polynomial

        return parse_polynomial(text, self)


def _valid_name(name: str) -> bool:
    head, sep, tail = name.partition("@")
    if not head.isidentifier():
        return False
    return not sep or tail.isdigit()


class Polynomial:
    """Immutable sparse polynomial; ``terms`` must not be mutated."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict[Exponent, object]):
        self.ring = ring
        self.terms = terms

    # -- structure -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def ordered_terms(self) -> list[tuple[Exponent, object]]:
        """Terms in descending degrevlex order."""
        return sorted(self.terms.items(), key=lambda kv: degrevlex_key(kv[0]), reverse=True)

    def __iter__(self) -> Iterator[tuple[Exponent, FieldElement]]:
        f = self.ring.field
        for exp, c in self.ordered_terms():
            yield exp, FieldElement(f, c)

    def coefficient(self, exp: Sequence[int]) -> FieldElement:
        f = self.ring.field
        return FieldElement(f, self.terms.get(tuple(exp), f.zero))

    def constant_term(self) -> FieldElement:
        return self.coefficient((0,) * self.ring.nvars)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def min_degree(self) -> int:
        """Lowest total degree of a term (the order at the origin)."""
        if not self.terms:
            raise ValueError("the zero polynomial has no lowest-degree term")
        return min(sum(e) for e in self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def support(self) -> set[int]:
        """Indices of variables occurring in some term."""
        out = set()
        for exp in self.terms:
            out.update(i for i, e in enumerate(exp) if e)
        return out

    def weighted_degrees(self, weights: Sequence[int]) -> set[int]:
        return {sum(w * e for w, e in zip(weights, exp)) for exp in self.terms}

    def is_weighted_homogeneous(self, weights: Sequence[int], degree: int | None = None) -> bool:
        degs = self.weighted_degrees(weights)
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return degree is None or degs == {degree}

    # -- arithmetic ------------------------------------------------------

    def _check(self, other: Polynomial) -> None:
        if other.ring is not self.ring and other.ring != self.ring:
            raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")

    def _lift(self, other) -> Polynomial | None:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, FieldElement)):
            return self.ring.constant(other)
        return None

    def __add__(self, other) -> Polynomial:
        other = self._lift(other)
        if other is None:
            return NotImplemented
        f = self.ring.field
        out = dict(self.terms)
        for exp, c in other.terms.items():
            if exp in out:
                v = f.add(out[exp], c)
                if f.is_zero(v):
                    del out[exp]
                else:
                    out[exp] = v
            else:
                out[exp] = c
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        f = self.ring.field
        return Polynomial(self.ring, {e: f.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other) -> Polynomial:
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> Polynomial:
        f = self.ring.field
        if isinstance(c, FieldElement):
            if c.field != f:
                raise RingMismatchError("scalar from a different field")
            c = c.value
        elif not f.validate(c):
            c = f.coerce(c)
        if f.is_zero(c):
            return self.ring.zero()
        return Polynomial(self.ring, {e: f.mul(v, c) for e, v in self.terms.items()})

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, (int, Fraction, FieldElement)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        f = self.ring.field
        mul, add, is_zero = f.mul, f.add, f.is_zero
        out: dict[Exponent, object] = {}
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                v = mul(ca, cb)
                if e in out:
                    v = add(out[e], v)
                out[e] = v
        return Polynomial(self.ring, {e: v for e, v in out.items() if not is_zero(v)})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction, FieldElement)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.terms.items())))

    # -- substitutions ---------------------------------------------------

    def set_zero(self, indices: Iterable[int]) -> Polynomial:
        """Substitute 0 for the given variables (ring unchanged)."""
        idx = tuple(indices)
        return Polynomial(self.ring, {e: c for e, c in self.terms.items() if not any(e[i] for i in idx)})

    def project(self, ring: PolyRing, keep: Sequence[int]) -> Polynomial:
        """Substitute 0 for every variable not in ``keep`` and move to ``ring``.

        ``keep[k]`` is the index in ``self.ring`` of variable ``k`` of ``ring``.
        """
        if ring.nvars != len(keep) or ring.field != self.ring.field:
            raise RingMismatchError("target ring does not match the kept variables")
        keepset = set(keep)
        drop = [i for i in range(self.ring.nvars) if i not in keepset]
        out = {}
        for e, c in self.terms.items():
            if any(e[i] for i in drop):
                continue
            out[tuple(e[i] for i in keep)] = c
        return Polynomial(ring, out)

    def embed(self, ring: PolyRing, positions: Sequence[int] | None = None) -> Polynomial:
        """Move into a ring with more variables.

        Variable ``i`` goes to index ``positions[i]`` of ``ring``; by default
        the variables form a prefix of the larger ring.
        """
        if ring.field != self.ring.field:
            raise RingMismatchError("cannot embed into a ring over another field")
        n = ring.nvars
        if positions is None:
            positions = range(self.ring.nvars)
            pad = (0,) * (n - self.ring.nvars)
            return Polynomial(ring, {e + pad: c for e, c in self.terms.items()})
        out = {}
        for e, c in self.terms.items():
            new = [0] * n
            for i, k in enumerate(positions):
                new[k] = e[i]
            out[tuple(new)] = c
        return Polynomial(ring, out)

    def map_field(self, ring: PolyRing, convert) -> Polynomial:
        """Apply a coefficient map (e.g. reduction mod p) into ``ring``."""
        if ring.nvars != self.ring.nvars:
            raise RingMismatchError("variable count differs")
        f = ring.field
        out = {}
        for e, c in self.terms.items():
            v = convert(c)
            if not f.is_zero(v):
                out[e] = v
        return Polynomial(ring, out)

    def __str__(self) -> str:
        from .parsing import format_polynomial

        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({self})"


class TruncatedSeries:
    """``sum_p coeffs[p] * t^p`` modulo ``t^(precision+1)``."""

    __slots__ = ("precision", "coeffs", "ring")

    def __init__(self, coeffs: Sequence[Polynomial], precision: int | None = None, ring: PolyRing | None = None):
        coeffs = list(coeffs)
        if precision is None:
            precision = len(coeffs) - 1
        if precision < 0:
            raise ValueError("precision must be nonnegative")
        if ring is None:
            if not coeffs:
                raise ValueError("cannot infer the coefficient ring of an empty series")
            ring = coeffs[0].ring
        for c in coeffs:
            if c.ring != ring:
                raise RingMismatchError("series coefficients from different rings")
        coeffs = coeffs[: precision + 1]
        coeffs += [ring.zero()] * (precision + 1 - len(coeffs))
        self.precision = precision
        self.coeffs = tuple(coeffs)
        self.ring = ring

    @classmethod
    def constant(cls, c: Polynomial, precision: int) -> TruncatedSeries:
        return cls([c], precision, c.ring)

    def _check(self, other: TruncatedSeries) -> None:
        if other.precision != self.precision:
            raise ValueError(f"precision mismatch: {self.precision} vs {other.precision}")
        if other.ring != self.ring:
            raise RingMismatchError("series over different coefficient rings")

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._check(other)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.precision, self.ring)

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._check(other)
        return TruncatedSeries([a - b for a, b in zip(self.coeffs, other.coeffs)], self.precision, self.ring)

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._check(other)
        m = self.precision
        a, b = self.coeffs, other.coeffs
        nz_a = [i for i in range(m + 1) if a[i]]
        nz_b = [j for j in range(m + 1) if b[j]]
        out = [self.ring.zero() for _ in range(m + 1)]
        for i in nz_a:
            for j in nz_b:
                if i + j > m:
                    break
                out[i + j] = out[i + j] + a[i] * b[j]
        return TruncatedSeries(out, m, self.ring)

    def truncate(self, j: int) -> TruncatedSeries:
        if j > self.precision:
            raise ValueError("cannot raise the precision of a truncated series")
        return TruncatedSeries(self.coeffs[: j + 1], j, self.ring)

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, ``None`` if all vanish."""
        for p, c in enumerate(self.coeffs):
            if c:
                return p
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.precision == other.precision and self.ring == other.ring and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"TruncatedSeries({[str(c) for c in self.coeffs]})"


def substitute_series(f: Polynomial, series: Sequence[TruncatedSeries]) -> TruncatedSeries:
    """Evaluate ``f(u_1, ..., u_n)`` in the truncated series ring.

    Uses a recursive Horner scheme in the variables of ``f`` so no multinomial
    expansion is ever formed.  The coefficient of ``t^p`` of the result is the
    jet polynomial ``g_p`` when ``u_i = sum_j a_{i,j} t^j``.
    """
    n = f.ring.nvars
    if len(series) != n:
        raise ValueError(f"expected {n} series, got {len(series)}")
    if n == 0:
        raise ValueError("cannot substitute into a polynomial ring with no variables")
    m = series[0].precision
    ring = series[0].ring
    for u in series[1:]:
        if u.precision != m or u.ring != ring:
            raise ValueError("all series must share one precision and coefficient ring")
    if ring.field != f.ring.field:
        raise RingMismatchError("series coefficients live over a different field")

    def horner(terms: list[tuple[Exponent, object]], k: int) -> TruncatedSeries:
        if k == n:
            c = terms[0][1] if terms else ring.field.zero
            return TruncatedSeries.constant(ring.constant(FieldElement(ring.field, c)), m)
        groups: dict[int, list] = {}
        for exp, c in terms:
            groups.setdefault(exp[k], []).append((exp, c))
        top = max(groups)
        acc = None
        for e in range(top, -1, -1):
            if acc is not None:
                acc = acc * series[k]
            if e in groups:
                part = horner(groups[e], k + 1)
                acc = part if acc is None else acc + part
        return acc

    if not f.terms:
        return TruncatedSeries([ring.zero()], m, ring)
    return horner(list(f.terms.items()), 0)
