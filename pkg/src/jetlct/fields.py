"""Exact coefficient fields: the rationals, prime fields and F_p(s).

Each field object operates on *raw* values so that polynomial code can stay
cheap:

* ``Rationals``             -> :class:`fractions.Fraction`
* ``PrimeField(p)``         -> ``int`` in ``range(p)``
* ``RationalFunctionField`` -> :class:`RationalFunction`

:class:`FieldElement` wraps a raw value together with its field for the public
API and checks that both operands come from the same field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .errors import FieldMismatchError

PRIME_LIMIT = 2**31


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _check_prime(p: int) -> None:
    if not isinstance(p, int) or isinstance(p, bool):
        raise TypeError(f"characteristic must be an int, got {p!r}")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p >= PRIME_LIMIT:
        raise ValueError(f"prime {p} exceeds the supported bound 2^31")


# ---------------------------------------------------------------------------
# Dense univariate polynomials over F_p, stored low degree first with no
# trailing zeros.  The zero polynomial is the empty tuple.


def _ptrim(c: list[int]) -> tuple[int, ...]:
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def _padd(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, v in enumerate(b):
        out[i] = (out[i] + v) % p
    return _ptrim(out)


def _pneg(a: tuple[int, ...], p: int) -> tuple[int, ...]:
    return tuple((-v) % p for v in a)


def _pmul(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _ptrim([v % p for v in out])


def _pscale(a: tuple[int, ...], c: int, p: int) -> tuple[int, ...]:
    return _ptrim([(v * c) % p for v in a])


def _pdivmod(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    if len(rem) <= db:
        return (), tuple(rem)
    quo = [0] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k] % p
        if not c:
            continue
        c = (c * inv) % p
        quo[k - db] = c
        for i, v in enumerate(b):
            rem[k - db + i] = (rem[k - db + i] - c * v) % p
    return _ptrim(quo), _ptrim([v % p for v in rem[:db]])


def _pmonic(a: tuple[int, ...], p: int) -> tuple[int, ...]:
    if not a or a[-1] == 1:
        return a
    return _pscale(a, pow(a[-1], -1, p), p)


def _pgcd(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    return _pmonic(a, p)


class RationalFunction:
    """Element of F_p(s): a reduced fraction ``num/den`` with ``den`` monic."""

    __slots__ = ("num", "den", "p")

    def __init__(self, num: tuple[int, ...], den: tuple[int, ...], p: int, *, reduced: bool = False):
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not reduced:
            num = _ptrim([v % p for v in num])
            den = _ptrim([v % p for v in den])
            if not den:
                raise ZeroDivisionError("rational function with zero denominator")
            if not num:
                den = (1,)
            else:
                g = _pgcd(num, den, p)
                if g != (1,):
                    num = _pdivmod(num, g, p)[0]
                    den = _pdivmod(den, g, p)[0]
                lc = den[-1]
                if lc != 1:
                    inv = pow(lc, -1, p)
                    num = _pscale(num, inv, p)
                    den = _pscale(den, inv, p)
        self.num = num
        self.den = den
        self.p = p

    @classmethod
    def constant(cls, c: int, p: int) -> RationalFunction:
        c %= p
        return cls((c,) if c else (), (1,), p, reduced=True)

    def _check(self, other: Any) -> RationalFunction:
        if isinstance(other, int):
            return RationalFunction.constant(other, self.p)
        if not isinstance(other, RationalFunction) or other.p != self.p:
            raise FieldMismatchError("rational functions over different prime fields")
        return other

    def __add__(self, other: Any) -> RationalFunction:
        o = self._check(other)
        p = self.p
        if self.den == o.den:
            return RationalFunction(_padd(self.num, o.num, p), self.den, p)
        return RationalFunction(
            _padd(_pmul(self.num, o.den, p), _pmul(o.num, self.den, p), p),
            _pmul(self.den, o.den, p),
            p,
        )

    __radd__ = __add__

    def __neg__(self) -> RationalFunction:
        return RationalFunction(_pneg(self.num, self.p), self.den, self.p, reduced=True)

    def __sub__(self, other: Any) -> RationalFunction:
        return self + (-self._check(other))

    def __rsub__(self, other: Any) -> RationalFunction:
        return self._check(other) - self

    def __mul__(self, other: Any) -> RationalFunction:
        o = self._check(other)
        p = self.p
        if not self.num or not o.num:
            return RationalFunction.constant(0, p)
        if self.den == (1,) and o.den == (1,):
            return RationalFunction(_pmul(self.num, o.num, p), (1,), p, reduced=True)
        return RationalFunction(_pmul(self.num, o.num, p), _pmul(self.den, o.den, p), p)

    __rmul__ = __mul__

    def inverse(self) -> RationalFunction:
        if not self.num:
            raise ZeroDivisionError("division by zero in F_p(s)")
        return RationalFunction(self.den, self.num, self.p)

    def __truediv__(self, other: Any) -> RationalFunction:
        return self * self._check(other).inverse()

    def __rtruediv__(self, other: Any) -> RationalFunction:
        return self._check(other) * self.inverse()

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = RationalFunction.constant(other, self.p)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.p == other.p and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den, self.p))

    def __repr__(self) -> str:
        return f"RationalFunction({self.num}, {self.den}, p={self.p})"

    def __reduce__(self):
        return (_rebuild_rf, (self.num, self.den, self.p))


def _rebuild_rf(num, den, p):
    return RationalFunction(num, den, p, reduced=True)


def _format_upoly(c: tuple[int, ...], name: str) -> str:
    parts = []
    for k in range(len(c) - 1, -1, -1):
        v = c[k]
        if not v:
            continue
        if k == 0:
            parts.append(str(v))
        else:
            mono = name if k == 1 else f"{name}^{k}"
            parts.append(mono if v == 1 else f"{v}*{mono}")
    return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# Fields


class Field:
    """Common interface over raw coefficient values."""

    characteristic: int
    zero: Any
    one: Any

    def from_int(self, n: int) -> Any:
        raise NotImplementedError

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return not a

    def is_one(self, a) -> bool:
        return a == self.one

    def validate(self, a) -> bool:
        """True when ``a`` is a raw value of this field in canonical form."""
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    def needs_parens(self, a) -> bool:
        """Whether ``format(a)`` must be parenthesised when used as a factor."""
        return False

    def is_negative(self, a) -> bool:
        return False

    def element(self, a) -> FieldElement:
        return FieldElement(self, a)

    def describe(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class Rationals(Field):
    characteristic = 0

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def coerce(self, v) -> Fraction:
        return Fraction(v)

    def inv(self, a: Fraction) -> Fraction:
        if not a:
            raise ZeroDivisionError("division by zero in Q")
        return 1 / a

    def validate(self, a) -> bool:
        return isinstance(a, Fraction)

    def format(self, a: Fraction) -> str:
        return str(a)

    def is_negative(self, a: Fraction) -> bool:
        return a < 0

    def describe(self) -> str:
        return "Q"


@dataclass(frozen=True)
class PrimeField(Field):
    p: int

    def __post_init__(self):
        _check_prime(self.p)

    @property
    def characteristic(self) -> int:  # type: ignore[override]
        return self.p

    zero = 0
    one = 1

    def from_int(self, n: int) -> int:
        return n % self.p

    def coerce(self, v) -> int:
        if isinstance(v, Fraction):
            if v.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return v.numerator * pow(v.denominator, -1, self.p) % self.p
        return int(v) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return pow(a, -1, self.p)

    def validate(self, a) -> bool:
        return isinstance(a, int) and 0 <= a < self.p

    def format(self, a: int) -> str:
        return str(a)

    def describe(self) -> str:
        return f"Fp {self.p}"


@dataclass(frozen=True)
class RationalFunctionField(Field):
    """F_p(s) with a named transcendental parameter."""

    p: int
    parameter: str = "s"

    def __post_init__(self):
        _check_prime(self.p)
        if not self.parameter.isidentifier():
            raise ValueError(f"bad parameter name {self.parameter!r}")

    @property
    def characteristic(self) -> int:  # type: ignore[override]
        return self.p

    @property
    def zero(self) -> RationalFunction:
        return RationalFunction.constant(0, self.p)

    @property
    def one(self) -> RationalFunction:
        return RationalFunction.constant(1, self.p)

    def from_int(self, n: int) -> RationalFunction:
        return RationalFunction.constant(n, self.p)

    def coerce(self, v) -> RationalFunction:
        if isinstance(v, RationalFunction):
            if v.p != self.p:
                raise FieldMismatchError("rational function over a different prime")
            return v
        if isinstance(v, Fraction):
            return self.from_int(v.numerator) / self.from_int(v.denominator)
        return self.from_int(int(v))

    def gen(self) -> RationalFunction:
        """The parameter ``s`` itself."""
        return RationalFunction((0, 1), (1,), self.p, reduced=True)

    def from_polys(self, num, den=(1,)) -> RationalFunction:
        return RationalFunction(tuple(num), tuple(den), self.p)

    def inv(self, a: RationalFunction) -> RationalFunction:
        return a.inverse()

    def validate(self, a) -> bool:
        if not isinstance(a, RationalFunction) or a.p != self.p:
            return False
        return a == RationalFunction(a.num, a.den, a.p)

    def format(self, a: RationalFunction) -> str:
        num = _format_upoly(a.num, self.parameter)
        if a.den == (1,):
            return num
        den = _format_upoly(a.den, self.parameter)
        if len([v for v in a.num if v]) > 1:
            num = f"({num})"
        return f"{num}/({den})"

    def needs_parens(self, a: RationalFunction) -> bool:
        if a.den != (1,):
            return True
        return len([v for v in a.num if v]) > 1

    def describe(self) -> str:
        return f"Fps {self.p} {self.parameter}"


def field_from_description(text: str) -> Field:
    """Inverse of :meth:`Field.describe`: ``Q``, ``Fp 5`` or ``Fps 2 s``."""
    parts = text.split()
    if parts == ["Q"]:
        return Rationals()
    if len(parts) == 2 and parts[0] == "Fp":
        return PrimeField(int(parts[1]))
    if len(parts) in (2, 3) and parts[0] == "Fps":
        return RationalFunctionField(int(parts[1]), parts[2] if len(parts) == 3 else "s")
    raise ValueError(f"unknown field description {text!r}")


@dataclass(frozen=True, eq=False)
class FieldElement:
    """A value of one of the supported fields, always in canonical form."""

    field: Field
    value: Any

    def __post_init__(self):
        if not isinstance(self.field, Field):
            raise TypeError("field must be a Field instance")
        if not self.field.validate(self.value):
            object.__setattr__(self, "value", self.field.coerce(self.value))

    def _other(self, other) -> Any:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(
                    f"cannot combine elements of {self.field.describe()} and {other.field.describe()}"
                )
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.field.coerce(other)
        raise TypeError(f"unsupported operand {other!r}")

    def __add__(self, other) -> FieldElement:
        return FieldElement(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other) -> FieldElement:
        return FieldElement(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other) -> FieldElement:
        return FieldElement(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other) -> FieldElement:
        return FieldElement(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other) -> FieldElement:
        return FieldElement(self.field, self.field.div(self.value, self._other(other)))

    def __rtruediv__(self, other) -> FieldElement:
        return FieldElement(self.field, self.field.div(self._other(other), self.value))

    def __neg__(self) -> FieldElement:
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, k: int) -> FieldElement:
        base = self.value if k >= 0 else self.field.inv(self.value)
        k = abs(k)
        acc = self.field.one
        while k:
            if k & 1:
                acc = self.field.mul(acc, base)
            base = self.field.mul(base, base)
            k >>= 1
        return FieldElement(self.field, acc)

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == self.field.coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __str__(self) -> str:
        return self.field.format(self.value)

    def __repr__(self) -> str:
        return f"FieldElement({self.field.describe()}: {self})"
