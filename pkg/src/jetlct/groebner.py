"""Reduced Groebner bases and Krull dimension.

The engine packs each exponent vector into one Python int, one bit field per
variable plus (for degree orders) top fields holding the total degree and,
above it, the weighted degree.
Packing is additive, so monomial multiplication is integer addition, and a
guard bit at the top of every field turns divisibility into two integer
operations.  Within a field's capacity the order key is also additive:

* lex: the packed int itself, first variable most significant;
* (weighted) degrevlex: ``P - 2*(P & low)``, i.e. weighted degree first, then
  total degree, then the reversed exponent vector compared the "smaller is
  bigger" way.  The total degree tie-break keeps this a well order when some
  weights are zero.

Coefficients are kept as raw field values: ints mod p, ``gmpy2.mpq`` (or
``Fraction``) for Q and :class:`RationalFunction` for F_p(s).  Elements are kept
monic, which normalises rational content at every step.
"""

from __future__ import annotations

import heapq
import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import GroebnerVerificationError, ResourceExhausted, RingMismatchError
from .fields import PrimeField, Rationals
from .ideal import AffineIdeal
from .polynomial import Polynomial, PolyRing

try:  # gmpy2 rationals are an order of magnitude faster than Fraction
    from gmpy2 import mpq as _mpq
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _mpq = None

_FIELD_BITS = 12
_WEIGHT_BITS = 28


@dataclass(frozen=True)
class MonomialOrder:
    kind: str
    weights: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex", "wdegrevlex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "wdegrevlex":
            if not self.weights or any(not isinstance(w, int) or w < 0 for w in self.weights):
                raise ValueError("weighted degrevlex needs nonnegative integer weights")
        elif self.weights is not None:
            raise ValueError(f"{self.kind} takes no weights")

    @classmethod
    def degrevlex(cls) -> MonomialOrder:
        return cls("degrevlex")

    @classmethod
    def lex(cls) -> MonomialOrder:
        return cls("lex")

    @classmethod
    def weighted(cls, weights: Sequence[int]) -> MonomialOrder:
        return cls("wdegrevlex", tuple(weights))

    def check_arity(self, nvars: int) -> None:
        if self.weights is not None and len(self.weights) != nvars:
            raise ValueError(f"order has {len(self.weights)} weights for {nvars} variables")

    def key(self, exp: Sequence[int]) -> tuple:
        """Sort key: a larger key means a larger monomial."""
        if self.kind == "lex":
            return tuple(exp)
        rev = tuple(-e for e in reversed(exp))
        if self.weights is None:
            return (sum(exp), rev)
        return (sum(a * b for a, b in zip(self.weights, exp)), sum(exp), rev)

    def __str__(self) -> str:
        if self.kind == "wdegrevlex":
            return f"wdegrevlex{list(self.weights)}"
        return self.kind


DegRevLex = MonomialOrder.degrevlex
Lex = MonomialOrder.lex
WeightedDegRevLex = MonomialOrder.weighted


@dataclass(frozen=True)
class Limits:
    max_degree: int = 40
    max_pairs: int = 10**6
    time_limit: float = 300.0

    def __post_init__(self):
        if self.max_degree <= 0 or self.max_pairs <= 0 or self.time_limit <= 0:
            raise ValueError("limits must be positive")


@dataclass
class GroebnerStats:
    spairs: int = 0
    zero_reductions: int = 0
    max_degree: int = 0
    elapsed: float = 0.0
    verified_pairs: int = 0


class _Packing:
    """Bit layout for one (order, variable count) combination."""

    def __init__(self, order: MonomialOrder, nvars: int):
        order.check_arity(nvars)
        self.order = order
        self.nvars = nvars
        F = _FIELD_BITS
        self.lex = order.kind == "lex"
        if self.lex:
            self.shifts = tuple(F * (nvars - 1 - i) for i in range(nvars))
            self.weights = None
            widths = [(s, F) for s in self.shifts]
        else:
            self.shifts = tuple(F * i for i in range(nvars))
            self.weights = order.weights
            self.dshift = F * nvars
            widths = [(s, F) for s in self.shifts] + [(self.dshift, _WEIGHT_BITS)]
            if self.weights is not None:
                self.wshift = self.dshift + _WEIGHT_BITS
                widths.append((self.wshift, _WEIGHT_BITS))
        self.low = (1 << (F * nvars)) - 1
        self.guard = sum(1 << (s + w - 1) for s, w in widths)
        self.fmask = (1 << F) - 1

    def pack(self, exp: Sequence[int]) -> int:
        P = 0
        for e, s in zip(exp, self.shifts):
            if e >= 1 << (_FIELD_BITS - 1):
                raise ResourceExhausted(f"exponent {e} exceeds the packed field capacity")
            P |= e << s
        if not self.lex:
            P |= sum(exp) << self.dshift
            if self.weights is not None:
                P |= sum(w * e for w, e in zip(self.weights, exp)) << self.wshift
        return P

    def unpack(self, P: int) -> tuple[int, ...]:
        m = self.fmask
        return tuple((P >> s) & m for s in self.shifts)

    def keyfunc(self):
        if self.lex:
            return lambda P: P
        low = self.low
        return lambda P: P - 2 * (P & low)

    def divides(self, a: int, b: int) -> bool:
        G = self.guard
        return ((b | G) - a) & G == G

    def lcm(self, a: int, b: int) -> int:
        return self.pack(tuple(map(max, self.unpack(a), self.unpack(b))))

    def degree(self, P: int) -> int:
        if self.lex:
            return sum(self.unpack(P))
        return (P >> self.dshift) & ((1 << _WEIGHT_BITS) - 1)


class _Coefficients:
    """Raw-coefficient conversion between a Field and the engine."""

    def __init__(self, fieldobj):
        self.field = fieldobj
        self.modulus = fieldobj.p if isinstance(fieldobj, PrimeField) else 0
        self.use_mpq = isinstance(fieldobj, Rationals) and _mpq is not None

    def inward(self, c):
        if self.use_mpq:
            return _mpq(c.numerator, c.denominator)
        return c

    def outward(self, c):
        if self.use_mpq:
            return Fraction(int(c.numerator), int(c.denominator))
        return c

    def inv(self, c):
        if self.modulus:
            return pow(c, -1, self.modulus)
        return 1 / c

    def scale(self, terms, c):
        p = self.modulus
        if p:
            return [(P, v * c % p) for P, v in terms]
        return [(P, v * c) for P, v in terms]


def _normal_form(h: dict, reducers: list, guard: int, negkey, p: int, check_overflow: bool = True) -> list:
    """Fully reduce the polynomial ``h`` (packed monomial -> coefficient).

    ``reducers`` holds ``(lm, tail)`` pairs of monic polynomials.  ``h`` is
    consumed.  Returns the remainder as a list of terms in descending order.
    """
    heap = [(negkey(P), P) for P in h]
    heapq.heapify(heap)
    pop, push = heapq.heappop, heapq.heappush
    rem = []
    G = guard
    while heap:
        P = pop(heap)[1]
        c = h.pop(P, None)
        if c is None:
            continue
        PG = P | G
        for lm, tail in reducers:
            if (PG - lm) & G == G:
                break
        else:
            rem.append((P, c))
            continue
        shift = P - lm
        if p:
            for Pt, ct in tail:
                Q = Pt + shift
                v = h.get(Q)
                if v is None:
                    if check_overflow and Q & G:
                        raise ResourceExhausted("exponent overflow in packed monomial")
                    h[Q] = (-c * ct) % p
                    push(heap, (negkey(Q), Q))
                else:
                    v = (v - c * ct) % p
                    if v:
                        h[Q] = v
                    else:
                        del h[Q]
        else:
            for Pt, ct in tail:
                Q = Pt + shift
                v = h.get(Q)
                if v is None:
                    if check_overflow and Q & G:
                        raise ResourceExhausted("exponent overflow in packed monomial")
                    h[Q] = -(c * ct)
                    push(heap, (negkey(Q), Q))
                else:
                    v = v - c * ct
                    if v:
                        h[Q] = v
                    else:
                        del h[Q]
    return rem


def _spoly(a: tuple, b: tuple, L: int, p: int) -> dict:
    lma, ta = a
    lmb, tb = b
    sa = L - lma
    sb = L - lmb
    h = {Pt + sa: ct for Pt, ct in ta}
    for Pt, ct in tb:
        Q = Pt + sb
        v = h.get(Q)
        if v is None:
            h[Q] = (-ct) % p if p else -ct
        else:
            v = (v - ct) % p if p else v - ct
            if v:
                h[Q] = v
            else:
                del h[Q]
    return h


class GroebnerBasis:
    """A reduced Groebner basis: monic elements sorted by increasing leading monomial."""

    def __init__(self, ring: PolyRing, order: MonomialOrder, elements: Sequence[Polynomial], stats: GroebnerStats,
                 _packed=None):
        self.ring = ring
        self.order = order
        self.elements = tuple(elements)
        self.stats = stats
        self._packed = _packed

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def _engine(self):
        if self._packed is None:
            pk = _Packing(self.order, self.ring.nvars)
            co = _Coefficients(self.ring.field)
            red = [_to_engine(g, pk, co) for g in self.elements]
            self._packed = (pk, co, [(t[0][0], t[1:]) for t in red])
        return self._packed

    def leading_monomial(self, g: Polynomial) -> tuple[int, ...]:
        return max(g.terms, key=self.order.key)

    def leading_monomials(self) -> list[tuple[int, ...]]:
        return [self.leading_monomial(g) for g in self.elements]

    @property
    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant()

    def normal_form(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self)

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self).is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return self.ring == other.ring and self.order == other.order and self.elements == other.elements

    def __repr__(self) -> str:
        return f"GroebnerBasis([{', '.join(str(g) for g in self.elements)}], {self.order})"

    def __getstate__(self):
        return {"ring": self.ring, "order": self.order, "elements": self.elements, "stats": self.stats,
                "_packed": None}

    def __setstate__(self, state):
        self.__dict__.update(state)


def _to_engine(f: Polynomial, pk: _Packing, co: _Coefficients) -> list:
    key = pk.keyfunc()
    terms = [(pk.pack(e), co.inward(c)) for e, c in f.terms.items()]
    terms.sort(key=lambda t: key(t[0]), reverse=True)
    return terms


def _from_engine(terms: list, ring: PolyRing, pk: _Packing, co: _Coefficients) -> Polynomial:
    return Polynomial(ring, {pk.unpack(P): co.outward(c) for P, c in terms})


def _monic(terms: list, co: _Coefficients) -> list:
    lc = terms[0][1]
    if lc == 1:
        return terms
    return co.scale(terms, co.inv(lc))


def _generators(I) -> tuple[PolyRing, list[Polynomial]]:
    if isinstance(I, AffineIdeal):
        return I.ring, list(I.nonzero_generators)
    polys = list(I)
    if not polys:
        raise ValueError("cannot infer the ring of an empty generator list")
    ring = polys[0].ring
    for g in polys:
        if g.ring != ring:
            raise RingMismatchError("generators from different rings")
    return ring, [g for g in polys if g]


class _PairSet:
    """Critical pairs under the Gebauer-Moeller installation criteria.

    Pairs are served by the sugar strategy: smallest sugar first, then
    smallest lcm.  For homogeneous input this is the normal strategy.
    """

    def __init__(self, pk: _Packing):
        self.pk = pk
        self.key = pk.keyfunc()
        self.lms: list[int] = []
        self.sugar: list[int] = []
        self.exps: list[tuple[int, ...]] = []
        self.live: list[int] = []
        self.pairs: dict[tuple[int, int], int] = {}
        self.heap: list[tuple[int, int, int]] = []

    def pair_sugar(self, i: int, j: int, L: int) -> int:
        deg = self.pk.degree
        dL = deg(L)
        return max(self.sugar[i] + dL - deg(self.lms[i]), self.sugar[j] + dL - deg(self.lms[j]))

    def insert(self, lm: int, sugar: int | None = None) -> int:
        pk = self.pk
        h = len(self.lms)
        self.lms.append(lm)
        self.sugar.append(pk.degree(lm) if sugar is None else sugar)
        eh = pk.unpack(lm)
        self.exps.append(eh)
        exps = self.exps

        def lcm_with(i):
            return pk.pack(tuple(map(max, eh, exps[i])))

        cands = [(i, lcm_with(i)) for i in self.live]
        keep = []
        for idx, (i, L) in enumerate(cands):
            if L == lm + self.lms[i]:
                keep.append((i, L, True))
                continue
            dominated = False
            for jdx, (j, Lj) in enumerate(cands):
                if jdx != idx and (Lj == L and jdx < idx or Lj != L and pk.divides(Lj, L)):
                    dominated = True
                    break
            if not dominated:
                keep.append((i, L, False))
        coprime_lcms = {L for _, L, cp in keep if cp}
        for (i, j), L in list(self.pairs.items()):
            if pk.divides(lm, L) and lcm_with(i) != L and lcm_with(j) != L:
                del self.pairs[(i, j)]
        for i, L, cp in keep:
            if not cp and L not in coprime_lcms:
                self.pairs[(i, h)] = L
                heapq.heappush(self.heap, (self.pair_sugar(i, h, L), self.key(L), i, h))
        self.live = [i for i in self.live if not pk.divides(lm, self.lms[i])] + [h]
        return h

    def pop(self) -> tuple[int, int, int] | None:
        """Next pair ``(i, j, lcm)``."""
        while self.heap:
            _, _, i, j = heapq.heappop(self.heap)
            L = self.pairs.pop((i, j), None)
            if L is not None:
                return i, j, L
        return None


def buchberger(I, order: MonomialOrder | None = None, limits: Limits | None = None, *,
               verify: bool | str = True) -> GroebnerBasis:
    """Reduced Groebner basis of ``I`` (an AffineIdeal or a list of polynomials).

    Pairs are chosen by the sugar strategy (the normal strategy on the
    homogenised problem; ties broken by lcm, then index) and pruned with the
    Gebauer-Moeller criteria.  With ``verify`` the
    result is checked before it is returned: input generators must reduce to
    zero and so must the S-polynomials of the output that survive the same
    criteria (``verify="full"`` checks every non-coprime pair instead).
    """
    ring, gens = _generators(I)
    order = order or DegRevLex()
    limits = limits or Limits()
    stats = GroebnerStats()
    start = time.perf_counter()
    pk = _Packing(order, ring.nvars)
    co = _Coefficients(ring.field)
    p = co.modulus
    key = pk.keyfunc()
    negkey = _negkey(pk)
    G = pk.guard

    if not gens:
        stats.elapsed = time.perf_counter() - start
        return GroebnerBasis(ring, order, [], stats)

    inputs = [_monic(_to_engine(g, pk, co), co) for g in gens]
    if any(t[0][0] == 0 for t in inputs):
        return _unit_basis(ring, order, stats, start)
    inputs.sort(key=lambda t: key(t[0][0]))

    basis: list[tuple[int, list]] = []   # every element ever added, as (lm, tail)
    pairs = _PairSet(pk)

    def add(terms: list, sugar: int) -> bool:
        if terms[0][0] == 0:
            return True
        basis.append((terms[0][0], terms[1:]))
        pairs.insert(terms[0][0], sugar)
        return False

    for terms in inputs:
        sugar = max(pk.degree(P) for P, _ in terms)
        terms = _normal_form(dict(terms), [basis[i] for i in pairs.live], G, negkey, p)
        if terms and add(_monic(terms, co), sugar):
            return _unit_basis(ring, order, stats, start)

    while True:
        nxt = pairs.pop()
        if nxt is None:
            break
        i, j, L = nxt
        deg = pk.degree(L)
        stats.max_degree = max(stats.max_degree, deg)
        stats.spairs += 1
        reason = None
        if deg > limits.max_degree:
            reason = f"S-pair degree {deg} exceeds the cap {limits.max_degree}"
        elif stats.spairs > limits.max_pairs:
            reason = f"more than {limits.max_pairs} pair reductions"
        elif time.perf_counter() - start > limits.time_limit:
            reason = f"time budget of {limits.time_limit}s exceeded"
        if reason:
            stats.elapsed = time.perf_counter() - start
            raise ResourceExhausted(reason, stats)
        r = _normal_form(_spoly(basis[i], basis[j], L, p), [basis[k] for k in pairs.live], G, negkey, p)
        if not r:
            stats.zero_reductions += 1
        elif add(_monic(r, co), pairs.pair_sugar(i, j, L)):
            return _unit_basis(ring, order, stats, start)

    # interreduce the minimal basis
    live_sorted = sorted(pairs.live, key=lambda i: key(basis[i][0]))
    final = []
    for i in live_sorted:
        lm, tail = basis[i]
        others = [basis[j] for j in live_sorted if j != i]
        final.append((lm, _normal_form(dict(tail), others, G, negkey, p)))
    elements = [_from_engine([(lm, 1 if p else _one(co))] + tail, ring, pk, co) for lm, tail in final]
    if verify:
        _verify(gens, final, pk, co, stats, full=verify == "full")
    stats.elapsed = time.perf_counter() - start
    return GroebnerBasis(ring, order, elements, stats, _packed=(pk, co, final))


def _negkey(pk: _Packing):
    if pk.lex:
        return lambda P: -P
    low = pk.low
    return lambda P: 2 * (P & low) - P


def _one(co: _Coefficients):
    if co.use_mpq:
        return _mpq(1)
    return co.field.one


def _unit_basis(ring, order, stats, start) -> GroebnerBasis:
    stats.elapsed = time.perf_counter() - start
    return GroebnerBasis(ring, order, [ring.one()], stats)


def _verify(gens, final, pk, co, stats, full=False) -> None:
    p = co.modulus
    G = pk.guard
    negkey = _negkey(pk)
    for g in gens:
        if _normal_form(dict(_to_engine(g, pk, co)), final, G, negkey, p):
            raise GroebnerVerificationError(f"generator {g} does not reduce to zero")
    for idx, (lm, tail) in enumerate(final):
        for jdx, (lm2, _) in enumerate(final):
            if idx != jdx and (pk.divides(lm2, lm) or any(pk.divides(lm2, P) for P, _ in tail)):
                raise GroebnerVerificationError("output basis is not reduced")
    if full:
        todo = []
        for a, b in itertools.combinations(range(len(final)), 2):
            L = pk.lcm(final[a][0], final[b][0])
            if L != final[a][0] + final[b][0]:  # coprime pairs reduce to zero
                todo.append((a, b, L))
    else:
        # replaying the installation criteria over a reduced basis selects a
        # set of pairs whose vanishing certifies the basis (Buchberger's
        # criterion with the Gebauer-Moeller refinements)
        ps = _PairSet(pk)
        for lm, _ in final:
            ps.insert(lm)
        todo = []
        while (nxt := ps.pop()) is not None:
            todo.append(nxt)
    for a, b, L in todo:
        stats.verified_pairs += 1
        if _normal_form(_spoly(final[a], final[b], L, p), final, G, negkey, p):
            raise GroebnerVerificationError("an S-polynomial of the output does not reduce to zero")


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Unique remainder of ``f`` modulo the reduced basis ``G``."""
    if f.ring != G.ring:
        raise RingMismatchError(f"{f.ring!r} vs {G.ring!r}")
    if not f:
        return f
    pk, co, reducers = G._engine()
    negkey = _negkey(pk)
    h = {pk.pack(e): co.inward(c) for e, c in f.terms.items()}
    rem = _normal_form(h, reducers, pk.guard, negkey, co.modulus)
    return _from_engine(rem, f.ring, pk, co)


# ---------------------------------------------------------------------------
# Dimension


@dataclass(frozen=True)
class DimensionResult:
    """``dim`` is -1 for the empty variety; ``codim`` is ``None`` for infinity."""

    dim: int
    witness: tuple[str, ...]
    nvars: int
    basis: GroebnerBasis | None = field(default=None, compare=False, repr=False)

    @property
    def codim(self) -> int | None:
        if self.dim < 0:
            return None
        return self.nvars - self.dim

    @property
    def is_empty(self) -> bool:
        return self.dim < 0


def _bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _minimal_sets(sets: Iterable[int]) -> list[int]:
    uniq = sorted(set(sets), key=lambda s: (bin(s).count("1"), s))
    out: list[int] = []
    for s in uniq:
        if not any(t & s == t for t in out):
            out.append(s)
    return out


def max_independent_set(supports: Iterable[int], nvars: int) -> int:
    """Largest variable set (as a bitmask) containing no support set.

    Branch and bound over a minimum hitting set of ``supports``: the
    complement of a minimum hitting set is a maximum independent set.
    """
    sets = _minimal_sets(supports)
    full = (1 << nvars) - 1
    if not sets:
        return full
    if 0 in sets:
        raise ValueError("an empty support set admits no independent set")
    best_size = len({v for s in sets for v in _bits(s)}) + 1
    best_mask = 0

    def search(chosen: int, size: int) -> None:
        nonlocal best_size, best_mask
        if size >= best_size:
            return
        target = None
        for s in sets:
            if not s & chosen:
                if target is None or bin(s).count("1") < bin(target).count("1"):
                    target = s
                    if bin(s).count("1") == 1:
                        break
        if target is None:
            best_size, best_mask = size, chosen
            return
        for v in _bits(target):
            search(chosen | (1 << v), size + 1)

    search(0, 0)
    return full & ~best_mask


def krull_dimension(I, order: MonomialOrder | None = None, limits: Limits | None = None,
                    *, verify: bool = True) -> DimensionResult:
    """Dimension of ``k[x]/I`` via independent sets modulo the leading ideal."""
    ring, gens = _generators(I)
    n = ring.nvars
    if not gens:
        return DimensionResult(n, ring.names, n)
    G = buchberger(gens, order, limits, verify=verify)
    if G.is_unit:
        return DimensionResult(-1, (), n, G)
    supports = []
    for exp in G.leading_monomials():
        supports.append(sum(1 << i for i, e in enumerate(exp) if e))
    indep = max_independent_set(supports, n)
    witness = tuple(ring.names[i] for i in _bits(indep))
    return DimensionResult(len(witness), witness, n, G)


MAX_MONOMIAL_VARS = 24


def monomial_dimension(I) -> DimensionResult:
    """Dimension of a monomial ideal by exhaustive minimum hitting set search.

    Independent of the Groebner engine; serves as an oracle for
    :func:`krull_dimension` on monomial inputs.
    """
    ring, gens = _generators(I)
    n = ring.nvars
    if n > MAX_MONOMIAL_VARS:
        raise ValueError(f"exhaustive search limited to {MAX_MONOMIAL_VARS} variables")
    supports = []
    for g in gens:
        if not g.is_monomial():
            raise ValueError(f"generator {g} is not a monomial")
        (exp,) = g.terms
        supports.append(frozenset(i for i, e in enumerate(exp) if e))
    if any(not s for s in supports):
        return DimensionResult(-1, (), n)
    for k in range(n + 1):
        for hit in itertools.combinations(range(n), k):
            hs = set(hit)
            if all(s & hs for s in supports):
                witness = tuple(ring.names[i] for i in range(n) if i not in hs)
                return DimensionResult(n - k, witness, n)
    raise AssertionError("the full variable set always hits every support")
