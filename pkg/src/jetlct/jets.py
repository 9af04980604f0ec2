"""Jet-scheme equations, jet fibers, contact loci and orders along arcs.

Jet coordinates ``a_{i,j}`` (variable ``i``, t-degree ``j``) are rendered
``x_i@j`` and ordered by ``j`` first, then ``i``.  With that order the level-j
jet ring is a prefix of the level-m jet ring for every ``j <= m``, so the
truncation maps are plain prefix inclusions at the level of equations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import IneligibleIdealError, RingMismatchError
from .fields import FieldElement
from .ideal import AffineIdeal
from .polynomial import Polynomial, PolyRing, TruncatedSeries, substitute_series

__all__ = [
    "AffineIdeal",
    "Arc",
    "FiberIdeal",
    "JetIdeal",
    "OrderResult",
    "contact_ideal",
    "jet_fiber_origin",
    "jet_ideal",
    "jet_ring",
    "jet_variable",
    "ord_along_arc",
    "ord_at_origin",
    "restrict_to_hyperplane",
]


def jet_variable(name: str, j: int) -> str:
    return f"{name}@{j}"


@lru_cache(maxsize=256)
def jet_ring(base: PolyRing, m: int) -> PolyRing:
    """Ring of the level-m jet coordinates of ``base``."""
    if m < 0:
        raise ValueError("jet level must be nonnegative")
    names = [jet_variable(x, j) for j in range(m + 1) for x in base.names]
    return PolyRing(names, base.field)


@dataclass(frozen=True, eq=False)
class JetIdeal:
    """The equations ``g_{l,p}`` of ``Y_m`` in the ``n(m+1)`` jet coordinates.

    ``generators[(l, p)]`` is kept even when it vanishes identically (as
    happens in characteristic p) so the ``r(m+1)`` indexing stays intact.
    """

    base: AffineIdeal
    m: int
    ring: PolyRing
    generators: dict[tuple[int, int], Polynomial]

    def ordered(self) -> list[tuple[tuple[int, int], Polynomial]]:
        return sorted(self.generators.items())

    def generator(self, l: int, p: int) -> Polynomial:
        return self.generators[(l, p)]

    def __len__(self) -> int:
        return len(self.generators)

    def nonzero(self) -> list[Polynomial]:
        return [g for _, g in self.ordered() if g]

    def as_ideal(self) -> AffineIdeal:
        """Nonzero generators only, ready for the Groebner engine."""
        return AffineIdeal(self.ring, self.nonzero(), allow_zero=True)


class FiberIdeal(AffineIdeal):
    """Equations of the jets centred at the origin, ``a_{i,0} = 0``.

    ``indices[k]`` is the ``(l, p)`` label of generator ``k``; ``weights`` is
    the grading ``deg a_{i,j} = j`` under which generator ``(l, p)`` is
    homogeneous of degree ``p``.
    """

    __slots__ = ("indices", "weights", "level")

    def __init__(self, ring, generators, indices, weights, level):
        super().__init__(ring, generators, allow_zero=True)
        self.indices = tuple(indices)
        self.weights = tuple(weights)
        self.level = level


def jet_ideal(base: AffineIdeal, m: int) -> JetIdeal:
    """Collect the t-coefficients of ``f_l(sum_j a_{i,j} t^j)``."""
    if m < 0:
        raise ValueError("jet level must be nonnegative")
    n = base.nvars
    if n == 0:
        raise ValueError("the base ring has no variables")
    ring = jet_ring(base.ring, m)
    series = []
    for i in range(n):
        coeffs = [ring.gen(j * n + i) for j in range(m + 1)]
        series.append(TruncatedSeries(coeffs, m, ring))
    gens = {}
    for l, f in enumerate(base.generators, start=1):
        s = substitute_series(f, series)
        for p, g in enumerate(s.coeffs):
            gens[(l, p)] = g
    return JetIdeal(base, m, ring, gens)


def _fiber_ring(base: PolyRing, m: int) -> PolyRing:
    names = [jet_variable(x, j) for j in range(1, m + 1) for x in base.names]
    return PolyRing(names, base.field)


def jet_fiber_origin(J: JetIdeal) -> FiberIdeal:
    """Restrict ``Y_m`` to the fiber of ``pi_m`` over the origin."""
    base = J.base
    bad = base.offending_constant()
    if bad is not None:
        g, c = bad
        raise IneligibleIdealError(
            f"generator {g} has nonzero constant term {c}; the origin is not on Y"
        )
    n = base.nvars
    ring = _fiber_ring(base.ring, J.m)
    keep = list(range(n, n * (J.m + 1)))
    gens, idx = [], []
    for label, g in J.ordered():
        h = g.project(ring, keep)
        if h:
            gens.append(h)
            idx.append(label)
    weights = [j for j in range(1, J.m + 1) for _ in range(n)]
    return FiberIdeal(ring, gens, idx, weights, J.m)


def contact_ideal(base: AffineIdeal, e: int, m: int) -> AffineIdeal:
    """Equations of ``Cont^{>=e}(Y)_m`` inside the level-m jet ring.

    These are the ``g_{l,p}`` with ``p <= e-1``; by truncation compatibility
    they are computed at level ``e-1`` and included as a prefix.
    """
    if e < 1:
        raise ValueError("contact order must be at least 1")
    if e > m + 1:
        raise ValueError(f"contact order {e} exceeds m+1 = {m + 1}")
    low = jet_ideal(base, e - 1)
    ring = jet_ring(base.ring, m)
    gens = [g.embed(ring) for g in low.nonzero()]
    return AffineIdeal(ring, gens, allow_zero=True)


@dataclass(frozen=True)
class OrderResult:
    """``exact`` is the order, or ``None`` when it is at least ``bound``."""

    exact: int | None
    bound: int

    @classmethod
    def at_least(cls, bound: int) -> OrderResult:
        return cls(None, bound)

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    def __str__(self) -> str:
        if self.exact is None:
            return f"ord >= {self.bound}"
        return f"ord = {self.exact}"


class Arc:
    """A polynomial arc ``x_i = u_i(t)`` known modulo ``t^(M+1)``."""

    def __init__(self, components: Sequence[Sequence], precision: int, field):
        if precision < 1:
            raise ValueError("arc precision must be positive")
        self.field = field
        self.precision = precision
        comps = []
        for u in components:
            vals = []
            for c in list(u)[: precision + 1]:
                if isinstance(c, FieldElement):
                    if c.field != field:
                        raise RingMismatchError("arc coefficient from another field")
                    c = c.value
                elif not field.validate(c):
                    c = field.coerce(c)
                vals.append(c)
            vals += [field.zero] * (precision + 1 - len(vals))
            comps.append(tuple(vals))
        self.components = tuple(comps)

    @classmethod
    def from_polynomials(cls, polys: Sequence[Polynomial], precision: int) -> Arc:
        """Build from univariate polynomials in ``t``."""
        if not polys:
            raise ValueError("an arc needs at least one component")
        ring = polys[0].ring
        if ring.nvars != 1:
            raise ValueError("arc components must be polynomials in t alone")
        comps = []
        for u in polys:
            coeffs = [ring.field.zero] * (precision + 1)
            for (d,), c in u.terms.items():
                if d <= precision:
                    coeffs[d] = c
            comps.append(coeffs)
        return cls(comps, precision, ring.field)

    def __len__(self) -> int:
        return len(self.components)

    def truncate(self, m: int) -> dict[str, object]:
        """Jet coordinates ``a_{i,j}`` for ``j <= m`` keyed by position."""
        return {(i, j): u[j] if j <= self.precision else self.field.zero
                for i, u in enumerate(self.components) for j in range(m + 1)}


def ord_along_arc(base: AffineIdeal, arc: Arc) -> OrderResult:
    """t-adic order of the ideal pulled back along ``arc``."""
    if len(arc) != base.nvars:
        raise ValueError(f"arc has {len(arc)} components, ideal has {base.nvars} variables")
    if arc.field != base.field:
        raise RingMismatchError("arc and ideal live over different fields")
    M = arc.precision
    scalars = PolyRing((), base.field)
    series = [TruncatedSeries([scalars.constant(FieldElement(arc.field, c)) for c in u], M, scalars)
              for u in arc.components]
    best = None
    for f in base.generators:
        v = substitute_series(f, series).valuation()
        if v is not None and (best is None or v < best):
            best = v
    if best is None:
        return OrderResult.at_least(M + 1)
    return OrderResult(best, M + 1)


def restrict_to_hyperplane(base: AffineIdeal, i: int | str) -> AffineIdeal:
    """Intersect with the coordinate hyperplane ``x_i = 0``.

    Returns the zero ideal of the hyperplane when it lies inside ``Y``.
    """
    ring = base.ring
    if isinstance(i, str):
        i = ring.index(i)
    if ring.nvars < 2:
        raise ValueError("restriction needs at least two variables")
    if not 0 <= i < ring.nvars:
        raise IndexError(f"variable index {i} out of range")
    keep = [k for k in range(ring.nvars) if k != i]
    sub = PolyRing([ring.names[k] for k in keep], ring.field)
    gens = [g.project(sub, keep) for g in base.generators]
    return AffineIdeal(sub, [g for g in gens if g], allow_zero=True)


def ord_at_origin(base: AffineIdeal) -> int:
    """Largest q with the ideal contained in the q-th power of the maximal ideal.

    Any combination ``sum h_l f_l`` has order at least ``min ord f_l``, and
    the minimum is attained by a generator, so no ideal membership test is
    needed.
    """
    gens = base.nonzero_generators
    if not gens:
        raise ValueError("the zero ideal has no order at the origin")
    q = min(g.min_degree() for g in gens)
    if q == 0:
        from .groebner import buchberger

        if buchberger(gens).is_unit:
            raise ValueError("the unit ideal has no order at the origin")
    return q
