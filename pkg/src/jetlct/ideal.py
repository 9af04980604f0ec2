"""Ideals of affine space given by explicit generators."""

from __future__ import annotations

from typing import Sequence

from .errors import RingMismatchError
from .polynomial import Polynomial, PolyRing


class AffineIdeal:
    """An ideal of ``k[x_1..x_n]`` presented by generators.

    The zero ideal (``Y = X``) is only constructible with ``allow_zero=True``;
    it arises from restrictions and jet fibers, never from user input.
    """

    __slots__ = ("ring", "generators")

    def __init__(self, ring: PolyRing, generators: Sequence[Polynomial], *, allow_zero: bool = False):
        gens = tuple(generators)
        for g in gens:
            if not isinstance(g, Polynomial):
                raise TypeError(f"generator {g!r} is not a Polynomial")
            if g.ring != ring:
                raise RingMismatchError(f"generator {g} does not belong to {ring!r}")
        if not allow_zero:
            if not gens:
                raise ValueError("an ideal needs at least one generator")
            if all(g.is_zero() for g in gens):
                raise ValueError("all generators are zero; the zero ideal is not a valid input")
        self.ring = ring
        self.generators = gens

    @classmethod
    def zero(cls, ring: PolyRing) -> AffineIdeal:
        return cls(ring, (), allow_zero=True)

    @classmethod
    def from_strings(cls, ring: PolyRing, texts: Sequence[str]) -> AffineIdeal:
        return cls(ring, [ring.parse(t) for t in texts])

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    @property
    def field(self):
        return self.ring.field

    @property
    def nonzero_generators(self) -> tuple[Polynomial, ...]:
        return tuple(g for g in self.generators if g)

    @property
    def is_zero_ideal(self) -> bool:
        return not self.nonzero_generators

    @property
    def at_origin_eligible(self) -> bool:
        """Every generator lies in the maximal ideal of the origin."""
        return all(g.constant_term().is_zero() for g in self.generators)

    def offending_constant(self) -> tuple[Polynomial, object] | None:
        for g in self.generators:
            c = g.constant_term()
            if not c.is_zero():
                return g, c
        return None

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.nonzero_generators)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AffineIdeal):
            return NotImplemented
        return self.ring == other.ring and self.generators == other.generators

    def __hash__(self) -> int:
        return hash((self.ring, self.generators))

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators) or "0"
        return f"AffineIdeal(({gens}) in {self.ring!r})"
