"""Exact quantities and compound measurement values.

A Quantity is a dimension plus a non-negative rational magnitude in the
base unit (ninda or sar); arithmetic is exact and never rounds.  A
CompoundValue is the written shape of a quantity: signed segments of
pieces, each piece a count and/or fraction on a unit, e.g.
``1 sar la2 10 gin2 + 1 samana 15 sze``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionError, UnrepresentableError
from .metrology import Dimension, MetrologicalContext, Unit, unit
from .numerals import FRACTION_SIGNS, FractionSign

PLUS = 1
MINUS = -1


@dataclass(frozen=True)
class Quantity:
    dimension: Dimension
    magnitude: Fraction

    def __post_init__(self):
        object.__setattr__(self, "magnitude", Fraction(self.magnitude))
        if self.magnitude < 0:
            raise ValueError("quantities are non-negative")

    @classmethod
    def of(cls, count, u: Unit) -> "Quantity":
        return cls(u.dimension, Fraction(count) * u.ratio)

    def in_unit(self, u: Unit) -> Fraction:
        if u.dimension is not self.dimension:
            raise DimensionError(f"cannot express a {self.dimension.value} in {u.name}")
        return self.magnitude / u.ratio

    def __add__(self, other: "Quantity") -> "Quantity":
        self._check(other)
        return Quantity(self.dimension, self.magnitude + other.magnitude)

    def __sub__(self, other: "Quantity") -> "Quantity":
        self._check(other)
        if other.magnitude > self.magnitude:
            raise ValueError("subtraction would go negative")
        return Quantity(self.dimension, self.magnitude - other.magnitude)

    def scaled(self, r) -> "Quantity":
        r = Fraction(r)
        if r < 0:
            raise ValueError("scale factor must be non-negative")
        return Quantity(self.dimension, self.magnitude * r)

    def _check(self, other: "Quantity") -> None:
        if not isinstance(other, Quantity):
            raise TypeError("expected a Quantity")
        if other.dimension is not self.dimension:
            raise DimensionError("cannot combine a length with a surface")


def length(count, unit_name: str = "ninda-DU") -> Quantity:
    return Quantity.of(count, unit(unit_name))


def surface(count, unit_name: str = "sar") -> Quantity:
    return Quantity.of(count, unit(unit_name))


@dataclass(frozen=True)
class Piece:
    """count and/or fraction attached to one unit, e.g. ``3 2/3 gin2``.

    Counts are whole except on GAN2, whose numerals run in quarter-iku.
    """

    unit: Unit
    count: Fraction = Fraction(0)
    fraction: FractionSign | None = None

    def __post_init__(self):
        object.__setattr__(self, "count", Fraction(self.count))
        if self.count < 0:
            raise ValueError("piece counts are non-negative")
        if self.count == 0 and self.fraction is None:
            raise ValueError("a piece needs a count or a fraction")
        if self.unit.name != "GAN2" and self.count.denominator != 1:
            raise ValueError(f"fractional count {self.count} on {self.unit.name}")

    def base_value(self) -> Fraction:
        total = self.count
        if self.fraction is not None:
            total += self.fraction.value
        return total * self.unit.ratio

    def sort_key(self) -> Fraction:
        # unit first, fraction-only pieces rank below counted pieces
        return self.base_value()


@dataclass(frozen=True)
class CompoundValue:
    """Ordered signed segments; the first is additive, ``la2`` opens a
    subtracted segment, a later ``+`` segment adds back."""

    segments: tuple[tuple[int, tuple[Piece, ...]], ...]

    @classmethod
    def additive(cls, pieces) -> "CompoundValue":
        return cls(((PLUS, tuple(pieces)),))

    def pieces(self):
        for _, pieces in self.segments:
            yield from pieces

    def dimension(self) -> Dimension:
        for piece in self.pieces():
            return piece.unit.dimension
        raise ValueError("empty compound value")

    def magnitude(self) -> Fraction:
        total = Fraction(0)
        for sign, pieces in self.segments:
            total += sign * sum((p.base_value() for p in pieces), Fraction(0))
        return total

    def is_subtractive(self) -> bool:
        return any(sign == MINUS for sign, _ in self.segments)

    def validate(self, ctx: MetrologicalContext | None = None) -> None:
        if not self.segments or not self.segments[0][1]:
            raise ValueError("empty compound value")
        if self.segments[0][0] != PLUS:
            raise ValueError("first segment must be additive")
        dim = self.dimension()
        for _, pieces in self.segments:
            last = None
            for piece in pieces:
                if piece.unit.dimension is not dim:
                    raise DimensionError("pieces mix dimensions")
                if last is not None and piece.unit.ratio >= last:
                    raise ValueError("pieces must strictly decrease by unit")
                last = piece.unit.ratio
        if self.magnitude() < 0:
            raise ValueError("compound value evaluates negative")
        if ctx is not None:
            for piece in self.pieces():
                if not ctx.has_unit(piece.unit):
                    raise UnrepresentableError(
                        f"unit {piece.unit.name!r} is not part of {ctx.id}"
                    )


def evaluate(value: CompoundValue, ctx: MetrologicalContext | None = None) -> Quantity:
    """Exact signed sum of all pieces; errors on a negative total."""
    if ctx is not None:
        for piece in value.pieces():
            if not ctx.has_unit(piece.unit):
                raise UnrepresentableError(f"unit {piece.unit.name!r} is not part of {ctx.id}")
            if piece.unit.dimension is not ctx.dimension:
                raise DimensionError("value does not match the context dimension")
    total = value.magnitude()
    if total < 0:
        raise ValueError("measurement evaluates negative")
    return Quantity(value.dimension(), total)


_FRACTION_ORDER = ("2/3", "1/2", "1/3")


def decompose_canonical(q: Quantity, ctx: MetrologicalContext) -> CompoundValue:
    """Greedy largest-unit-first decomposition, purely additive.

    At each unit level the integer count is taken, then the largest of
    the styled fractions 2/3, 1/2, 1/3 that fits; igi-4 is used only when
    it exactly exhausts the remainder (the quarter sign never opens a
    running tail on the tablets).
    """
    if q.dimension is not ctx.dimension:
        raise DimensionError(f"{ctx.id} does not measure {q.dimension.value}s")
    if q.magnitude == 0:
        raise UnrepresentableError("zero has no written form")
    rem = q.magnitude
    pieces: list[Piece] = []
    for u in ctx.units:
        step = u.ratio * Fraction(1, 4) if u.name == "GAN2" else u.ratio
        count = (rem // step) * Fraction(1, 4) if u.name == "GAN2" else rem // u.ratio
        if count:
            rem -= count * u.ratio
        fraction = None
        allowed = ctx.allowed_fractions(u)
        for label in _FRACTION_ORDER:
            if label in allowed and FRACTION_SIGNS[label].value * u.ratio <= rem:
                fraction = FRACTION_SIGNS[label]
                rem -= fraction.value * u.ratio
                break
        if fraction is None and "igi-4" in allowed and rem == u.ratio / 4:
            fraction = FRACTION_SIGNS["igi-4"]
            rem = Fraction(0)
        if count or fraction is not None:
            pieces.append(Piece(u, count, fraction))
    if rem:
        raise UnrepresentableError(
            f"{q.magnitude} {ctx.base_unit.name} leaves {rem} below {ctx.units[-1].name}"
        )
    value = CompoundValue.additive(pieces)
    value.validate(ctx)
    return value
