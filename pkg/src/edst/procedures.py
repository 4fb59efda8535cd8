"""Surface computation: direct squaring plus the three table-building
procedures the tablets reflect.

* bordering: grow a square band by band, each step adding two strips and
  a corner whose areas are whole iku (10-ninda band) or bur (60-ninda
  band) counts;
* cut-and-paste: signed rectangles that rearrange a small square into
  round pieces, mirrored by subtractive notation;
* seed scaling: the square on one ninda sub-unit, scaled by k-squared
  through repeated addition to fill a sub-table.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionError, SchemeError, UnrepresentableError
from .metrology import Dimension, MetrologicalContext, Unit, context_lookup, unit
from .quantity import MINUS, PLUS, CompoundValue, Quantity, decompose_canonical, evaluate

_KUSZ_SAR = Fraction(1, 144)  # surface of the square on one kusz3


def square_area(side: Quantity) -> Quantity:
    if side.dimension is not Dimension.LENGTH:
        raise DimensionError("square_area takes a length")
    return Quantity(Dimension.SURFACE, side.magnitude * side.magnitude)


def rect_area(front: Quantity, ground: Quantity) -> Quantity:
    if front.dimension is not Dimension.LENGTH or ground.dimension is not Dimension.LENGTH:
        raise DimensionError("rect_area takes two lengths")
    return Quantity(Dimension.SURFACE, front.magnitude * ground.magnitude)


@dataclass(frozen=True)
class BorderPiece:
    label: str  # "strip" or "corner"
    width: Quantity
    length: Quantity
    area: Quantity


@dataclass(frozen=True)
class BorderStep:
    prev_side: Quantity
    band_width: Quantity
    side: Quantity
    pieces: tuple[BorderPiece, ...]
    cumulative: Quantity


_BAND_WIDTHS = (Fraction(10), Fraction(60))


def bordering_sequence(sides: list[Quantity], band_width: Quantity) -> list[BorderStep]:
    """Build each square from the previous one by adding two strips and a
    corner; sides must ladder up from the band width in band-width steps."""
    band = band_width.magnitude
    if band not in _BAND_WIDTHS:
        raise ValueError("only 10 and 60 ninda bands are attested")
    if not sides:
        raise ValueError("no sides given")
    for k, side in enumerate(sides, start=1):
        if side.magnitude != band * k:
            raise ValueError(
                f"sides must step by the band width; expected {band * k} ninda, got {side.magnitude}"
            )
    steps: list[BorderStep] = []
    for k, side in enumerate(sides, start=1):
        prev = Quantity(Dimension.LENGTH, band * (k - 1))
        pieces = []
        if prev.magnitude:
            strip = rect_area(band_width, prev)
            pieces.append(BorderPiece("strip", band_width, prev, strip))
            pieces.append(BorderPiece("strip", band_width, prev, strip))
        corner = square_area(band_width)
        pieces.append(BorderPiece("corner", band_width, band_width, corner))
        cumulative = square_area(side)
        total = steps[-1].cumulative if steps else Quantity(Dimension.SURFACE, 0)
        for piece in pieces:
            total = total + piece.area
        if total != cumulative:
            raise AssertionError("bordering pieces do not close the square")
        steps.append(BorderStep(prev, band_width, side, tuple(pieces), cumulative))
    return steps


@dataclass(frozen=True)
class CutPasteScheme:
    """Signed rectangles (sides in kusz3) accounting for a square."""

    side: Quantity
    pieces: tuple[tuple[int, Fraction, Fraction], ...]  # (sign, width, height)

    def signed_sum_kusz2(self) -> Fraction:
        return sum((s * w * h for s, w, h in self.pieces), Fraction(0))

    def validate(self) -> None:
        target = (self.side.magnitude * 12) ** 2  # side in kusz3, squared
        if self.signed_sum_kusz2() != target:
            raise SchemeError(
                f"scheme covers {self.signed_sum_kusz2()} kusz3^2, square needs {target}"
            )


def cutpaste_derive(
    side: Quantity,
    scheme: CutPasteScheme,
    ctx: MetrologicalContext | None = None,
) -> CompoundValue:
    """Turn a scheme into the written surface: consecutive same-sign
    rectangles merge into one segment, each segment decomposed canonically."""
    ctx = ctx or context_lookup("CTX-SAR-ADAB")
    if scheme.side != side:
        raise SchemeError("scheme was built for a different side")
    scheme.validate()
    segments: list[tuple[int, Fraction]] = []
    for sign, w, h in scheme.pieces:
        area = w * h * _KUSZ_SAR
        if segments and segments[-1][0] == sign:
            segments[-1] = (sign, segments[-1][1] + area)
        else:
            segments.append((sign, area))
    out = []
    for sign, area in segments:
        part = decompose_canonical(Quantity(Dimension.SURFACE, area), ctx)
        out.append((sign, part.segments[0][1]))
    value = CompoundValue(tuple(out))
    got = evaluate(value)
    want = square_area(side)
    if got != want:
        raise SchemeError(f"derived value {got.magnitude} sar != square {want.magnitude} sar")
    return value


@dataclass(frozen=True)
class SexagesimalSeed:
    """The written surface of the square on one ninda sub-unit."""

    subunit: Unit
    seed_surface: CompoundValue
    quantity: Quantity


_SEED_UNITS = ("nig2-kas7", "kusz3-numun", "gisz-bad", "szu-bad")


def seed_square(subunit: Unit) -> SexagesimalSeed:
    if subunit.name not in _SEED_UNITS:
        raise ValueError(f"no seed square for unit {subunit.name!r}")
    q = square_area(Quantity(Dimension.LENGTH, subunit.ratio))
    ctx = context_lookup("CTX-SAR-ZAB")
    return SexagesimalSeed(subunit, decompose_canonical(q, ctx), q)


def scale_seed(seed: SexagesimalSeed, k: int) -> CompoundValue:
    """Surface of the square on k sub-units: k*k additions of the seed.

    The reference path accumulates the seed k*k times the way a sub-table
    could have been filled; the product shortcut must agree.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    total = Quantity(Dimension.SURFACE, 0)
    for _ in range(k * k):
        total = total + seed.quantity
    fast = seed.quantity.scaled(k * k)
    if total != fast:
        raise AssertionError("repeated addition disagrees with scaling")
    ctx = context_lookup("CTX-SAR-ZAB")
    return decompose_canonical(total, ctx)


def fraction_of_sar(p: int, q: int) -> CompoundValue:
    """Canonical sexagesimal form of p/q sar (the fraction table entries)."""
    if p <= 0 or q <= 0:
        raise ValueError("p and q must be positive")
    ctx = context_lookup("CTX-SAR-ZAB")
    return decompose_canonical(Quantity(Dimension.SURFACE, Fraction(p, q)), ctx)


_ROUND_GIN2 = Fraction(10, 60)  # subtractive pivots: multiples of 10 gin2


def subtractive_heuristic(q: Quantity, ctx: MetrologicalContext | None = None) -> CompoundValue:
    """Exploratory: write q against the nearest round value above it when
    the deficit is smaller than the additive tail.  Round values are
    multiples of 10 gin2 plus 1/2, 2/3 and whole sar.  Not used by the
    table generators."""
    ctx = ctx or context_lookup("CTX-SAR-ADAB")
    additive = decompose_canonical(q, ctx)
    pieces = additive.segments[0][1]
    if len(pieces) < 2:
        return additive
    candidates = [Fraction(1, 2), Fraction(2, 3)]
    step = _ROUND_GIN2
    candidates.append(step * (q.magnitude // step + 1))
    candidates.append(Fraction(int(q.magnitude) + 1))
    rounds = sorted(c for c in candidates if c >= q.magnitude)
    if not rounds:
        return additive
    c = rounds[0]
    deficit = c - q.magnitude
    tail = q.magnitude - pieces[0].base_value()
    if deficit == 0 or deficit >= tail:
        return additive
    try:
        head = decompose_canonical(Quantity(Dimension.SURFACE, c), ctx)
        cut = decompose_canonical(Quantity(Dimension.SURFACE, deficit), ctx)
    except UnrepresentableError:
        return additive
    return CompoundValue(
        ((PLUS, head.segments[0][1]), (MINUS, cut.segments[0][1]))
    )
