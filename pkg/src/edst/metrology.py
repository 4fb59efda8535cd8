"""Units and the named metrological contexts of the five surface tables.

A context bundles the unit ladder of one text tradition with its notation
style: which numeral system counts the units, which fraction signs each
unit admits, which sign writes the count 1, and whether counts ending in
nine are written subtractively.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .errors import DimensionError, UnknownContextError, UnknownUnitError
from .numerals import NumeralSystem


class Dimension(Enum):
    LENGTH = "length"
    SURFACE = "surface"


@dataclass(frozen=True)
class Unit:
    name: str
    dimension: Dimension
    ratio: Fraction  # to the base unit: ninda for lengths, sar for surfaces
    aliases: tuple[str, ...] = ()


def _u(name, dimension, ratio, aliases=()) -> Unit:
    return Unit(name, dimension, Fraction(ratio), aliases)


UNITS = {
    u.name: u
    for u in (
        _u("ninda-DU", Dimension.LENGTH, 1, ("ninda",)),
        _u("gi", Dimension.LENGTH, Fraction(1, 2)),
        _u("kusz3", Dimension.LENGTH, Fraction(1, 12)),
        _u("ur2-hal-la", Dimension.LENGTH, Fraction(1, 4)),
        _u("kusz3-numun", Dimension.LENGTH, Fraction(1, 6)),
        _u("nig2-kas7", Dimension.LENGTH, Fraction(1, 4), ("nikkas",)),
        _u("gisz-bad", Dimension.LENGTH, Fraction(1, 12)),
        _u("szu-bad", Dimension.LENGTH, Fraction(1, 24)),
        _u("GAN2", Dimension.SURFACE, 100, ("gan2",)),
        _u("sar", Dimension.SURFACE, 1),
        _u("gin2", Dimension.SURFACE, Fraction(1, 60)),
        _u("sa10-ma-na", Dimension.SURFACE, Fraction(1, 180), ("samana",)),
        _u("sze", Dimension.SURFACE, Fraction(1, 10800)),
        _u("gin2-bi", Dimension.SURFACE, Fraction(1, 3600)),
        _u("gin2-ba-gin2", Dimension.SURFACE, Fraction(1, 216000)),
    )
}

_UNIT_ALIASES = {alias: u.name for u in UNITS.values() for alias in u.aliases}


def unit(name: str) -> Unit:
    """Look a unit up by canonical name or alias."""
    resolved = _UNIT_ALIASES.get(name, name)
    try:
        return UNITS[resolved]
    except KeyError:
        raise UnknownUnitError(f"unknown unit {name!r}") from None


def unit_ratio(u1: Unit, u2: Unit) -> Fraction:
    """How many u2 make one u1."""
    if u1.dimension is not u2.dimension:
        raise DimensionError(f"{u1.name} and {u2.name} measure different dimensions")
    return u1.ratio / u2.ratio


@dataclass(frozen=True)
class MetrologicalContext:
    """One text tradition's unit lattice and notation style."""

    id: str
    dimension: Dimension
    numeral_system: NumeralSystem
    units: tuple[Unit, ...]  # strictly decreasing ratios
    fraction_units: dict = field(default_factory=dict)  # unit name -> fraction labels
    count_sign: dict = field(default_factory=dict)  # unit name -> "as" | "disz"
    subtractive_nine: bool = False
    surface_partner: str | None = None
    # Defective notation is normal for this tradition: unnamed number groups
    # resolve positionally (first fraction group is gin2, following bare
    # counts step down one sexagesimal unit each).
    positional_subunits: bool = False
    # A lone count-2 written with the disz sign before sar means 2/3.
    twothirds_disz: bool = False

    @property
    def base_unit(self) -> Unit:
        return self.units[0]

    def allowed_fractions(self, u: Unit) -> tuple[str, ...]:
        return tuple(self.fraction_units.get(u.name, ()))

    def ones_sign(self, u: Unit) -> str:
        return self.count_sign.get(u.name, "as")

    def has_unit(self, u: Unit) -> bool:
        return any(u.name == cu.name for cu in self.units)

    def next_smaller(self, u: Unit) -> Unit | None:
        names = [cu.name for cu in self.units]
        i = names.index(u.name)
        return self.units[i + 1] if i + 1 < len(self.units) else None


_FR3 = ("1/3", "1/2", "2/3")

CONTEXTS = {
    c.id: c
    for c in (
        MetrologicalContext(
            id="CTX-ED3A",
            dimension=Dimension.LENGTH,
            numeral_system=NumeralSystem.S,
            units=(unit("ninda-DU"), unit("ur2-hal-la"), unit("kusz3-numun")),
            surface_partner="CTX-G",
        ),
        MetrologicalContext(
            id="CTX-ADAB",
            dimension=Dimension.LENGTH,
            numeral_system=NumeralSystem.S,
            units=(unit("gi"), unit("kusz3")),
            subtractive_nine=True,
            surface_partner="CTX-SAR-ADAB",
        ),
        MetrologicalContext(
            id="CTX-ZAB",
            dimension=Dimension.LENGTH,
            numeral_system=NumeralSystem.S,
            units=(
                unit("ninda-DU"),
                unit("nig2-kas7"),
                unit("kusz3-numun"),
                unit("gisz-bad"),
                unit("szu-bad"),
            ),
            surface_partner="CTX-SAR-ZAB",
        ),
        MetrologicalContext(
            id="CTX-G",
            dimension=Dimension.SURFACE,
            numeral_system=NumeralSystem.G,
            units=(unit("GAN2"),),
        ),
        MetrologicalContext(
            id="CTX-SAR-ADAB",
            dimension=Dimension.SURFACE,
            numeral_system=NumeralSystem.S,
            units=(unit("sar"), unit("gin2"), unit("sa10-ma-na"), unit("sze")),
            fraction_units={"sar": _FR3, "gin2": ("igi-4",)},
            count_sign={"gin2": "disz", "sze": "disz"},
            twothirds_disz=True,
        ),
        MetrologicalContext(
            id="CTX-SAR-ZAB",
            dimension=Dimension.SURFACE,
            numeral_system=NumeralSystem.S,
            units=(unit("sar"), unit("gin2"), unit("gin2-bi"), unit("gin2-ba-gin2")),
            fraction_units={"sar": _FR3, "gin2": _FR3},
            subtractive_nine=True,
            positional_subunits=True,
        ),
    )
}


def context_lookup(context_id: str) -> MetrologicalContext:
    try:
        return CONTEXTS[context_id]
    except KeyError:
        raise UnknownContextError(f"unknown context {context_id!r}") from None


@dataclass(frozen=True)
class BridgeRelation:
    """A length whose square defines a surface unit."""

    side_ninda: Fraction
    surface_sar: Fraction


# The two attested bridges: the ninda-side square is one sar, the
# ten-ninda-side square is one iku of GAN2 (a hundred sar).
ATTESTED_BRIDGES = (
    BridgeRelation(Fraction(1), Fraction(1)),
    BridgeRelation(Fraction(10), Fraction(100)),
)


def bridge_surface(side):
    """Surface of the square on ``side``; magnitude in sar is ninda squared."""
    from .quantity import Quantity

    if side.dimension is not Dimension.LENGTH:
        raise DimensionError("bridge_surface takes a length")
    return Quantity(Dimension.SURFACE, side.magnitude * side.magnitude)
