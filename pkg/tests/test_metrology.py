"""Units, contexts and the length/surface bridge."""

from fractions import Fraction

import pytest

from edst.errors import DimensionError, UnknownContextError, UnknownUnitError
from edst.metrology import (
    ATTESTED_BRIDGES,
    CONTEXTS,
    Dimension,
    bridge_surface,
    context_lookup,
    unit,
    unit_ratio,
)
from edst.quantity import Quantity

# chain products worked out by hand from the unit ladders
LENGTH_RATIOS = {
    "ninda-DU": Fraction(1),
    "gi": Fraction(1, 2),
    "kusz3": Fraction(1, 12),
    "ur2-hal-la": Fraction(1, 4),
    "kusz3-numun": Fraction(1, 6),
    "nig2-kas7": Fraction(1, 4),
    "gisz-bad": Fraction(1, 12),
    "szu-bad": Fraction(1, 24),
}

SURFACE_RATIOS = {
    "GAN2": Fraction(100),
    "sar": Fraction(1),
    "gin2": Fraction(1, 60),
    "sa10-ma-na": Fraction(1, 180),
    "sze": Fraction(1, 10800),
    "gin2-bi": Fraction(1, 3600),
    "gin2-ba-gin2": Fraction(1, 216000),
}


@pytest.mark.parametrize("name,ratio", sorted(LENGTH_RATIOS.items()))
def test_length_ratios(name, ratio):
    assert unit(name).ratio == ratio
    assert unit(name).dimension is Dimension.LENGTH


@pytest.mark.parametrize("name,ratio", sorted(SURFACE_RATIOS.items()))
def test_surface_ratios(name, ratio):
    assert unit(name).ratio == ratio
    assert unit(name).dimension is Dimension.SURFACE


def test_aliases():
    assert unit("ninda") is unit("ninda-DU")
    assert unit("samana") is unit("sa10-ma-na")
    assert unit("nikkas") is unit("nig2-kas7")
    with pytest.raises(UnknownUnitError):
        unit("cubit")


def test_unit_ratio_examples():
    assert unit_ratio(unit("ninda-DU"), unit("kusz3")) == 12
    assert unit_ratio(unit("sar"), unit("gin2-ba-gin2")) == 216000  # 60*60*60
    assert unit_ratio(unit("sar"), unit("sar")) == 1
    assert unit_ratio(unit("gin2"), unit("sa10-ma-na")) == 3
    assert unit_ratio(unit("sa10-ma-na"), unit("sze")) == 60
    with pytest.raises(DimensionError):
        unit_ratio(unit("ninda-DU"), unit("sar"))


def test_unit_ratio_transitivity():
    surfaces = [unit(n) for n in SURFACE_RATIOS]
    for a in surfaces:
        for b in surfaces:
            for c in surfaces:
                assert unit_ratio(a, b) * unit_ratio(b, c) == unit_ratio(a, c)


def test_context_registry():
    assert set(CONTEXTS) == {
        "CTX-ED3A", "CTX-ADAB", "CTX-ZAB", "CTX-G", "CTX-SAR-ADAB", "CTX-SAR-ZAB",
    }
    adab = context_lookup("CTX-ADAB")
    assert [u.name for u in adab.units] == ["gi", "kusz3"]
    assert adab.surface_partner == "CTX-SAR-ADAB"
    g = context_lookup("CTX-G")
    assert [u.name for u in g.units] == ["GAN2"]
    with pytest.raises(UnknownContextError):
        context_lookup("CTX-NOPE")


def test_context_units_strictly_decreasing():
    for ctx in CONTEXTS.values():
        ratios = [u.ratio for u in ctx.units]
        assert ratios == sorted(ratios, reverse=True)
        assert len(set(ratios)) == len(ratios)


def test_context_fraction_sets_are_known():
    from edst.numerals import FRACTION_SIGNS

    for ctx in CONTEXTS.values():
        for labels in ctx.fraction_units.values():
            for label in labels:
                assert label in FRACTION_SIGNS


def test_bridge_examples():
    ten = Quantity.of(10, unit("ninda-DU"))
    one = Quantity.of(1, unit("ninda-DU"))
    zero = Quantity.of(0, unit("ninda-DU"))
    assert bridge_surface(ten).magnitude == 100
    assert bridge_surface(one).magnitude == 1
    assert bridge_surface(zero).magnitude == 0
    with pytest.raises(DimensionError):
        bridge_surface(Quantity.of(1, unit("sar")))


def test_bridge_consistency():
    ten = bridge_surface(Quantity.of(10, unit("ninda-DU")))
    one = bridge_surface(Quantity.of(1, unit("ninda-DU")))
    assert ten.magnitude == 100 * one.magnitude
    for bridge in ATTESTED_BRIDGES:
        got = bridge_surface(Quantity(Dimension.LENGTH, bridge.side_ninda))
        assert got.magnitude == bridge.surface_sar
