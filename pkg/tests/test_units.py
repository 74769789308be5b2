import math

import pytest
from hypothesis import given, strategies as st

from tinylca import DimensionError, Quantity, Unit, convert, ratio
from tinylca.units import HOURS_PER_YEAR


def test_gram_to_kilogram():
    q = convert(Quantity(390.0, Unit.GCO2E), Unit.KGCO2E)
    assert q.magnitude == pytest.approx(0.390, rel=1e-12)
    assert q.unit is Unit.KGCO2E


def test_megatonne_to_gigatonne():
    q = convert(Quantity(1765.0, Unit.MTCO2E), Unit.GTCO2E)
    assert q.magnitude == pytest.approx(1.765, rel=1e-12)


def test_year_to_hours_uses_mean_julian_year():
    assert Quantity(3.0, Unit.YEAR).in_unit(Unit.HOUR) == pytest.approx(3 * HOURS_PER_YEAR)
    assert Quantity(3.0, Unit.YEAR).in_unit(Unit.HOUR) == pytest.approx(26298.0)


def test_cross_dimension_conversion_rejected():
    with pytest.raises(DimensionError) as exc:
        convert(Quantity(12.5, Unit.GCO2E), Unit.LITER)
    assert "gCO2e" in str(exc.value)
    assert "liter" in str(exc.value)


def test_negative_magnitude_rejected():
    with pytest.raises(ValueError):
        Quantity(-1.0, Unit.GCO2E)


def test_non_finite_magnitude_rejected():
    with pytest.raises(ValueError):
        Quantity(float("nan"), Unit.GCO2E)
    with pytest.raises(ValueError):
        Quantity(float("inf"), Unit.KWH)


def test_unknown_symbol_rejected():
    with pytest.raises(DimensionError):
        Unit.from_symbol("Batery")


def test_symbol_lookup_round_trip():
    for unit in Unit:
        assert Unit.from_symbol(unit.symbol) is unit


_units = st.sampled_from(list(Unit))
_magnitudes = st.floats(min_value=0.0, max_value=1e18, allow_nan=False, allow_infinity=False)


@given(_magnitudes, _units, _units)
def test_round_trip_within_1e12(magnitude, source, target):
    if source.dimension is not target.dimension:
        with pytest.raises(DimensionError):
            convert(Quantity(magnitude, source), target)
        return
    back = convert(convert(Quantity(magnitude, source), target), source)
    assert math.isclose(back.magnitude, magnitude, rel_tol=1e-12, abs_tol=1e-300)


@given(
    st.floats(min_value=1e-6, max_value=1e12, allow_nan=False, allow_infinity=False),
    st.floats(min_value=1e-6, max_value=1e12, allow_nan=False, allow_infinity=False),
)
def test_ratio_reciprocal(a, b):
    qa, qb = Quantity(a, Unit.GCO2E), Quantity(b, Unit.KGCO2E)
    assert ratio(qa, qb) * ratio(qb, qa) == pytest.approx(1.0, rel=1e-12)


def test_ratio_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        ratio(Quantity(1.0, Unit.GCO2E), Quantity(0.0, Unit.GCO2E))


def test_ratio_cross_dimension_rejected():
    with pytest.raises(DimensionError):
        ratio(Quantity(1.0, Unit.GCO2E), Quantity(1.0, Unit.LITER))
