from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import delta_product, eisenstein_list, poly_mul
from weakhecke.qseries import (FourierSeries, PrecisionError, bernoulli, delta, delta_power,
                               eisenstein, j_invariant, series_add, series_invert, series_mul)


def test_eisenstein_small():
    assert eisenstein(4, 3).coefficients() == [1, 240, 2160]
    assert eisenstein(6, 2).coefficients() == [1, -504]


@pytest.mark.parametrize("w", [4, 6, 8, 10, 12, 14, 24, 26])
def test_eisenstein_matches_divisor_sums(w):
    assert eisenstein(w, 30).coefficients() == eisenstein_list(w, 30)
    assert eisenstein(w, 5)[0] == 1


def test_bernoulli_values():
    assert bernoulli(4) == Fraction(-1, 30)
    assert bernoulli(6) == Fraction(1, 42)
    assert bernoulli(12) == Fraction(-691, 2730)


@pytest.mark.parametrize("w", [2, 3, 0, -4])
def test_eisenstein_rejects_bad_weight(w):
    with pytest.raises(ValueError):
        eisenstein(w, 5)


def test_delta_and_j_leading_terms():
    assert delta(4).coefficients() == [0, 1, -24, 252]
    assert delta(4)[0] == 0
    j = j_invariant(2)
    assert j.pole_order == 1 and j.weight == 0
    assert j.coefficients() == [1, 744, 196884]


def test_delta_matches_product_formula():
    assert delta(200).coefficients() == delta_product(200)


def test_e4_cubed_minus_e6_squared():
    e4, e6 = eisenstein(4, 60), eisenstein(6, 60)
    assert (e4 * e4 * e4 + (-(e6 * e6))).agrees(delta(60).scale(1728))


def test_j_times_delta_is_e4_cubed():
    N = 40
    e4 = eisenstein_list(4, N)
    e4_cubed = poly_mul(poly_mul(e4, e4, N), e4, N)
    prod = j_invariant(N) * delta(N + 2)
    assert prod.weight == 12
    assert prod.coefficients(0, N) == e4_cubed


def test_identities():
    d = delta(10)
    assert series_add(d, FourierSeries.zero(12, 10)) == d
    z = d + (-d)
    assert z.is_zero() and z.weight == 12 and z.pole_order == 0
    assert FourierSeries.one(10) * d == d
    prod = FourierSeries.monomial(-1, precision=5) * FourierSeries.monomial(1, precision=5)
    assert prod[0] == 1 and prod.valuation == 0


def test_weight_mismatch_rejected():
    with pytest.raises(ValueError):
        delta(5) + eisenstein(4, 5)


def test_mul_precision_rule():
    a = FourierSeries(0, {-2: 1, 0: 3}, 5)
    b = FourierSeries(0, {-1: 1, 2: 1}, 7)
    c = series_mul(a, b)
    assert c.precision == min(5 - 1, 7 - 2)
    assert c.pole_order == 3


def test_invert():
    d = delta(20)
    inv = series_invert(d)
    assert inv.weight == -12 and inv.pole_order == 1
    assert inv.coefficients(-1, 5) == [1, 24, 324, 3200, 25650, 176256]
    assert (inv * d).agrees(FourierSeries.one(inv.precision))
    geom = series_invert(FourierSeries(0, {0: 1, 1: -1}, 10))
    assert geom.coefficients() == [1] * 10


def test_invert_rejects_zero_and_overreach():
    with pytest.raises(ValueError):
        series_invert(FourierSeries.zero(0, 5))
    with pytest.raises(PrecisionError) as exc:
        series_invert(delta(10), precision=20)
    assert exc.value.required == 22


def test_delta_power_negative():
    d2 = delta_power(-2, 6)
    assert d2.pole_order == 2
    assert (d2 * delta(8) * delta(8)).agrees(FourierSeries.one(6))


def test_precision_contract():
    """Raising input precision never changes coefficients in the declared range."""
    low, high = j_invariant(10), j_invariant(25)
    assert high.truncate(low.precision) == low
    a = series_invert(delta(12))
    b = series_invert(delta(30))
    assert b.truncate(a.precision) == a


def test_json_round_trip():
    f = series_invert(delta(15)).scale(Fraction(-7, 3))
    text = f.to_json()
    g = FourierSeries.from_json(text)
    assert g == f and g.to_json() == text
    assert '"-7/3"' in text


def test_unknown_coefficient_raises():
    with pytest.raises(PrecisionError):
        delta(5)[5]


small_fracs = st.fractions(min_value=-20, max_value=20, max_denominator=7)


def series_strategy(weight):
    return st.builds(
        lambda pole, vals: FourierSeries(weight, {n - pole: v for n, v in enumerate(vals)}, 8),
        st.integers(0, 3), st.lists(small_fracs, min_size=1, max_size=8))


@settings(max_examples=60, deadline=None)
@given(series_strategy(2), series_strategy(2), series_strategy(4))
def test_ring_axioms(a, b, c):
    assert (a + b).agrees(b + a)
    assert series_mul(a, c).agrees(series_mul(c, a))
    left = series_mul(a + b, c)
    right = series_mul(a, c) + series_mul(b, c)
    assert left.agrees(right)


@settings(max_examples=40, deadline=None)
@given(series_strategy(0), series_strategy(2), series_strategy(4))
def test_mul_associative(a, b, c):
    x = series_mul(series_mul(a, b), c)
    y = series_mul(a, series_mul(b, c))
    assert x.agrees(y)
