import math

import numpy as np
import pytest

from weakhecke.numeric import (DivergentIntegralError, QuadratureSpec, Y_FLOOR,
                               check_hermitian_numeric, eval_form, truncated_inner)
from weakhecke.qseries import FourierSeries, delta, eisenstein, j_invariant


def test_eval_constant():
    assert eval_form(FourierSeries.one(5), 0.3 + 2j, 5) == pytest.approx(1.0)


def test_eval_delta_high_up():
    v = eval_form(delta(20), 10j, 20)
    assert abs(v) <= math.exp(-2 * math.pi * 10) * (1 + 1e-12)


def test_j_at_i():
    a, b = eval_form(j_invariant(40), 1j, 30), eval_form(j_invariant(60), 1j, 60)
    assert a == pytest.approx(1728, rel=1e-12)
    assert a == pytest.approx(b, rel=1e-13)


def test_eval_vectorized():
    zs = np.array([0.1 + 1j, -0.4 + 1.5j])
    vals = eval_form(delta(30), zs)
    assert vals.shape == (2,)
    assert vals[0] == pytest.approx(eval_form(delta(30), zs[0]))


def test_eval_rejects_low_points():
    with pytest.raises(ValueError):
        eval_form(delta(10), 0.5j)
    assert Y_FLOOR == pytest.approx(math.sqrt(3) / 2)


def test_spec_rejects_low_T():
    with pytest.raises(ValueError):
        QuadratureSpec(T=1.0)


def test_antisymmetry():
    d, e = delta(60), eisenstein(12, 60)
    a = truncated_inner(d, e, T=3).value
    b = truncated_inner(e, d, T=3).value
    # machine precision relative to the size of the integrand (about 1e-6)
    assert a == pytest.approx(b.conjugate(), abs=1e-18)


def test_delta_norm_positive_and_stable():
    r = truncated_inner(delta(60), delta(60), T=3)
    assert r.value.real > 0 and abs(r.value.imag) < 1e-20
    longer = truncated_inner(delta(60), delta(60), spec=QuadratureSpec(T=3, length=50))
    finer = truncated_inner(delta(60), delta(60), spec=QuadratureSpec(T=3, nx=4, ny_per_unit=4))
    assert longer.value == pytest.approx(r.value, rel=1e-12)
    assert finer.value == pytest.approx(r.value, rel=1e-12)


def test_cauchy_in_T():
    d = delta(60)
    vals = {T: truncated_inner(d, d, T=T).value.real for T in (1.5, 2.0, 3.0, 4.0)}
    g1 = abs(vals[3.0] - vals[1.5])
    g2 = abs(vals[4.0] - vals[2.0])
    c = -math.log(g2 / g1) / 0.5
    assert c > 1


def test_divergent_pairs_refused():
    with pytest.raises(DivergentIntegralError) as exc:
        truncated_inner(eisenstein(4, 30), eisenstein(4, 30))
    assert exc.value.mode == 0
    with pytest.raises(DivergentIntegralError):
        truncated_inner(j_invariant(30), j_invariant(30))


def test_weight_mismatch():
    with pytest.raises(ValueError):
        truncated_inner(delta(30), eisenstein(4, 30))


@pytest.mark.parametrize("m,ratio", [(1, 1), (2, -24), (3, 252)])
def test_hermitian_delta(m, ratio):
    N = 60 * m
    rep = check_hermitian_numeric(delta(N), delta(N), m)
    base = truncated_inner(delta(60), delta(60)).value
    assert rep.gap < 1e-10
    assert rep.left.real == pytest.approx(ratio * base.real, rel=1e-10)


def test_hermitian_needs_cusp_forms():
    with pytest.raises(ValueError):
        check_hermitian_numeric(eisenstein(12, 60), delta(60), 2)


def test_report_json():
    r = truncated_inner(delta(60), delta(60)).to_dict()
    assert set(r) == {"value", "T", "grid", "estimated_error"}
    assert set(r["grid"]) == {"nx", "ny", "order", "length"}
