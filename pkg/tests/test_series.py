"""Truncated power series: ring laws, exp/log, q-Pochhammer jets."""

from fractions import Fraction as Fr

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ospboson.errors import DomainError, StructuralError
from ospboson.series import (
    TruncatedSeries,
    qpoch_log_series,
    qpoch_series,
    series_arith,
)

ORDER = 6

small_fraction = st.fractions(
    min_value=Fr(-4), max_value=Fr(4), max_denominator=6
)
series_st = st.lists(small_fraction, min_size=ORDER + 1, max_size=ORDER + 1).map(
    lambda cs: TruncatedSeries(cs, ORDER)
)


def poly_mul_trunc(a, b, order):
    # independent reference multiplication
    out = [Fr(0)] * (order + 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            if i + j <= order:
                out[i + j] += x * y
    return out


@given(series_st, series_st, series_st)
@settings(max_examples=60, deadline=None)
def test_ring_laws(a, b, c):
    assert ((a + b) + c).coeffs == (a + (b + c)).coeffs
    assert (a * b).coeffs == (b * a).coeffs
    assert (a * (b + c)).coeffs == (a * b + a * c).coeffs
    assert (a - a).coeffs == [Fr(0)] * (ORDER + 1)


@given(series_st, series_st)
@settings(max_examples=60, deadline=None)
def test_mul_matches_reference(a, b):
    assert (a * b).coeffs == poly_mul_trunc(a.coeffs, b.coeffs, ORDER)


@given(series_st)
@settings(max_examples=60, deadline=None)
def test_exp_log_round_trip(a):
    coeffs = list(a.coeffs)
    coeffs[0] = Fr(0)
    s = TruncatedSeries(coeffs, ORDER)
    assert s.exp().log().coeffs == s.coeffs


@given(series_st)
@settings(max_examples=60, deadline=None)
def test_invert(a):
    coeffs = list(a.coeffs)
    coeffs[0] = Fr(1)
    s = TruncatedSeries(coeffs, ORDER)
    one = TruncatedSeries.one(ORDER)
    assert (s * s.invert()).coeffs == one.coeffs


def test_exp_requires_zero_constant():
    s = TruncatedSeries([Fr(1), Fr(1)], 1)
    with pytest.raises(DomainError):
        s.exp()


def test_log_requires_unit_constant():
    s = TruncatedSeries([Fr(2), Fr(1)], 1)
    with pytest.raises(DomainError):
        s.log()


def test_order_mismatch_rejected():
    a = TruncatedSeries.one(3)
    b = TruncatedSeries.one(4)
    with pytest.raises(StructuralError):
        a + b


def test_scale_argument():
    s = TruncatedSeries([Fr(1), Fr(2), Fr(3)], 2)
    t = s.scale_argument(Fr(1, 2))
    assert t.coeffs == [Fr(1), Fr(1), Fr(3, 4)]
    u = t.scale_argument(Fr(2))
    assert u.coeffs == s.coeffs


def test_divide_exact():
    x = TruncatedSeries.x(5)
    one = TruncatedSeries.one(5)
    num = (one - x) * TruncatedSeries([Fr(2), Fr(0), Fr(1), Fr(0), Fr(0), Fr(0)], 5)
    quot = num.divide_exact(one - x)
    assert quot.coeffs[:3] == [Fr(2), Fr(0), Fr(1)]
    with pytest.raises(DomainError):
        one.divide_exact(x)  # 1/x is not a power series


def test_qpoch_series_truncated_product():
    # reference: explicit product of the factors n = 0..4 of (x; 1/2)
    ref = [Fr(1)]
    b = Fr(1, 2)
    for n in range(5):
        c = b ** n
        ref = poly_mul_trunc(ref, [Fr(1), -c], 4)
    got = qpoch_series(Fr(1), b, 4)
    assert got.coeffs == ref


def test_qpoch_series_base_zero_single_factor():
    got = qpoch_series(Fr(3), Fr(0), 3)
    assert got.coeffs == [Fr(1), Fr(-3), Fr(0), Fr(0)]


def test_qpoch_log_series_linear_coefficient():
    # the infinite product has x-coefficient -c/(1-b), which no truncated
    # product reproduces exactly
    got = qpoch_log_series(Fr(1), Fr(1, 2), 3)
    assert got.coeffs[1] == Fr(-2)
    inv = qpoch_log_series(Fr(1), Fr(1, 2), 3, power=-1)
    assert (got * inv).coeffs == TruncatedSeries.one(3).coeffs


def test_qpoch_log_series_matches_numeric_product():
    # jet evaluated well inside the disc vs direct numeric product
    c, b = Fr(1, 3), Fr(1, 4)
    jet = qpoch_log_series(c, b, 40)
    with mp.workdps(40):
        x = mp.mpf("0.05")
        ref = mp.mpf(1)
        term = mp.mpf(1) / 3 * x
        for n in range(200):
            ref *= 1 - term
            term /= 4
        got = jet.eval_mpc(x, 40)
        assert abs(got - ref) < mp.mpf(10) ** -30


def test_series_arith_dispatch():
    a = TruncatedSeries([Fr(0), Fr(1)], 1)
    b = TruncatedSeries([Fr(1), Fr(1)], 1)
    assert series_arith(a, b, "add").coeffs == [Fr(1), Fr(2)]
    assert series_arith(a, b, "mul").coeffs == [Fr(0), Fr(1)]
    assert series_arith(b, None, "invert").coeffs == [Fr(1), Fr(-1)]
    assert series_arith(a, None, "exp").coeffs == [Fr(1), Fr(1)]
    assert series_arith(b, None, "log").coeffs == [Fr(0), Fr(1)]
    with pytest.raises(StructuralError):
        series_arith(a, b, "pow")
