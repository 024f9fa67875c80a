import math

import pytest

from convex_enclose.errors import ExtendedArithmeticError
from convex_enclose.extreal import INF, ensure_extended, xadd, xmul, xsub, xsum


def test_total_order_with_infinities():
    assert -INF < -1e308 < -1.0 < 0.0 < 1.0 < 1e308 < INF


def test_ensure_extended_rejects_nan():
    with pytest.raises(ExtendedArithmeticError):
        ensure_extended(float("nan"))
    assert ensure_extended(INF) == INF
    assert ensure_extended(3) == 3.0


def test_addition_propagates_infinity():
    assert xadd(INF, 5.0) == INF
    assert xadd(-INF, 5.0) == -INF
    assert xadd(2.0, 3.0) == 5.0


def test_inf_minus_inf_is_an_error():
    with pytest.raises(ExtendedArithmeticError):
        xadd(INF, -INF)
    with pytest.raises(ExtendedArithmeticError):
        xsub(INF, INF)
    with pytest.raises(ExtendedArithmeticError):
        xsub(-INF, -INF)
    # opposite-sign infinities add fine
    assert xsub(INF, -INF) == INF


def test_multiplication_sign_propagation():
    assert xmul(2.0, INF) == INF
    assert xmul(-2.0, INF) == -INF
    assert xmul(-3.0, -INF) == INF
    assert xmul(4.0, -2.0) == -8.0


def test_zero_times_inf_is_an_error():
    with pytest.raises(ExtendedArithmeticError):
        xmul(0.0, INF)
    with pytest.raises(ExtendedArithmeticError):
        xmul(-INF, 0.0)


def test_xsum_finite_is_compensated():
    terms = [0.1] * 10
    assert xsum(terms) == 1.0


def test_xsum_with_infinities():
    assert xsum([1.0, INF, 2.0]) == INF
    with pytest.raises(ExtendedArithmeticError):
        xsum([INF, -INF])
