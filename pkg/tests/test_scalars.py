from fractions import Fraction

import pytest

from sexpansion.scalars import (AlphaLinearityError, Q2, SQRT2, ScalarExpr,
                                scalar_quotient)


def test_q2_arithmetic():
    x = Q2(1, 1)          # 1 + sqrt2
    y = Q2(-1, 1)         # -1 + sqrt2
    assert x * y == Q2(1)  # (sqrt2)^2 - 1
    assert SQRT2 * SQRT2 == Q2(2)
    assert x - x == Q2(0)
    assert not Q2(0)


def test_q2_inverse_and_division():
    x = Q2(3, -2)
    assert x * x.inverse() == Q2(1)
    assert (x / x) == Q2(1)
    with pytest.raises(ZeroDivisionError):
        Q2(0).inverse()


def test_q2_exact_sign():
    assert Q2(1, -1).sign() == -1          # 1 - sqrt2 < 0
    assert Q2(3, -2).sign() == 1           # 3 - 2 sqrt2 > 0
    assert Q2(-3, 2).sign() == -1
    assert Q2(0).sign() == 0
    assert Q2(Fraction(-141, 100), 1).sign() == 1   # sqrt2 > 1.41
    assert Q2(Fraction(-142, 100), 1).sign() == -1  # sqrt2 < 1.42


def test_alpha_linearity_is_enforced():
    a0 = ScalarExpr.alpha(0)
    a1 = ScalarExpr.alpha(1)
    with pytest.raises(AlphaLinearityError):
        a0 * a1
    with pytest.raises(AlphaLinearityError):
        a0 * a0
    assert (a0 + a1) * ScalarExpr.const(2, ell=-1) \
        == ScalarExpr.alpha(0, 2, -1) + ScalarExpr.alpha(1, 2, -1)


def test_zero_terms_are_pruned():
    a0 = ScalarExpr.alpha(0)
    assert (a0 - a0).is_zero()
    assert not (a0 + ScalarExpr.const(1)).is_zero()


def test_specialize_and_substitute():
    expr = ScalarExpr.alpha(1) + ScalarExpr.alpha(2, ell=2)
    spec = expr.specialize_alphas([1, -1, -1, -1])
    assert spec == ScalarExpr.alpha(0, -1) + ScalarExpr.alpha(0, -1, 2)
    num = expr.substitute_alpha_values([0, 5, 7, 0])
    assert num == ScalarExpr.const(5) + ScalarExpr.const(7, 2)


def test_scalar_quotient():
    base = ScalarExpr.alpha(0) + ScalarExpr.alpha(1)
    target = base.scaled(Q2(Fraction(-3, 2)), 3)
    assert scalar_quotient(target, base) == (Q2(Fraction(-3, 2)), 3)
    assert scalar_quotient(ScalarExpr.alpha(0), base) is None
    assert scalar_quotient(ScalarExpr.zero(), base) is None


def test_string_forms():
    expr = ScalarExpr.alpha(2, Q2(Fraction(1, 2)), -3)
    assert str(expr) == "1/2*a2*l^-3"
    assert str(Q2(1, Fraction(1, 2))) == "1+1/2*sqrt2"
