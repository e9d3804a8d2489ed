from fractions import Fraction as F

import pytest

from stripdep.ratpoly import (
    MomentSummary,
    RationalFunctionSeries,
    RationalPolynomial as P,
    pgf_moments,
    series_coefficients,
)


def test_trailing_zeros_are_normalized():
    assert P([1, 2, 0, 0]).coefficients == (F(1), F(2))
    assert P([0, 0]).degree == -1
    assert not P([])
    assert P([F(1, 3)]).degree == 0


def test_arithmetic():
    p = P([1, 2])          # 1 + 2x
    q = P([0, 0, 3])       # 3x^2
    assert p + q == P([1, 2, 3])
    assert p - p == P.zero()
    assert p * q == P([0, 0, 3, 6])
    assert 2 * p == P([2, 4])
    assert p / 2 == P([F(1, 2), 1])
    assert p.shift(2) == P([0, 0, 1, 2])
    assert (p * q).degree == p.degree + q.degree
    with pytest.raises(ZeroDivisionError):
        p / 0


def test_mul_cancellation_keeps_canonical_degree():
    assert (P([1, 1]) * P.zero()).degree == -1
    assert (P([-1, 1]) + P([1, -1])) == P.zero()


def test_float_coefficients_rejected():
    with pytest.raises(TypeError):
        P([0.5])


def test_evaluation_exact_and_float():
    p = P([F(2, 3), 0, F(1, 3)])
    assert p(1) == 1
    assert p(F(1, 2)) == F(2, 3) + F(1, 12)
    assert p(0.0) == pytest.approx(2 / 3)
    assert p(1j) == pytest.approx((2 / 3) - (1 / 3))


def test_derivative():
    p = P([5, 3, 0, 2])
    assert p.derivative() == P([3, 0, 6])
    assert P([7]).derivative() == P.zero()


def test_pgf_checks():
    assert P([F(2, 3), F(1, 3)]).is_pgf()
    assert not P([F(2, 3), F(2, 3)]).is_pgf()
    assert not P([F(4, 3), F(-1, 3)]).is_pgf()


def test_pgf_moments_basics():
    # PGF of a fair coin flip: (1+z)/2
    m = pgf_moments(P([F(1, 2), F(1, 2)]))
    assert m.mean == F(1, 2)
    assert m.variance == F(1, 4)
    assert m.second_factorial_moment == 0
    assert pgf_moments(P.one()) == MomentSummary(F(0), F(0), F(0))
    with pytest.raises(ValueError):
        pgf_moments(P([F(1, 2)]))


def test_moment_summary_invariant_enforced():
    with pytest.raises(ValueError):
        MomentSummary(mean=F(1), variance=F(5), second_factorial_moment=F(0))


def test_geometric_series():
    f = RationalFunctionSeries(P.one(), P([1, -1]))
    assert series_coefficients(f, 4) == (1, 1, 1, 1)


def test_series_with_numerator_and_pole_order_two():
    # x / (1-x)^2 has coefficients 0, 1, 2, 3, ...
    f = RationalFunctionSeries(P([0, 1]), P([1, -1]) * P([1, -1]))
    assert f.coefficients(6) == (0, 1, 2, 3, 4, 5)


def test_series_rejects_vanishing_denominator():
    with pytest.raises(ValueError):
        RationalFunctionSeries(P.one(), P([0, 1]))


def test_fraction_strings():
    assert P([F(2, 3), 1]).fraction_strings() == ["2/3", "1/1"]
