from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from su12fiber.errors import NonUnitError, OrderMismatchError
from su12fiber.exact import Mat2, Scalar, TruncatedSeries

fractions = st.fractions(min_value=-6, max_value=6, max_denominator=8)
scalars = st.builds(Scalar, fractions, fractions)
nonzero_scalars = scalars.filter(lambda s: not s.is_zero())

ORDER = 5


def series(order=ORDER):
    return st.builds(
        lambda cs: TruncatedSeries.from_coeffs(cs, order),
        st.lists(scalars, min_size=0, max_size=order),
    )


def unit_series(order=ORDER):
    return st.builds(
        lambda c0, cs: TruncatedSeries.from_coeffs([c0] + cs, order),
        nonzero_scalars,
        st.lists(scalars, min_size=0, max_size=order - 1),
    )


def mat2(order=ORDER):
    return st.builds(
        lambda a, b, c, d: Mat2(((a, b), (c, d))),
        series(order),
        series(order),
        series(order),
        series(order),
    )


# scalars


def test_sqrt2_squares_to_two():
    assert Scalar.sqrt2() * Scalar.sqrt2() == Scalar.of(2)


def test_conjugate_product():
    x = Scalar(Fraction(1), Fraction(1))  # 1 + sqrt2
    y = Scalar(Fraction(1), Fraction(-1))  # 1 - sqrt2
    assert x * y == Scalar.of(-1)


def test_scalar_inverse_example():
    x = Scalar(Fraction(1), Fraction(1))
    assert x.inverse() == Scalar(Fraction(-1), Fraction(1))
    assert x * x.inverse() == Scalar.one()


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        Scalar.zero().inverse()


@given(scalars, scalars, scalars)
def test_scalar_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x
    assert x * y == y * x


@given(nonzero_scalars)
def test_scalar_field_inverse(x):
    assert x * x.inverse() == Scalar.one()


@given(scalars)
def test_scalar_string_round_trip(x):
    assert Scalar.parse(str(x)) == x


def test_scalar_parse_forms():
    assert Scalar.parse("3/4") == Scalar(Fraction(3, 4))
    assert Scalar.parse("-2") == Scalar(Fraction(-2))
    assert Scalar.parse("1/2+1/3*sqrt2") == Scalar(Fraction(1, 2), Fraction(1, 3))
    assert Scalar.parse("1/2-1/3*sqrt2") == Scalar(Fraction(1, 2), Fraction(-1, 3))
    assert Scalar.parse("-1/3*sqrt2") == Scalar(Fraction(0), Fraction(-1, 3))
    with pytest.raises(ValueError):
        Scalar.parse("sqrt3")
    with pytest.raises(ValueError):
        Scalar.parse("")


# truncated series


def test_series_product_truncates():
    one = TruncatedSeries.one(4)
    zeta = TruncatedSeries.zeta(4)
    lhs = (one + zeta) * (one - zeta)
    assert lhs == TruncatedSeries.from_coeffs([1, 0, -1], 4)

    z2 = TruncatedSeries.zeta(2)
    assert (z2 * z2).is_zero()


def test_series_inverse_geometric():
    one = TruncatedSeries.one(4)
    zeta = TruncatedSeries.zeta(4)
    inv = (one - zeta).inverse()
    assert inv == TruncatedSeries.from_coeffs([1, 1, 1, 1], 4)


def test_series_inverse_constant():
    two = TruncatedSeries.constant(2, 3)
    assert two.inverse() == TruncatedSeries.constant(Scalar(Fraction(1, 2)), 3)


def test_series_nonunit_inverse_raises():
    with pytest.raises(NonUnitError):
        TruncatedSeries.zeta(4).inverse()


def test_series_unit_detection():
    assert TruncatedSeries.one(3).is_unit()
    assert not TruncatedSeries.zeta(3).is_unit()
    assert not TruncatedSeries.zero(3).is_unit()


def test_order_mismatch_raises():
    with pytest.raises(OrderMismatchError):
        TruncatedSeries.one(3) + TruncatedSeries.one(4)
    with pytest.raises(OrderMismatchError):
        TruncatedSeries.one(3) * TruncatedSeries.one(4)


@given(series(), series(), series())
def test_series_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x


@given(unit_series())
def test_series_inverse_recomposes(u):
    assert u * u.inverse() == TruncatedSeries.one(u.order)


@given(series())
def test_div_zeta_section(x):
    shifted = TruncatedSeries.zeta(x.order) * x
    assert shifted.div_zeta() * TruncatedSeries.zeta(x.order) == shifted


def test_div_zeta_requires_zero_constant_term():
    with pytest.raises(NonUnitError):
        TruncatedSeries.one(3).div_zeta()


def test_series_valuation():
    assert TruncatedSeries.zero(4).valuation() is None
    assert TruncatedSeries.monomial(2, 4).valuation() == 2
    assert TruncatedSeries.one(4).valuation() == 0


def test_series_string_round_trip():
    s = TruncatedSeries.from_coeffs(
        [Scalar(Fraction(1, 2), Fraction(-1, 3)), Scalar.of(0), Scalar.sqrt2()], 4
    )
    assert TruncatedSeries.parse(s.to_strings()) == s


# matrices


def test_det_examples():
    T = 4
    one = TruncatedSeries.one(T)
    zero = TruncatedSeries.zero(T)
    zeta = TruncatedSeries.zeta(T)
    assert Mat2(((one, zeta), (zero, one))).det() == one
    # hand expansion: (1+zeta)*zeta - zeta*zeta = zeta
    m = Mat2(((one + zeta, zeta), (zeta, zeta)))
    assert m.det() == zeta


@given(mat2())
def test_adjugate_identity(m):
    d = m.det()
    prod = m @ m.adjugate()
    assert prod == Mat2.diag(d, d)


@given(mat2(), mat2())
def test_det_multiplicative(x, y):
    assert (x @ y).det() == x.det() * y.det()


def test_matrix_inverse():
    T = 5
    one = TruncatedSeries.one(T)
    zeta = TruncatedSeries.zeta(T)
    m = Mat2(((one + zeta, zeta), (zeta, one)))
    assert m.is_unit()
    assert m @ m.inverse() == Mat2.identity(T)
    singular = Mat2.diag(zeta, one)
    assert not singular.is_unit()
    with pytest.raises(NonUnitError):
        singular.inverse()


def test_matrix_order_mismatch():
    with pytest.raises(OrderMismatchError):
        Mat2(
            (
                (TruncatedSeries.one(3), TruncatedSeries.zero(3)),
                (TruncatedSeries.zero(3), TruncatedSeries.one(4)),
            )
        )


def test_matrix_column_helpers():
    T = 3
    m = Mat2.from_cols(
        (TruncatedSeries.one(T), TruncatedSeries.zeta(T)),
        (TruncatedSeries.zero(T), TruncatedSeries.one(T)),
    )
    assert m.col(0) == (TruncatedSeries.one(T), TruncatedSeries.zeta(T))
    scaled = m.scale_col(1, TruncatedSeries.constant(2, T))
    assert scaled.col(1) == (TruncatedSeries.zero(T), TruncatedSeries.constant(2, T))
