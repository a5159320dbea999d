from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hallmorph.scalar import Scalar, ScalarError


def s(rat, srt=0, q=2):
    return Scalar(rat, srt, q)


def test_basic_ring_values():
    assert s(1) + s(0, 1) == s(1, 1)
    assert Scalar.v_power(2, 2) == s(2)
    assert Scalar.v_power(-1, 2) == s(0, Fraction(1, 2))
    assert Scalar.v_power(0, 5) == Scalar.one(5)
    assert Scalar.v_power(3, 3) == Scalar(0, 3, 3)


def test_v_squares_to_q():
    for q in (2, 3, 5):
        v = Scalar.v_power(1, q)
        assert v * v == Scalar.from_int(q, q)
        assert v * Scalar.v_power(-1, q) == Scalar.one(q)


def test_division_exact():
    a = s(3, 2)
    b = s(1, 1)
    assert (a / b) * b == a
    assert s(1) / s(0, 1) == s(0, Fraction(1, 2))  # 1/v = v/q
    with pytest.raises(ScalarError):
        a / s(0, 0)


def test_mixed_q_rejected():
    with pytest.raises(ScalarError):
        s(1, 0, 2) + s(1, 0, 3)
    with pytest.raises(ScalarError):
        Scalar(1, 0, 4)  # not prime


def test_q_local_flag():
    assert Scalar(Fraction(3, 4), Fraction(1, 2), 2).is_q_local()
    assert not Scalar(Fraction(1, 3), 0, 2).is_q_local()
    assert Scalar(Fraction(1, 9), Fraction(2, 27), 3).is_q_local()


def test_int_coercion_and_equality():
    assert s(5) == 5
    assert s(5, 1) != 5
    assert 2 * s(1, 1) == s(2, 2)
    assert 1 - s(0, 1) == s(1, -1)


scalars = st.builds(
    lambda a, b, c, d, q: Scalar(Fraction(a, 1 + abs(c)), Fraction(b, 1 + abs(d)), q),
    st.integers(-9, 9),
    st.integers(-9, 9),
    st.integers(0, 3),
    st.integers(0, 3),
    st.sampled_from([2, 3]),
)


def _same_q(x, y):
    return x.q == y.q


@settings(max_examples=200, deadline=None)
@given(scalars, scalars, scalars)
def test_ring_axioms(x, y, z):
    if not (_same_q(x, y) and _same_q(y, z)):
        return
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z
    assert x - x == Scalar.zero(x.q)


@settings(max_examples=100, deadline=None)
@given(scalars, scalars)
def test_field_division(x, y):
    if x.q != y.q or not y:
        return
    assert (x / y) * y == x


def test_serialization_round_trip():
    x = Scalar(Fraction(-7, 2), Fraction(5, 4), 2)
    assert Scalar.from_dict(x.as_dict(), 2) == x
