"""Exact scalar layer: rationals, vectors, and the ordered eps extension."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from newtonjump.exact import (EpsDegreeOverflow, EpsRational, ZERO, as_vec,
                              dot, format_rat, format_vec, is_nonnegative,
                              perturb_up, rat, vec, vec_add, vec_le, vec_lt,
                              vec_scale, vec_sub)


def test_rat_accepts_strings_ints_fractions():
    assert rat("3/4") == Fraction(3, 4)
    assert rat(2) == 2
    assert rat(Fraction(5, 6)) == Fraction(5, 6)


def test_format_rat_omits_unit_denominator():
    assert format_rat(Fraction(5, 6)) == "5/6"
    assert format_rat(Fraction(4, 2)) == "2"
    assert format_rat(Fraction(0)) == "0"


def test_format_vec():
    assert format_vec(vec(1, "1/2")) == "(1, 1/2)"


def test_vector_arithmetic():
    a, b = vec(1, 2), vec("1/2", 3)
    assert vec_add(a, b) == (Fraction(3, 2), Fraction(5))
    assert vec_sub(a, b) == (Fraction(1, 2), Fraction(-1))
    assert vec_scale(a, Fraction(3)) == (3, 6)
    assert dot(a, b) == Fraction(13, 2)


def test_vector_orders():
    assert vec_le(vec(1, 2), vec(1, 3))
    assert not vec_lt(vec(1, 2), vec(1, 3))
    assert vec_lt(vec(0, 2), vec(1, 3))
    assert is_nonnegative(vec(0, 1)) and not is_nonnegative(vec(0, -1))


def test_as_vec_normalizes():
    assert as_vec(["1/2", 1]) == (Fraction(1, 2), Fraction(1))


# -- eps extension -----------------------------------------------------------


def test_eps_is_positive_but_below_every_rational():
    eps = EpsRational.eps()
    assert eps > 0
    assert eps < Fraction(1, 10**12)


def test_eps_order_is_lexicographic():
    # 1 + eps sits strictly between 1 and every rational above 1
    assert EpsRational((1, 1)) > 1
    assert EpsRational((1, 1)) < Fraction(10**9 + 1, 10**9)
    assert EpsRational((1, -1)) < 1


def test_eps_arithmetic():
    eps = EpsRational.eps()
    x = (1 + eps) * (1 - eps)
    assert x == EpsRational((1, 0, -1))
    assert (eps * 3 + 1) - eps == EpsRational((1, 2))


def test_eps_degree_overflow():
    eps = EpsRational.eps(max_degree=2)
    with pytest.raises(EpsDegreeOverflow):
        _ = (eps * eps) * eps


def test_perturb_up_strictly_raises_each_coordinate():
    u = vec(1, "1/2")
    up = perturb_up(u)
    assert all(b > a for a, b in zip(u, up))
    # and the bump is infinitesimal: still below any rational increase
    assert all(b < a + Fraction(1, 10**9) for a, b in zip(u, up))


_small = st.fractions(min_value=-3, max_value=3, max_denominator=12)


@given(a=_small, b=_small, c=_small)
def test_eps_order_matches_evaluation_at_tiny_rational(a, b, c):
    """Lexicographic comparison equals evaluation at a small positive eps.

    The coefficient pools are bounded, so eps = 10^-9 is small enough to
    witness every strict comparison the order makes.
    """
    x = EpsRational((a, b, c))
    y = EpsRational((c, a, b))
    t = Fraction(1, 10**9)
    ex = a + b * t + c * t * t
    ey = c + a * t + b * t * t
    if x < y:
        assert ex < ey
    elif x > y:
        assert ex > ey
    else:
        assert ex == ey


@given(a=_small, b=_small)
def test_eps_ring_laws_sample(a, b):
    x = EpsRational((a, 1))
    y = EpsRational((b, -1))
    assert x + y == y + x
    assert x * y == y * x
    assert x * (y + 1) == x * y + x
