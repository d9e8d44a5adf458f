"""Membership trio: interior, closure, attainment, and their certificates.

Every verdict must survive re-verification through the independent checker
(universal domination over all tail indices), in both polarities.
"""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from conftest import gen_bodies, positive_points
from newtonjump import (family, is_attained, is_in_closure, is_interior,
                        scale, tail, verify_attained, verify_closure,
                        verify_interior)
from newtonjump.membership import InteriorWitness, SeparatingNormal


HYP = family(tails=[tail((1, 1), (0, 1), (1, 0)),
                    tail((1, 1), (1, 0), (0, 1))])
CUSP = family(points=[(2, 0), (0, 3)])


def test_interior_point_of_cusp():
    v = is_interior(CUSP, (2, 2))
    assert v.answer and isinstance(v.certificate, InteriorWitness)
    assert verify_interior(CUSP, (2, 2), v)


def test_boundary_point_is_closure_not_interior():
    u = (1, F(3, 2))  # on the segment between (2,0) and (0,3)
    vi = is_interior(CUSP, u)
    vc = is_in_closure(CUSP, u)
    assert not vi.answer and vc.answer
    assert verify_interior(CUSP, u, vi)
    assert verify_closure(CUSP, u, vc)


def test_outside_point_separated():
    v = is_in_closure(CUSP, (1, 1))
    assert not v.answer and isinstance(v.certificate, SeparatingNormal)
    assert verify_closure(CUSP, (1, 1), v)


def test_hyperbola_open_corner():
    """The corner (1,1) is approached coordinatewise but (x-1)(y-1) >= 1
    keeps it out of the closure; the separating normal survives the
    infinitesimal tilt because 1/j beats eps for every integer j."""
    vc = is_in_closure(HYP, (1, 1))
    assert not vc.answer
    assert verify_closure(HYP, (1, 1), vc)
    va = is_attained(HYP, (1, 2), (1, 1))
    assert not va.answer
    assert verify_attained(HYP, (1, 2), (1, 1), va)
    # a staircase vertex, by contrast, is closure but not interior
    assert is_in_closure(HYP, (2, 2)).answer
    assert not is_interior(HYP, (2, 2)).answer


def test_hyperbola_tail_points_attained():
    t = HYP.tails[0]
    for j in (1, 2, 5):
        u = t.point_at(j)
        v = is_in_closure(HYP, u)
        assert v.answer and verify_closure(HYP, u, v)


def test_attained_on_single_coordinate():
    # x1 = 1 is approached by (1 + 1/j, 1 + j) but never reached
    v = is_attained(HYP, (1,), (1,))
    assert not v.answer
    assert v.certificate.per_generator_strict
    assert verify_attained(HYP, (1,), (1,), v)
    # x1 = 2 is hit by the j=1 tail point (2, 2)
    v2 = is_attained(HYP, (1,), (2,))
    assert v2.answer and verify_attained(HYP, (1,), (2,), v2)


def test_attainment_validates_inputs():
    with pytest.raises(ValueError):
        is_attained(HYP, (0,), (1,))
    with pytest.raises(ValueError):
        is_attained(HYP, (1,), (1, 2))  # arity mismatch


def test_query_point_must_match_dim():
    with pytest.raises(ValueError):
        is_interior(HYP, (1, 2, 3))


# -- properties ---------------------------------------------------------------


@settings(deadline=None, max_examples=60)
@given(data=st.data())
def test_interior_implies_closure_and_both_reverify(data):
    body = data.draw(gen_bodies())
    u = data.draw(positive_points(body.dim))
    vi = is_interior(body, u)
    vc = is_in_closure(body, u)
    if vi.answer:
        assert vc.answer
    assert verify_interior(body, u, vi)
    assert verify_closure(body, u, vc)


@settings(deadline=None, max_examples=40)
@given(data=st.data())
def test_interior_is_upward_open(data):
    body = data.draw(gen_bodies())
    u = data.draw(positive_points(body.dim))
    if is_interior(body, u).answer:
        bumped = tuple(c + F(1, 2) for c in u)
        assert is_interior(body, bumped).answer


@settings(deadline=None, max_examples=40)
@given(data=st.data())
def test_attainment_certificates_reverify(data):
    body = data.draw(gen_bodies(dims=(2, 3)))
    size = data.draw(st.integers(1, body.dim - 1))
    idx = tuple(range(1, size + 1))
    alpha = data.draw(positive_points(size))
    v = is_attained(body, idx, alpha)
    assert verify_attained(body, idx, alpha, v)


@settings(deadline=None, max_examples=30)
@given(data=st.data(), m=st.sampled_from([F(1, 3), F(2)]))
def test_membership_commutes_with_scaling(data, m):
    body = data.draw(gen_bodies())
    u = data.draw(positive_points(body.dim))
    scaled_u = tuple(m * c for c in u)
    assert is_in_closure(body, u).answer == \
        is_in_closure(scale(body, m), scaled_u).answer
    assert is_interior(body, u).answer == \
        is_interior(scale(body, m), scaled_u).answer
