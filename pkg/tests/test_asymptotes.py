"""Asymptotic coordinate subspaces: detection, enumeration, closures.

The hyperbola and prism fixtures pin down the expected lists exactly; the
cusp shows a polyhedral body has none.  Every reported subspace must
re-verify through the two membership predicates on the projected body.
"""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from conftest import gen_bodies
from newtonjump import (CoordinateSubspace, InconsistencyError, cusp_body,
                        enumerate_asymp, hyperbola_body, hyperbola_prism,
                        is_asymptotic, largest_asymp_closure, project, scale,
                        satisfies_star, shifted_hyperbola_body, subspace,
                        truncate, verify_closure, verify_interior)


CUSP = cusp_body()
HYP = hyperbola_body()
PRISM = hyperbola_prism()


def _labels(subs):
    return sorted(s.label() for s in subs)


def test_hyperbola_lines():
    report = enumerate_asymp(HYP, 3)
    assert report.coordinate_caps == (2, 2)
    assert _labels(report.prime_at(1)) == ["x1=1", "x2=1"]
    # nothing above dimension 1 in the plane, so the maximal list agrees
    assert report.maximal_at(1) == report.prime_at(1)
    for A in report.prime_at(1):
        assert report.attained_of(A) is False


def test_cusp_has_none():
    report = enumerate_asymp(CUSP, 3)
    assert report.prime_at(1) == ()
    assert report.maximal_at(1) == ()


def test_prism_planes_and_lines():
    report = enumerate_asymp(PRISM, 3)
    assert _labels(report.prime_at(2)) == ["x1=1", "x2=1", "x3=1"]
    assert len(report.prime_at(1)) == 9
    # every line sits inside a kept plane at matching offsets, so the
    # maximal list keeps only the planes
    assert report.maximal_at(2) == report.prime_at(2)
    assert report.maximal_at(1) == ()
    for A in report.prime_at(2):
        assert report.attained_of(A) is True
    flags = {A.label(): report.attained_of(A) for A in report.prime_at(1)}
    assert flags["x1=1, x3=1"] is False
    assert flags["x2=1, x3=1"] is False
    assert flags["x1=2, x3=1"] is True
    assert flags["x1=1, x2=1"] is True


def test_is_asymptotic_verdicts():
    v = is_asymptotic(HYP, subspace({1: 1}))
    assert v.answer and v.closure.answer and not v.interior.answer
    proj = project(HYP, (1,))
    assert verify_closure(proj, (F(1),), v.closure)
    assert verify_interior(proj, (F(1),), v.interior)

    # interior offset: subspace crosses int P
    v = is_asymptotic(HYP, subspace({1: 2}))
    assert not v.answer and v.interior.answer

    # outside the closure entirely
    v = is_asymptotic(HYP, subspace({1: F(1, 2)}))
    assert not v.answer and not v.closure.answer

    # negative offsets short-circuit with a coordinate separator
    v = is_asymptotic(HYP, subspace({1: -1}))
    assert not v.answer and not v.closure.answer


def test_star_requires_integer_offsets():
    shifted = shifted_hyperbola_body()
    A = subspace({1: F(1, 2)})
    assert is_asymptotic(shifted, A).answer
    assert not satisfies_star(shifted, A)
    assert satisfies_star(HYP, subspace({1: 1}))
    assert not satisfies_star(HYP, subspace({1: 2}))
    # offset 0 fails the gate before any geometry runs
    assert not satisfies_star(HYP, subspace({1: 0}))


def test_star_scales_with_the_body():
    # {x1 = a} qualifies for m*P exactly when {x1 = a/m} is asymptotic to P
    doubled = scale(HYP, 2)
    assert satisfies_star(doubled, subspace({1: 2}))
    assert not satisfies_star(doubled, subspace({1: 1}))
    report = enumerate_asymp(doubled, 4)
    assert _labels(report.prime_at(1)) == ["x1=2", "x2=2"]


def test_largest_asymp_closure():
    line = subspace({1: 1, 3: 1})
    plane = largest_asymp_closure(PRISM, line, constant=(3,))
    assert plane == subspace({3: 1})
    # omitting the declaration keeps every coordinate
    assert largest_asymp_closure(PRISM, line) == line
    with pytest.raises(ValueError):
        largest_asymp_closure(PRISM, line, constant=(2,))


def test_dishonest_constant_declaration_raises():
    # {x1=1, x3=2} is asymptotic (it touches at the off-plane point), but
    # freeing x1 leaves {x3=2}, which cuts through the interior
    A = subspace({1: 1, 3: 2})
    assert is_asymptotic(PRISM, A).answer
    with pytest.raises(InconsistencyError):
        largest_asymp_closure(PRISM, A, constant=(3,))


def test_subspace_validation():
    with pytest.raises(ValueError):
        is_asymptotic(HYP, subspace({1: 1, 2: 1}))  # nothing left free
    with pytest.raises(ValueError):
        is_asymptotic(HYP, subspace({3: 1}))  # out of range
    with pytest.raises(ValueError):
        enumerate_asymp(HYP, 0)
    report = enumerate_asymp(HYP, 2)
    with pytest.raises(ValueError):
        report.prime_at(2)
    with pytest.raises(KeyError):
        report.attained_of(CoordinateSubspace((1,), (F(7),)))


def test_numeric_distance_vanishes_without_touching():
    """Float oracle: the truncated staircase gets within 1e-3 of x1 = 1 by
    index 1000 yet no generator ever reaches it."""
    gens = truncate(HYP, 1000)
    closest = min(abs(float(g[0]) - 1.0) for g in gens)
    assert 0.0 < closest < 1e-3


@given(gen_bodies(dims=(2, 3)))
@settings(max_examples=20, deadline=None)
def test_reported_subspaces_reverify(body):
    report = enumerate_asymp(body, 2)
    for k in range(1, body.dim):
        kept = set(report.maximal_at(k))
        assert kept <= set(report.prime_at(k))
        for A in report.prime_at(k):
            v = is_asymptotic(body, A)
            assert v.answer
            proj = project(body, A.fixed)
            assert verify_closure(proj, A.offsets, v.closure)
            assert verify_interior(proj, A.offsets, v.interior)
        # maximality: kept subspaces are pairwise incomparable
        for A in kept:
            for B in kept:
                if A != B:
                    assert not A.contains(B) and not B.contains(A)
