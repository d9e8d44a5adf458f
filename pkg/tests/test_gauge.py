"""Exact gauge values, their certificates, and jumping value enumeration.

Frozen values are hand-derived on the fixture bodies: the single cusp facet
makes the gauge linear, the hyperbola staircase pins ratios at its vertices,
and the shifted branch mixes an attained horizontal facet with an asymptotic
vertical one.
"""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from conftest import gen_bodies, positive_points
from newtonjump import (GaugeInfinite, cusp_body, family, gauge,
                        hyperbola_body, jumping_numbers_up_to, oracle_gauge,
                        scale, shifted_hyperbola_body, support)
from newtonjump.exact import dot
from newtonjump.gauge import FacetWitness


CUSP = cusp_body()
HYP = hyperbola_body()
SHIFTED = shifted_hyperbola_body()

FROZEN = [
    (CUSP, (1, 1), F(5, 6)),
    (HYP, (2, 2), F(1)),
    (HYP, (2, 6), F(3, 2)),
    (HYP, (2, 5), F(17, 12)),
    (HYP, (2, 7), F(31, 20)),
    (HYP, (1, 5), F(5, 6)),
    (SHIFTED, (1, 1), F(5, 9)),
    (SHIFTED, (F(1, 2), 1), F(2, 5)),
]


_IDS = [f"{u}->{v}" for _, u, v in FROZEN]


@pytest.mark.parametrize("body,u,expected", FROZEN, ids=_IDS)
def test_frozen_values(body, u, expected):
    got = gauge(body, u)
    assert got.value == expected
    assert got.exact


@pytest.mark.parametrize("body,u,expected", FROZEN, ids=_IDS)
def test_facet_witness_reverifies(body, u, expected):
    """The returned normal prices u at exactly value * support, and its
    support value over the whole body matches the witness claim."""
    got = gauge(body, u)
    w = got.achieved_by
    assert isinstance(w, FacetWitness)
    h = support(body, w.normal)
    assert h.value == w.support_value
    assert h.attained
    assert dot(w.normal, tuple(map(F, u))) == got.value * w.support_value


def test_deep_tail_contact():
    # contact index ~4e5; pricing must reach it in logarithmically many
    # rounds, not one column per step
    K = 393217
    assert gauge(HYP, (1, K)).value == F(K, K + 1)


def test_point_homogeneity():
    for body, u, expected in FROZEN[:4]:
        for t in (F(1, 3), 2, F(7, 2)):
            tu = tuple(t * F(x) for x in u)
            assert gauge(body, tu).value == t * expected


def test_body_scaling_inverts():
    for m in (F(1, 3), 2, F(7, 2)):
        scaled = scale(HYP, m)
        assert gauge(scaled, (2, 6)).value == F(3, 2) / m


def test_gauge_infinite_at_origin():
    flat = family(points=[(0, 0)])
    with pytest.raises(GaugeInfinite):
        gauge(flat, (1, 1))


def test_input_validation():
    with pytest.raises(ValueError):
        gauge(CUSP, (1, 1, 1))
    with pytest.raises(ValueError):
        gauge(CUSP, (0, 1))
    with pytest.raises(ValueError):
        gauge(CUSP, (-1, 1))


def test_oracle_agrees():
    for body, u, expected in FROZEN:
        assert abs(oracle_gauge(body, u) - float(expected)) <= 1e-9


def test_repeat_queries_hit_cache():
    body = hyperbola_body()
    first = gauge(body, (2, 5))
    again = gauge(body, (2, 5))
    assert first.value == again.value == F(17, 12)
    assert first.achieved_by == again.achieved_by


def test_cusp_jumping_list():
    report = jumping_numbers_up_to(CUSP, 2, 6)
    values = [e.value for e in report.entries]
    assert values == [F(5, 6), F(7, 6), F(4, 3), F(3, 2), F(5, 3),
                      F(11, 6), F(2)]
    for entry in report.entries:
        assert entry.multiplicity == len(entry.witnesses)
        for alpha in entry.witnesses:
            u = tuple(a + 1 for a in alpha)
            assert gauge(CUSP, u).value == entry.value
    assert "box" in report.note


def test_jumping_validation():
    with pytest.raises(ValueError):
        jumping_numbers_up_to(CUSP, 0, 4)
    with pytest.raises(ValueError):
        jumping_numbers_up_to(CUSP, 1, 0)


@given(gen_bodies(dims=(2, 3)), st.data())
@settings(max_examples=40, deadline=None)
def test_certificate_soundness(body, data):
    u = data.draw(positive_points(body.dim))
    try:
        got = gauge(body, u)
    except GaugeInfinite:
        return
    assert got.value > 0
    w = got.achieved_by
    if isinstance(w, FacetWitness):
        # any nonneg normal bounds the gauge by <lam,u>/support; equality
        # plus body-wide validity certifies optimality
        assert all(x >= 0 for x in w.normal) and any(x > 0 for x in w.normal)
        h = support(body, w.normal)
        assert h.value == w.support_value
        assert dot(w.normal, u) == got.value * w.support_value
