"""Cluster points of jumping values and their witness sequences.

A scale m > 0 is a cluster point of the jumping values exactly when some
coordinate subspace with positive integer offsets is asymptotic to the
m-scaled body without meeting it.  The search does not scan scales: for a
fixed coordinate set I and a fixed integer offset vector a, the only scale
putting a on the boundary of the scaled projection is the gauge of a in
the projected body, by upward closedness.  That turns the two-parameter
hunt into a bounded enumeration of (I, a) pairs, each contributing at most
one candidate scale; the candidate survives when no point of the body
realizes the fixed coordinates a/m, which finite convex combinations can
never fake thanks to the per-generator strict attainment certificates.

Values group into arithmetic progressions: the ratio alpha = a/m is the
primitive boundary profile of its ray, and every scale with m * alpha
integral hits the same unattained boundary, so the reported values for one
(I, alpha) are the multiples of a single step.  Witness sequences realize
the accumulation: lattice points riding the witness subspace with doubling
free coordinates have strictly increasing gauges converging to m from
below, which is how the cluster shows up in plain jumping enumerations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .asymptotes import CoordinateSubspace, InconsistencyError
from .body import GeneratorFamily, project
from .exact import Vec, ZERO, format_rat, rat
from .gauge import GaugeInfinite, gauge
from .membership import is_attained


@dataclass(frozen=True)
class ClusterProgression:
    """All reported values sharing one unattained boundary profile.

    ``alpha`` is the primitive profile (gauge 1 in the projection onto
    ``fixed``); the member scales are exactly the multiples of ``step``
    that keep the offsets m * alpha integral, intersected with (0, M] and
    the offset caps.
    """

    fixed: tuple[int, ...]
    alpha: Vec
    step: Fraction
    values: tuple[Fraction, ...]

    def label(self) -> str:
        coords = ", ".join(f"x{i}={format_rat(a)}"
                           for i, a in zip(self.fixed, self.alpha))
        return f"m*({coords}) integral, step {format_rat(self.step)}"


@dataclass(frozen=True)
class ClusterReport:
    max_value: Fraction
    values: tuple[Fraction, ...]
    progressions: tuple[ClusterProgression, ...]
    witnesses: tuple[tuple[Fraction, CoordinateSubspace], ...]
    offset_caps: tuple[int, ...]
    min_gap: Fraction

    def witness_of(self, m: Fraction) -> CoordinateSubspace:
        for value, sub in self.witnesses:
            if value == m:
                return sub
        raise KeyError(format_rat(m))


@dataclass(frozen=True)
class ClusterPointVerdict:
    """Outcome of the direct single-scale test.

    ``witness`` names the subspace {x_I = a} that is asymptotic to the
    m-scaled body with positive integer offsets and disjoint from it; None
    when m is not a cluster point within the offset caps.
    """

    answer: bool
    witness: CoordinateSubspace | None


def _offset_caps(body: GeneratorFamily, M: Fraction) -> tuple[int, ...]:
    """Per-coordinate integer cap ceil(M * B_i) on candidate offsets.

    B_i takes each tail at the decayed end (p_i + r_i bounds every index
    once the escape direction is projected away) and each finite point
    coordinate.  For a single fixed coordinate this is exhaustive: an
    unattained 1-D boundary is always the limit p_i of a decaying tail.
    For larger fixed sets it is the documented search policy.
    """
    caps = []
    for i in range(body.dim):
        best = ZERO
        for pt in body.points:
            best = max(best, pt[i])
        for t in body.tails:
            best = max(best, t.p[i] + t.r[i])
        caps.append(math.ceil(M * best))
    return tuple(caps)


def _progression_step(alpha: Vec) -> Fraction:
    """Least m > 0 with every m * alpha_i a (positive) integer."""
    den = 1
    num = 0
    for a in alpha:
        den = den * a.denominator // math.gcd(den, a.denominator)
        num = math.gcd(num, a.numerator)
    return Fraction(den, num)


def _candidates(body: GeneratorFamily, M: Fraction):
    """Yield (I, a, m, alpha) for offsets on a scaled projected boundary.

    m is the projected gauge of a, the unique scale with a on the boundary
    of the projection of m times the body; profiles with infinite gauge
    (the projection fills its whole orthant) carry no boundary at all.
    """
    caps = _offset_caps(body, M)
    n = body.dim
    for size in range(1, n):
        for I in combinations(range(1, n + 1), size):
            proj = project(body, I)
            ranges = [range(1, caps[i - 1] + 1) for i in I]
            for offs in product(*ranges):
                a = tuple(Fraction(o) for o in offs)
                try:
                    m = gauge(proj, a).value
                except GaugeInfinite:
                    break
                if 0 < m <= M:
                    yield I, a, m, tuple(x / m for x in a)


def cluster_points(body: GeneratorFamily, M: Fraction) -> ClusterReport:
    """Every cluster value in (0, M] found under the offset caps.

    A candidate (I, a) contributes its scale m = projected gauge of a when
    the profile a/m is unattained on the body; attainment is checked once
    per profile since the whole progression shares it.
    """
    M = rat(M)
    if M <= 0:
        raise ValueError("max value must be positive")
    attained_cache: dict[tuple, bool] = {}
    groups: dict[tuple, list[Fraction]] = {}
    witnesses: dict[Fraction, CoordinateSubspace] = {}
    for I, a, m, alpha in _candidates(body, M):
        key = (I, alpha)
        hit = attained_cache.get(key)
        if hit is None:
            hit = is_attained(body, I, alpha).answer
            attained_cache[key] = hit
        if hit:
            continue
        groups.setdefault(key, []).append(m)
        witnesses.setdefault(m, CoordinateSubspace(I, a))
    values = tuple(sorted(witnesses))
    progressions = tuple(
        ClusterProgression(I, alpha, _progression_step(alpha),
                           tuple(sorted(ms)))
        for (I, alpha), ms in sorted(groups.items()))
    gaps = [b - a for a, b in zip(values, values[1:])]
    return ClusterReport(
        max_value=M,
        values=values,
        progressions=progressions,
        witnesses=tuple((m, witnesses[m]) for m in values),
        offset_caps=_offset_caps(body, M),
        min_gap=min(gaps) if gaps else M,
    )


def is_cluster_point(body: GeneratorFamily,
                     m: Fraction) -> ClusterPointVerdict:
    """Direct test of one scale, with the witness subspace on success."""
    m = rat(m)
    if m <= 0:
        raise ValueError("cluster candidate must be positive")
    for I, a, found, alpha in _candidates(body, m):
        if found != m:
            continue
        if is_attained(body, I, alpha).answer:
            continue
        return ClusterPointVerdict(True, CoordinateSubspace(I, a))
    return ClusterPointVerdict(False, None)


@dataclass(frozen=True)
class WitnessPoint:
    point: tuple[int, ...]
    value: Fraction


def _free_levels(count: int):
    """1, 2, 3, then doubling; strictly increasing keeps the gauges so."""
    for k in range(1, count + 1):
        yield k if k <= 3 else 3 * 2 ** (k - 3)


def witness_sequence(body: GeneratorFamily, m: Fraction,
                     count: int) -> tuple[WitnessPoint, ...]:
    """Lattice points whose jumping values climb strictly to m.

    The points sit on the witness subspace translated by -1: fixed
    coordinates stay at the integer offsets minus one, free coordinates
    all take the level t_k.  Each gauge is strictly below m because the
    profile is unattained, strictly increasing because equal consecutive
    gauges would force the projected gauge below m, and convergent to m
    because far free coordinates reduce the gauge to the projected one.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    verdict = is_cluster_point(body, m)
    if not verdict.answer:
        raise ValueError(
            f"{format_rat(rat(m))} is not a cluster point within the "
            "offset caps")
    sub = verdict.witness
    fixed = set(sub.fixed)
    out = []
    last = None
    for level in _free_levels(count):
        u = []
        x = []
        for i in range(1, body.dim + 1):
            if i in fixed:
                a = sub.offset_of(i)
                u.append(a)
                x.append(int(a) - 1)
            else:
                u.append(Fraction(level + 1))
                x.append(level)
        value = gauge(body, tuple(u)).value
        if value >= m or (last is not None and value <= last):
            raise InconsistencyError(
                "witness gauges must increase strictly below the cluster "
                f"value; got {format_rat(value)} after "
                f"{format_rat(last) if last is not None else 'start'}")
        last = value
        out.append(WitnessPoint(tuple(x), value))
    return tuple(out)
