"""Exact gauge of a lattice point and enumeration of jumping values.

The gauge of u > 0 is the largest c with u in c*P, equivalently

    gauge(u) = min over normals lam >= 0 of <lam, u> / h(lam),

where h is the exact support infimum over the generator family.  Because
the hull is closed (see body.py) the scaled membership u in c*P is always
attained, and the minimizing normal always has its support infimum attained
at finitely many generators.  The search is column generation: an exact
gauge LP over a small working set of generator points proposes a dual
normal, the closed-form support function prices that normal against the
whole body (every tail quantified over all indices at once), and tail
points priced below the dual's floor join the working set.  Once the
normal prices at the floor everywhere, weak duality pins the LP value as
the exact gauge, with convex weights on one side and the verified normal
on the other.  Contacts at tail index 10^5 cost the same handful of tiny
LPs as contacts at index 2.

Verified normals are cached per body, normalized to support value 1.  A
repeat query first prices the cached normals and tries to certify the best
ratio with a tiny LP over that facet's attaining generators; enumeration
over a lattice box then costs a few small LPs per point instead of a fresh
adaptive search.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from weakref import WeakKeyDictionary

from .body import (
    GeneratorFamily,
    TailSequence,
    Vec,
    support,
    tail_support,
)
from .exact import ONE, ZERO, dot, vec_scale
from .membership import Undecided
from .simplex import LpError, lp_dominate, lp_gauge


@dataclass(frozen=True)
class FacetWitness:
    """A supporting normal whose support value is attained by generators."""

    normal: Vec
    support_value: Fraction


@dataclass(frozen=True)
class LimitWitness:
    """A supporting normal whose support value is only approached.

    ``subset`` holds the 1-based coordinates carrying the normal, ``offsets``
    the limiting coordinate values along the approaching tail.  With a closed
    hull a facet witness always exists too; this form is kept for callers
    that certify through an asymptotic normal.
    """

    subset: tuple[int, ...]
    offsets: Vec


@dataclass(frozen=True)
class GaugeValue:
    value: Fraction
    achieved_by: FacetWitness | LimitWitness
    exact: bool = True


class GaugeInfinite(ValueError):
    """The body contains the origin, so every scale contains every point."""


def _check_positive(body: GeneratorFamily, u: Vec) -> Vec:
    u = tuple(Fraction(x) for x in u)
    if len(u) != body.dim:
        raise ValueError(f"point arity {len(u)} != dim {body.dim}")
    if any(x <= 0 for x in u):
        raise ValueError("gauge requires a strictly positive point")
    return u


# ---------------------------------------------------------------------------
# Per-body cache of verified facet normals


class _CacheEntry:
    __slots__ = ("normal", "facet", "flat_tails", "fnormal")

    def __init__(self, normal: Vec, facet: tuple[Vec, ...],
                 flat_tails: tuple[TailSequence, ...]):
        self.normal = normal          # scaled so the support value is 1
        self.facet = facet            # generators attaining the support
        self.flat_tails = flat_tails  # tails constant under the normal
        self.fnormal = tuple(float(x) for x in normal)


class _BodyCache:
    __slots__ = ("entries", "seen")

    def __init__(self):
        self.entries: list[_CacheEntry] = []
        self.seen: set[Vec] = set()

    def add(self, entry: _CacheEntry) -> None:
        if entry.normal not in self.seen:
            self.seen.add(entry.normal)
            self.entries.append(entry)


_CACHES: "WeakKeyDictionary[GeneratorFamily, _BodyCache]" = WeakKeyDictionary()


def _cache_for(body: GeneratorFamily) -> _BodyCache:
    cache = _CACHES.get(body)
    if cache is None:
        cache = _BodyCache()
        # seed with coordinate-subset indicator normals whose support is
        # attained; these cover axis-aligned facets (and flat bottoms of
        # prism-like bodies) without waiting for an LP dual to find them
        n = body.dim
        for size in range(1, n + 1):
            for sub in itertools.combinations(range(n), size):
                lam = tuple(ONE if i in sub else ZERO for i in range(n))
                h = support(body, lam)
                if h.value > 0 and h.attained:
                    entry = _build_entry(
                        body, tuple(x / h.value for x in lam), ONE)
                    if entry is not None:
                        cache.add(entry)
        _CACHES[body] = cache
    return cache


def _tail_attaining(t: TailSequence, lam: Vec, h: Fraction):
    """(list of j attaining <lam, beta_j> = h, whether the tail is flat)."""
    a = dot(lam, t.q)
    c = dot(lam, t.r)
    base = dot(lam, t.p)
    if a == 0 and c == 0:
        return [], base == h
    value, j = tail_support(t, lam)
    if value != h or j is None:
        return [], False
    out = [j]
    for k in (j - 1, j + 1):
        if k >= 1 and base + a * k + c / k == h:
            out.append(k)
    return sorted(out), False


def _build_entry(body: GeneratorFamily, lam: Vec, h: Fraction) -> _CacheEntry | None:
    """Cache entry for a verified normal, or None when h is unattained."""
    if h <= 0:
        return None
    facet: list[Vec] = []
    flat: list[TailSequence] = []
    for g in body.points:
        if dot(lam, g) == h:
            facet.append(g)
    for t in body.tails:
        js, is_flat = _tail_attaining(t, lam, h)
        if is_flat:
            flat.append(t)
        for j in js:
            facet.append(t.point_at(j))
    if not facet and not flat:
        return None
    normalized = tuple(x / h for x in lam)
    # flat tails attain at every j; keep a spread of points so the facet LP
    # can reach combinations deep along the tail before falling back
    pts = list(dict.fromkeys(facet))
    for t in flat:
        j = 1
        while j <= 64:
            pts.append(t.point_at(j))
            j = j * 2 if j >= 8 else j + 1
    return _CacheEntry(normalized, tuple(dict.fromkeys(pts)), tuple(flat))


def _below_segment(a: Vec, b: Vec, t: Vec) -> bool:
    """Whether some convex combination of a and b is <= t componentwise."""
    lo, hi = ZERO, ONE
    for ai, bi, ti in zip(a, b, t):
        d = ai - bi
        if d == 0:
            if bi > ti:
                return False
        elif d > 0:
            hi = min(hi, (ti - bi) / d)
        else:
            lo = max(lo, (ti - bi) / d)
    return lo <= hi


def _certify_with_entry(entry: _CacheEntry, u: Vec) -> GaugeValue | None:
    """Certify gauge(u) = <normal, u> by a facet combination, if one exists."""
    m = dot(entry.normal, u)
    if m <= 0:
        return None
    target = vec_scale(u, 1 / m)
    facet = entry.facet
    if len(facet) == 1:
        ok = all(x <= t for x, t in zip(facet[0], target))
    elif len(facet) == 2:
        ok = _below_segment(facet[0], facet[1], target)
    else:
        try:
            ok = lp_dominate(list(facet), target, strict=False).feasible
        except LpError:
            return None
    if not ok:
        return None
    return GaugeValue(m, FacetWitness(entry.normal, ONE), exact=True)


# ---------------------------------------------------------------------------
# The exact gauge by column generation

_PRICING_CAP = 64   # pricing rounds; each strictly grows the working set
_LADDER = 48        # one-time doubled rungs around a tail's first violation
_PEAK_HI = 2 ** 62  # bisection range for the single-point contact index
_WARM_FACETS = 8    # cached facets carried into the working set


def _peak_index(t: TailSequence, u: Vec) -> int:
    """The tail index maximizing the single-point gauge min_i u_i / beta_i.

    Each coordinate of beta_j is convex in j, so the minimum of the ratios
    is unimodal and an exact bisection on f(m) < f(m+1) lands on a peak.
    The index only seeds the working set; correctness never rests on it.
    """
    live = [i for i in range(len(u))
            if t.p[i] != 0 or t.q[i] != 0 or t.r[i] != 0]

    def f(j: int) -> Fraction:
        return min(u[i] / (t.p[i] + t.q[i] * j + t.r[i] / j) for i in live)

    lo, hi = 1, _PEAK_HI
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if f(mid) < f(mid + 1):
            lo = mid + 1
        else:
            hi = mid
    return lo if f(lo) >= f(hi) else hi


def gauge(body: GeneratorFamily, u: Vec) -> GaugeValue:
    """The exact scale c* with u on the boundary of c* times the body.

    Certified from both sides: convex weights place u/c* inside the hull,
    and a verified normal prices u at exactly c* times its support value.
    Raises GaugeInfinite when the body contains the origin (every scale
    works) and Undecided past the pricing-round cap.
    """
    u = _check_positive(body, u)
    cache = _cache_for(body)
    ratios: list[float] = []
    if cache.entries:
        # float pre-screen, then exact comparison inside a safety band; a
        # screened-out true minimum only costs a fallback to the LP path,
        # never a wrong answer, because certification is independent
        uf = tuple(float(x) for x in u)
        ratios = [
            sum(a * b for a, b in zip(e.fnormal, uf)) for e in cache.entries]
        band = min(ratios) * (1 + 1e-7) + 1e-12
        best_m = None
        ranked = []
        for entry, fr in zip(cache.entries, ratios):
            if fr > band:
                continue
            m = dot(entry.normal, u)
            if best_m is None or m < best_m:
                best_m, ranked = m, [entry]
            elif m == best_m:
                ranked.append(entry)
        # only the minimal cached ratio can be the gauge; larger ratios are
        # strict upper bounds and their facets cannot contain u/m
        for entry in ranked:
            got = _certify_with_entry(entry, u)
            if got is not None:
                return got
    work: dict[Vec, None] = dict.fromkeys(body.points)
    for t in body.tails:
        for j in (1, 2, 4, 8):
            work.setdefault(t.point_at(j))
        peak = _peak_index(t, u)
        for k in range(max(1, peak - 2), peak + 3):
            work.setdefault(t.point_at(k))
    for _, entry in sorted(zip(ratios, cache.entries),
                           key=lambda p: p[0])[:_WARM_FACETS]:
        # facets verified by earlier queries make good warm starts
        for g in entry.facet:
            work.setdefault(g)
    laddered: set[int] = set()
    for _ in range(_PRICING_CAP):
        res = lp_gauge(list(work), u)
        if res.unbounded:
            raise GaugeInfinite(
                "body contains the origin; every scale contains u and the "
                "gauge is infinite")
        lam = res.normal  # prices every working column at 1 or above
        h = support(body, lam)
        if h.value >= 1:
            # full-body dual feasibility: the LP total is the exact gauge
            scaled = tuple(x / h.value for x in lam)
            if h.attained:
                entry = _build_entry(body, scaled, ONE)
                if entry is not None:
                    cache.add(entry)
                return GaugeValue(
                    res.total, FacetWitness(scaled, ONE), exact=True)
            return GaugeValue(res.total, _limit_witness(body, lam),
                              exact=True)
        # pull in the mispriced tail points; they are always new columns
        # because everything already in the working set prices >= 1
        for ti, t in enumerate(body.tails):
            value, j = tail_support(t, lam)
            if value >= 1:
                continue
            if j is None:
                # the infimum is a limit (<lam, q> = 0, decaying j-term);
                # the first index priced below 1 is explicit
                base = dot(lam, t.p)
                decay = dot(lam, t.r)
                j = int(decay / (1 - base)) + 1 if decay > 0 else 1
            for k in (j - 1, j, j + 1):
                if k >= 1:
                    work.setdefault(t.point_at(k))
            if ti not in laddered:
                # a one-time geometric ladder in both directions bounds the
                # number of rounds by the log of the contact index
                laddered.add(ti)
                rung = max(j, 1)
                for _ in range(_LADDER):
                    rung *= 2
                    work.setdefault(t.point_at(rung))
                rung = max(j, 1)
                while rung > 1:
                    rung //= 2
                    work.setdefault(t.point_at(rung))
    raise Undecided("gauge",
                    f"no verified optimum within {_PRICING_CAP} "
                    "pricing rounds")


def _limit_witness(body: GeneratorFamily, lam: Vec) -> LimitWitness:
    subset = tuple(i + 1 for i, x in enumerate(lam) if x != 0)
    for t in body.tails:
        if dot(lam, t.q) == 0 and dot(lam, t.r) != 0:
            return LimitWitness(subset, tuple(t.p[i - 1] for i in subset))
    return LimitWitness(subset, tuple(ZERO for _ in subset))


# ---------------------------------------------------------------------------
# Jumping value enumeration over a lattice box


@dataclass(frozen=True)
class JumpEntry:
    value: Fraction
    multiplicity: int
    witnesses: tuple[Vec, ...]


@dataclass(frozen=True)
class JumpingReport:
    entries: tuple[JumpEntry, ...]
    max_value: Fraction
    lattice_bound: int
    note: str


_PARTIALITY_NOTE = (
    "values are enumerated from lattice points inside the box only; values "
    "achieved solely by points outside it are missed, and near a cluster "
    "value these accumulate")


def jumping_numbers_up_to(body: GeneratorFamily, M: Fraction,
                          N: int) -> JumpingReport:
    """Distinct gauge values of alpha + 1 over the box, with witnesses.

    Returns the sorted values in (0, M] for alpha in [0, N]^n, each with its
    multiplicity (number of witnessing lattice points) and the witnesses
    themselves.  Completeness over all of Z^n_+ is not claimed; the report
    carries the caveat explicitly.
    """
    M = Fraction(M)
    if M <= 0:
        raise ValueError("max value must be positive")
    if N < 1:
        raise ValueError("lattice bound must be at least 1")
    found: dict[Fraction, list[Vec]] = {}
    for alpha in itertools.product(range(N + 1), repeat=body.dim):
        u = tuple(Fraction(a + 1) for a in alpha)
        value = gauge(body, u).value
        if 0 < value <= M:
            found.setdefault(value, []).append(tuple(map(Fraction, alpha)))
    entries = tuple(
        JumpEntry(v, len(ws), tuple(ws)) for v, ws in sorted(found.items()))
    return JumpingReport(entries, M, N, _PARTIALITY_NOTE)


# ---------------------------------------------------------------------------
# Floating-point oracle


def _packing_lp_max(A, b) -> float:
    """Maximize sum(v) subject to A v <= b, v >= 0, in float64.

    A has body.dim rows and one column per truncated generator, so the LP is
    a few rows wide and up to millions of columns long.  Generic solvers pay
    per-column model-building overhead at that shape; a dense simplex with
    vectorized full pricing runs the whole thing in a handful of matrix
    products.  Slacks give the starting basis (b >= 0).
    """
    import numpy as np

    dim, n = A.shape
    basis = list(range(n, n + dim))
    B = np.eye(dim)
    cb = np.zeros(dim)
    xb = b.astype(float).copy()
    for _ in range(500):
        y = np.linalg.solve(B.T, cb)
        reduced = 1.0 - y @ A
        slack_reduced = -y
        enter_gen = int(np.argmax(reduced)) if n else -1
        best_gen = reduced[enter_gen] if n else -np.inf
        enter_slack = int(np.argmax(slack_reduced))
        if best_gen < slack_reduced[enter_slack]:
            enter, col = n + enter_slack, np.eye(dim)[:, enter_slack]
            gain = slack_reduced[enter_slack]
        else:
            enter, col = enter_gen, A[:, enter_gen]
            gain = best_gen
        if gain <= 1e-9:
            return float(cb @ xb)
        d = np.linalg.solve(B, col)
        step = np.where(d > 1e-11, xb / np.where(d > 1e-11, d, 1.0), np.inf)
        leave = int(np.argmin(step))
        if not np.isfinite(step[leave]):
            raise ValueError("gauge is unbounded (body contains the origin)")
        xb = xb - step[leave] * d
        xb[leave] = step[leave]
        basis[leave] = enter
        B[:, leave] = col
        cb[leave] = 1.0 if enter < n else 0.0
        xb = np.maximum(xb, 0.0)
    raise ArithmeticError("float LP failed: pivot limit reached")


def oracle_gauge(body: GeneratorFamily, u: Vec, tol: float = 1e-9) -> float:
    """Independent float approximation of the gauge.

    Solves max sum(v) with sum_g v_g g <= u over doubling tail truncations
    until the optimum stabilizes within tol/4.  Generator coordinates are
    built in floating point directly from (p, q, r) and every truncated
    column enters one dense LP, so deep truncations stay brute-force but
    cheap.  Useful as a cross-check only; the exact path is authoritative.
    """
    import numpy as np

    u = _check_positive(body, u)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    uf = np.array([float(x) for x in u])
    point_cols = np.array([[float(x) for x in pt]
                           for pt in body.points]).reshape(len(body.points),
                                                           body.dim).T

    def solve(level: int) -> float:
        blocks = [point_cols]
        js = np.arange(1.0, level + 1.0)
        for t in body.tails:
            p = np.array([float(x) for x in t.p])[:, None]
            q = np.array([float(x) for x in t.q])[:, None]
            r = np.array([float(x) for x in t.r])[:, None]
            blocks.append(p + q * js + r / js)
        return _packing_lp_max(np.concatenate(blocks, axis=1), uf)

    if not body.tails:
        return solve(0)
    # deepest useful tail contact scales like max(u)/min positive q entry,
    # so start the ladder there instead of grinding up from small levels
    qmin = min(float(x) for t in body.tails for x in t.q if x > 0)
    J = max(4, min(1 << 22, 2 * math.ceil(max(float(x) for x in u) / qmin)))
    prev = solve(J)
    while J <= 1 << 24:
        J *= 2
        val = solve(J)
        if abs(val - prev) <= tol / 4:
            return val
        prev = val
    raise ArithmeticError("float oracle did not stabilize")
