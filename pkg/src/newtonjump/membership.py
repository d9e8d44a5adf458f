"""Certified membership predicates: interior, closure, attainment.

All three reduce to adaptive exact LPs over truncations of the generator
family, with certificates that re-verify against the *full* body:

* interior -- u lies in int P iff some finite convex combination of
  generators is strictly dominated by u.  The false branch produces a
  separating normal lam >= 0 with <lam, u> <= h_P(lam), checked by exact
  support evaluation.
* closure -- u lies in P (the hull is closed, see body.py) iff u + eps*1
  lies in the interior over the field Q(eps).  The feasible branch yields
  plain rational weights (standard parts), the infeasible branch an
  eps-valued separating normal: near an asymptote no rational normal
  separates, and the certificate tilts by eps on the normal's zero
  coordinates.
* attainment -- alpha is the I-projection of an actual point of P iff some
  finite convex combination has I-coordinates <= alpha.  The false branch
  needs per-generator *strict* domination: a normal with <lam, g_I> >
  <lam, alpha> for every single generator (tails quantified over all j)
  rules out every finite combination even when the infimum touches
  <lam, alpha>.

Normal candidates on the false branches come from three places: the
truncation LP's own dual, indicator normals of coordinate subsets, and
duals of the same LP run in coordinate projections (whose families include
tail limit points) extended by zeros.  Every candidate is re-verified
symbolically before it is believed; if the iteration cap is reached with no
verified certificate the query raises Undecided rather than guessing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Sequence, Union

from .body import GeneratorFamily, Vec, project, support, truncate
from .exact import (
    EpsRational,
    ONE,
    ZERO,
    _Frac,
    _Poly,
    dot,
    is_nonnegative,
)
from .simplex import LpError, _dominate_field, lp_dominate

Scalar = Union[Fraction, EpsRational]

LEVEL_CAP = 2 ** 20  # truncation levels double from 1 up to this bound


class Undecided(Exception):
    """The adaptive search hit its cap without a verified certificate.

    Raised instead of guessing; carries enough context to report honestly.
    """

    def __init__(self, operation: str, detail: str):
        super().__init__(f"{operation} undecided: {detail}")
        self.operation = operation
        self.detail = detail


@dataclass(frozen=True)
class InteriorWitness:
    """Convex weights over truncate(body, level) certifying the answer.

    For interior verdicts the combination is strictly below the query point;
    for closure verdicts it is weakly below; for attainment it is weakly
    below on the fixed coordinates only.
    """

    level: int
    weights: tuple[Fraction, ...]


@dataclass(frozen=True)
class SeparatingNormal:
    """A nonnegative, nonzero normal pricing the query at or below the body.

    ``margin = <normal, u> - inf_g <normal, g> <= 0``.  ``per_generator_strict``
    marks attainment certificates, where every individual generator
    (including every tail point) prices strictly above the query even though
    the infimum may touch it.  Entries are Fractions, or EpsRationals when
    only an infinitesimally tilted normal separates.
    """

    normal: tuple[Scalar, ...]
    margin: Scalar
    per_generator_strict: bool = False


Certificate = Union[InteriorWitness, SeparatingNormal]


@dataclass(frozen=True)
class MembershipVerdict:
    answer: bool
    certificate: Certificate
    iterations: int


# ---------------------------------------------------------------------------
# Universally-quantified certificate checks
#
# A normal candidate lam (entries in Q(eps)) dominates the body at level
# theta when <lam, g> >= theta for every generator g; tails make this a
# family of inequalities A*j^2 + B*j + C >= 0 over all integers j >= 1 (the
# value <lam, beta_j> - theta multiplied by j), with coefficients in Q[eps]
# after clearing denominators.  The decision goes level by level in eps:
# at each level a rational quadratic must be nonnegative on the j's still
# undecided, and only its integer roots stay undecided for deeper levels.


def _as_field(x: Scalar | int) -> _Frac:
    if isinstance(x, EpsRational):
        return x._as_frac()
    if isinstance(x, _Frac):
        return x
    return _Frac.const(Fraction(x))


def _quad_nonneg_all(A: Fraction, B: Fraction, C: Fraction) -> bool:
    """A*j^2 + B*j + C >= 0 for every integer j >= 1."""
    if A < 0:
        return False
    if A == 0:
        if B < 0:
            return False
        if B == 0:
            return C >= 0
        return B + C >= 0  # increasing, minimum at j = 1
    vertex = -B / (2 * A)
    lo = max(1, math.floor(vertex))
    for j in (lo, lo + 1):
        if A * j * j + B * j + C < 0:
            return False
    return True


def _sqrt_exact(x: Fraction) -> Fraction | None:
    """The exact rational square root, or None when irrational."""
    if x < 0:
        return None
    ns = math.isqrt(x.numerator)
    ds = math.isqrt(x.denominator)
    if ns * ns != x.numerator or ds * ds != x.denominator:
        return None
    return Fraction(ns, ds)


def _quad_zero_set(A: Fraction, B: Fraction, C: Fraction) -> str | tuple[int, ...]:
    """Integer roots j >= 1, or 'all' for the zero polynomial."""
    if A == 0 and B == 0:
        return 'all' if C == 0 else ()
    if A == 0:
        root = -C / B
        if root.denominator == 1 and root >= 1:
            return (int(root),)
        return ()
    disc = B * B - 4 * A * C
    s = _sqrt_exact(disc)
    if s is None:
        return ()
    roots = []
    for sign in (1, -1):
        root = (-B + sign * s) / (2 * A)
        if root.denominator == 1 and root >= 1:
            j = int(root)
            if j not in roots:
                roots.append(j)
    return tuple(sorted(roots))


def _tail_excess_ok(base: _Frac, a: _Frac, c: _Frac, strict: bool) -> bool:
    """Whether base*j + a*j^2 + c >= 0 (or > 0) for all integers j >= 1.

    This is <lam, beta_j> - theta multiplied by j, with base = <lam, p> -
    theta, a = <lam, q>, c = <lam, r>.
    """
    mult = _Frac(a.den) * _Frac(base.den) * _Frac(c.den)  # lex-positive
    A = (a * mult).as_poly()
    B = (base * mult).as_poly()
    C = (c * mult).as_poly()
    levels = max(len(A.coeffs), len(B.coeffs), len(C.coeffs))
    if levels == 0:
        return not strict  # identically zero for every j
    candidates: str | set[int] = 'all'
    for k in range(levels):
        Ak = A.coeffs[k] if k < len(A.coeffs) else ZERO
        Bk = B.coeffs[k] if k < len(B.coeffs) else ZERO
        Ck = C.coeffs[k] if k < len(C.coeffs) else ZERO
        if candidates == 'all':
            if not _quad_nonneg_all(Ak, Bk, Ck):
                return False
            zeros = _quad_zero_set(Ak, Bk, Ck)
            if zeros == 'all':
                continue
            candidates = set(zeros)
        else:
            remaining: set[int] = set()
            for j in candidates:
                v = Ak * j * j + Bk * j + Ck
                if v < 0:
                    return False
                if v == 0:
                    remaining.add(j)
            candidates = remaining
        if not candidates:
            return True  # every j already strictly positive at some level
    # survivors are exactly zero at all levels
    if candidates == 'all' or candidates:
        return not strict
    return True


def dominates_all(body: GeneratorFamily, idx: tuple[int, ...] | None,
                  lam: Sequence[Scalar], theta: Scalar,
                  strict: bool) -> bool:
    """Exact check that <lam, g_I> >= theta (or >) for *every* generator.

    ``idx`` restricts generators to a coordinate subset (1-based, sorted);
    None means all coordinates.  lam and theta may carry eps terms; tails
    are checked for all j >= 1 symbolically, so this is a genuine universal
    quantifier, not a sampled one.
    """
    lamf = [_as_field(li) for li in lam]
    th = _as_field(theta)

    def restrict(v: Vec) -> list[_Frac]:
        if idx is None:
            return [_Frac.const(x) for x in v]
        return [_Frac.const(v[i - 1]) for i in idx]

    def fdot(vals: list[_Frac]) -> _Frac:
        acc = _Frac.zero()
        for li, vi in zip(lamf, vals):
            acc = acc + li * vi
        return acc

    for pt in body.points:
        excess = fdot(restrict(pt)) - th
        if excess.sign() < 0 or (strict and excess.sign() == 0):
            return False
    for t in body.tails:
        base = fdot(restrict(t.p)) - th
        a = fdot(restrict(t.q))
        c = fdot(restrict(t.r))
        if not _tail_excess_ok(base, a, c, strict):
            return False
    return True


# ---------------------------------------------------------------------------
# Candidate normals for the false branches


def _restrict_vec(u: Vec, idx: tuple[int, ...]) -> Vec:
    return tuple(u[i - 1] for i in idx)


def _extend_by_zeros(lam: Sequence, idx: tuple[int, ...], n: int, zero) -> tuple:
    out = [zero] * n
    for li, i in zip(lam, idx):
        out[i - 1] = li
    return tuple(out)


def _subsets(n: int) -> Iterator[tuple[int, ...]]:
    coords = range(1, n + 1)
    for size in range(1, n + 1):
        yield from combinations(coords, size)


def _rational_candidates(body: GeneratorFamily, u: Vec, J: int,
                         dual: Vec | None) -> Iterator[Vec]:
    """Candidate separating normals for a rational query, most direct first."""
    n = body.dim
    if dual is not None:
        yield dual
    for idx in _subsets(n):
        yield _extend_by_zeros([ONE] * len(idx), idx, n, ZERO)
    for idx in _subsets(n):
        if len(idx) == n:
            continue  # no collapsed tails, nothing beyond the plain dual
        # the projected family contains the limit points of collapsed tails,
        # so its LP duals can expose normals that no finite truncation of the
        # full body supports
        proj = project(body, idx)
        pts = truncate(proj, min(J, 64))
        try:
            delta, _, lam = _dominate_field(pts, _restrict_vec(u, idx), ZERO, ONE)
        except LpError:
            continue
        if delta <= 0:
            yield _extend_by_zeros(lam, idx, n, ZERO)


def _field_candidates(body: GeneratorFamily, fu: tuple[_Frac, ...], J: int,
                      dual: tuple[_Frac, ...] | None) -> Iterator[tuple[_Frac, ...]]:
    """Candidates over Q(eps): field duals, rational families, eps tilts."""
    n = body.dim
    zero = _Frac.zero()
    one = _Frac.one()
    eps = _Frac.eps()

    def tilt(lam: tuple[_Frac, ...]) -> tuple[_Frac, ...]:
        return tuple(li + eps if li.sign() == 0 else li for li in lam)

    if dual is not None:
        yield dual
        yield tilt(dual)
    for idx in _subsets(n):
        ind = _extend_by_zeros([one] * len(idx), idx, n, zero)
        yield ind
        yield tilt(ind)
    std = tuple(x.standard_part() for x in fu)
    for idx in _subsets(n):
        if len(idx) == n:
            continue
        proj = project(body, idx)
        pts = truncate(proj, min(J, 64))
        try:
            delta, _, lam = _dominate_field(
                pts, _restrict_vec(std, idx), ZERO, ONE)
        except LpError:
            continue
        if delta <= 0:
            cand = _extend_by_zeros([_Frac.const(li) for li in lam], idx, n, zero)
            yield cand
            yield tilt(cand)


# ---------------------------------------------------------------------------
# Interior


def _check_query_point(body: GeneratorFamily, u: Vec) -> None:
    if len(u) != body.dim:
        raise ValueError(f"point arity {len(u)} != dim {body.dim}")
    if not is_nonnegative(u):
        raise ValueError("query point must be componentwise nonnegative")


def _levels() -> Iterator[int]:
    J = 1
    while J <= LEVEL_CAP:
        yield J
        J *= 2


def is_interior(body: GeneratorFamily, u: Vec) -> MembershipVerdict:
    """Decide u in int P with a re-verifiable certificate either way.

    True: convex weights over a truncation strictly dominated by u.
    False: a normal with <lam, u> <= h_P(lam), exact.
    """
    _check_query_point(body, u)
    iterations = 0
    for J in _levels():
        iterations += 1
        pts = truncate(body, J)
        res = lp_dominate(pts, u, strict=True)
        if res.feasible:
            return MembershipVerdict(
                True, InteriorWitness(J, res.weights), iterations)
        for lam in _rational_candidates(body, u, J, res.normal):
            if all(li == 0 for li in lam) or not is_nonnegative(lam):
                continue
            h = support(body, lam)
            margin = dot(lam, u) - h.value
            if margin <= 0:
                return MembershipVerdict(
                    False, SeparatingNormal(lam, margin), iterations)
    raise Undecided("is_interior", f"no certificate within level cap {LEVEL_CAP}")


def _is_interior_field(body: GeneratorFamily,
                       fu: tuple[_Frac, ...]) -> tuple[bool, object, int]:
    """Interior test over Q(eps); returns (answer, raw certificate, iters).

    The feasible branch returns field weights over truncate(body, J); the
    infeasible branch a field normal verified by dominates_all.
    """
    zero = _Frac.zero()
    one = _Frac.one()
    iterations = 0
    for J in _levels():
        iterations += 1
        pts = truncate(body, J)
        fpts = [tuple(_Frac.const(x) for x in g) for g in pts]
        delta, w, lam = _dominate_field(fpts, fu, zero, one)
        if delta.sign() > 0:
            return True, (J, w), iterations
        for cand in _field_candidates(body, fu, J, tuple(lam)):
            if all(c.sign() == 0 for c in cand):
                continue
            if any(c.sign() < 0 for c in cand):
                continue
            theta = _Frac.zero()
            for ci, ui in zip(cand, fu):
                theta = theta + ci * ui
            if dominates_all(body, None, cand, theta, strict=False):
                return False, cand, iterations
    raise Undecided("closure search", f"no certificate within level cap {LEVEL_CAP}")


# ---------------------------------------------------------------------------
# Closure


def is_in_closure(body: GeneratorFamily, u: Vec) -> MembershipVerdict:
    """Decide u in P = cl P via the interior of u + eps*1 over Q(eps).

    True: rational weights with sum w_g g <= u componentwise (the standard
    part of the field witness; weak domination is exactly closure
    membership).  False: a separating normal, possibly eps-tilted, with
    <lam, g> >= <lam, u + eps*1> for every generator.
    """
    _check_query_point(body, u)
    eps = _Frac.eps()
    fu = tuple(_Frac.const(x) + eps for x in u)
    answer, raw, iterations = _is_interior_field(body, fu)
    if answer:
        J, w = raw
        pts = truncate(body, J)
        weights = tuple(wi.standard_part() for wi in w)
        # standard parts of a strict field witness weakly dominate: re-verify
        for i in range(body.dim):
            acc = ZERO
            for wi, g in zip(weights, pts):
                if wi:
                    acc += wi * g[i]
            if acc > u[i]:
                raise AssertionError("standard-part weights lost domination")
        total = sum(weights)
        if total != 1:
            raise AssertionError("standard-part weights lost normalization")
        return MembershipVerdict(True, InteriorWitness(J, weights), iterations)
    cleared = _clear_eps_denominators(raw)
    lam = tuple(_to_scalar(li) for li in cleared)
    theta = _Frac.zero()
    for li, ui in zip(cleared, fu):
        theta = theta + li * ui
    margin = _margin_scalar(body, cleared, theta)
    return MembershipVerdict(False, SeparatingNormal(lam, margin), iterations)


def _clear_eps_denominators(lam: Sequence[_Frac]) -> tuple[_Frac, ...]:
    """Scale by the (positive) product of nontrivial denominators."""
    mult = _Frac.one()
    for li in lam:
        if li.den.degree() > 0:
            mult = mult * _Frac(li.den)
    return tuple(li * mult for li in lam)


def _to_scalar(x: _Frac) -> Scalar:
    poly = x.as_poly()
    if poly.degree() <= 0:
        return poly.eval_at_zero()
    return EpsRational(poly.coeffs, max(2, poly.degree()))


def _margin_scalar(body: GeneratorFamily, lam: Sequence[_Frac],
                   theta: _Frac) -> Scalar:
    """<lam, u> - inf_g <lam, g> as a reportable scalar.

    For eps normals the infimum may not exist in the field; report the
    standard-part gap instead, which is what the certificate margin means
    after letting eps go to zero.  The symbolic proof of separation is
    dominates_all, re-run by verify_closure.
    """
    std_lam = tuple(li.standard_part() for li in lam)
    if all(x == 0 for x in std_lam):
        return ZERO
    h = support(body, std_lam)
    return theta.standard_part() - h.value


# ---------------------------------------------------------------------------
# Attainment


def is_attained(body: GeneratorFamily, I: Sequence[int],
                alpha: Vec) -> MembershipVerdict:
    """Decide whether some point of P has I-coordinates exactly alpha.

    Equivalent to weak domination on the fixed coordinates: free coordinates
    can always be raised, and the hull is closed, so alpha is attained iff a
    finite convex combination of generators is <= alpha on I.  The false
    branch certifies per-generator strict domination, which survives every
    finite convex combination even when the infimum touches alpha.
    """
    from .body import check_subset  # local import to avoid a cycle at load
    idx = check_subset(I, body.dim)
    if len(alpha) != len(idx):
        raise ValueError(f"offset arity {len(alpha)} != |I| = {len(idx)}")
    if not is_nonnegative(alpha):
        raise ValueError("offsets must be nonnegative")
    n = body.dim
    iterations = 0
    for J in _levels():
        iterations += 1
        pts = truncate(body, J)
        restricted = [_restrict_vec(g, idx) for g in pts]
        res = lp_dominate(restricted, alpha, strict=False)
        if res.feasible:
            return MembershipVerdict(
                True, InteriorWitness(J, res.weights), iterations)
        for lam in _attainment_candidates(body, idx, alpha, res.normal):
            cand = [_as_field(li) for li in lam]
            if all(c.sign() == 0 for c in cand) or any(c.sign() < 0 for c in cand):
                continue
            theta = _Frac.zero()
            for ci, ai in zip(cand, (_Frac.const(a) for a in alpha)):
                theta = theta + ci * ai
            if dominates_all(body, idx, cand, theta, strict=True):
                ext = _extend_by_zeros([_to_scalar(c) for c in cand], idx, n,
                                       ZERO)
                margin = _attainment_margin(body, idx, cand, alpha)
                return MembershipVerdict(
                    False,
                    SeparatingNormal(ext, margin, per_generator_strict=True),
                    iterations)
    raise Undecided("is_attained", f"no certificate within level cap {LEVEL_CAP}")


def _attainment_candidates(body: GeneratorFamily, idx: tuple[int, ...],
                           alpha: Vec, dual: Vec | None) -> Iterator[tuple]:
    k = len(idx)
    eps = _Frac.eps()

    def tilt(lam: Sequence) -> tuple:
        out = []
        for li in lam:
            f = _as_field(li)
            out.append(f + eps if f.sign() == 0 else f)
        return tuple(out)

    if dual is not None:
        yield dual
        yield tilt(dual)
    for sub in _subsets(k):
        ind = _extend_by_zeros([ONE] * len(sub), sub, k, ZERO)
        yield ind
        yield tilt(ind)
    # duals of deeper projections of the already-restricted problem
    proj = project(body, idx)
    for J in (4, 64):
        pts = truncate(proj, J)
        try:
            delta, _, lam = _dominate_field(pts, alpha, ZERO, ONE)
        except LpError:
            continue
        if delta <= 0:
            yield tuple(lam)
            yield tilt(lam)


def _attainment_margin(body: GeneratorFamily, idx: tuple[int, ...],
                       lam: Sequence[_Frac], alpha: Vec) -> Scalar:
    std = tuple(li.standard_part() for li in lam)
    if all(x == 0 for x in std):
        return ZERO
    ext = _extend_by_zeros(std, idx, body.dim, ZERO)
    h = support(body, ext)
    return dot(std, alpha) - h.value


# ---------------------------------------------------------------------------
# Independent re-verification (used by tests and by the gauge module)


def verify_interior(body: GeneratorFamily, u: Vec,
                    verdict: MembershipVerdict) -> bool:
    cert = verdict.certificate
    if verdict.answer:
        assert isinstance(cert, InteriorWitness)
        pts = truncate(body, cert.level)
        if len(cert.weights) != len(pts):
            return False
        if any(w < 0 for w in cert.weights) or sum(cert.weights) != 1:
            return False
        for i in range(body.dim):
            acc = ZERO
            for w, g in zip(cert.weights, pts):
                if w:
                    acc += w * g[i]
            if acc >= u[i]:
                return False
        return True
    assert isinstance(cert, SeparatingNormal)
    lam = cert.normal
    if any(_as_field(li).sign() < 0 for li in lam):
        return False
    if all(_as_field(li).sign() == 0 for li in lam):
        return False
    theta = _Frac.zero()
    for li, ui in zip(lam, u):
        theta = theta + _as_field(li) * _Frac.const(ui)
    return dominates_all(body, None, lam, theta, strict=False)


def verify_closure(body: GeneratorFamily, u: Vec,
                   verdict: MembershipVerdict) -> bool:
    cert = verdict.certificate
    if verdict.answer:
        assert isinstance(cert, InteriorWitness)
        pts = truncate(body, cert.level)
        if len(cert.weights) != len(pts):
            return False
        if any(w < 0 for w in cert.weights) or sum(cert.weights) != 1:
            return False
        for i in range(body.dim):
            acc = ZERO
            for w, g in zip(cert.weights, pts):
                if w:
                    acc += w * g[i]
            if acc > u[i]:
                return False
        return True
    assert isinstance(cert, SeparatingNormal)
    lam = cert.normal
    if any(_as_field(li).sign() < 0 for li in lam):
        return False
    if all(_as_field(li).sign() == 0 for li in lam):
        return False
    eps = _Frac.eps()
    theta = _Frac.zero()
    for li, ui in zip(lam, u):
        theta = theta + _as_field(li) * (_Frac.const(ui) + eps)
    return dominates_all(body, None, lam, theta, strict=False)


def verify_attained(body: GeneratorFamily, I: Sequence[int], alpha: Vec,
                    verdict: MembershipVerdict) -> bool:
    from .body import check_subset
    idx = check_subset(I, body.dim)
    cert = verdict.certificate
    if verdict.answer:
        assert isinstance(cert, InteriorWitness)
        pts = truncate(body, cert.level)
        if len(cert.weights) != len(pts):
            return False
        if any(w < 0 for w in cert.weights) or sum(cert.weights) != 1:
            return False
        for pos, i in enumerate(idx):
            acc = ZERO
            for w, g in zip(cert.weights, pts):
                if w:
                    acc += w * g[i - 1]
            if acc > alpha[pos]:
                return False
        return True
    assert isinstance(cert, SeparatingNormal)
    if not cert.per_generator_strict:
        return False
    lam_full = cert.normal
    lam = [_as_field(lam_full[i - 1]) for i in idx]
    off = [i for i in range(1, body.dim + 1) if i not in idx]
    if any(_as_field(lam_full[i - 1]).sign() != 0 for i in off):
        return False
    if all(li.sign() == 0 for li in lam):
        return False
    if any(li.sign() < 0 for li in lam):
        return False
    theta = _Frac.zero()
    for li, ai in zip(lam, alpha):
        theta = theta + li * _Frac.const(ai)
    return dominates_all(body, idx, lam, theta, strict=True)
