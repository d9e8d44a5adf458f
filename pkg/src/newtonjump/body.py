"""Newton convex bodies presented by generators.

A body is ``P = conv(union of generators) + R^n_+`` where a generator is
either a finite point of Q^n_+ or an infinite tail ``beta_j = p + q*j + r/j``
(j = 1, 2, ...) with p, q, r >= 0 and q != 0.  Two facts carry the whole
module and are worth stating once:

* P is already closed.  Any convergent sequence of finite convex
  combinations splits, after passing to a subsequence, into surviving atoms
  (bounded indices) and escaping tail atoms whose mass w vanishes with
  w * j bounded; the escaping part converges to a nonnegative multiple of q,
  which the recession orthant absorbs.  So no separate closure operator is
  needed: ``cl conv(...) = conv(...) + R^n_+`` for every generator family.
* Projections are *not* closed (tails whose escape vanishes on the kept
  coordinates converge to limit points outside the projection), which is why
  :func:`project` adds the limit point explicitly: the returned family
  represents the closure of the projection, exactly.

Scaling acts coordinatewise on all generator data, and the support function
has a closed form per tail, making every dual evaluation exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Iterable, Sequence

from .exact import (
    ONE,
    RationalLike,
    Vec,
    ZERO,
    as_vec,
    dot,
    format_rat,
    format_vec,
    is_nonnegative,
    rat,
    vec_scale,
)


class BodyValidationError(ValueError):
    """A generator family violates a structural invariant."""


@dataclass(frozen=True)
class TailSequence:
    """Generator sequence ``beta_j = p + q*j + r/j`` for j >= 1.

    ``q`` is the escape direction and must be nonzero: a sequence that does
    not escape converges, and its limit should be supplied as a finite point
    instead.  ``r`` bends the prefix of the sequence away from the ray
    ``p + q*j``; with q and r supported on complementary coordinates this
    produces hyperbola-like staircases whose boundary approaches the affine
    subspace ``{x = p}`` on the non-escaping coordinates without reaching it.
    """

    p: Vec
    q: Vec
    r: Vec

    def point_at(self, j: int) -> Vec:
        if j < 1:
            raise ValueError("tail index starts at 1")
        jf = Fraction(j)
        return tuple(pi + qi * jf + ri / jf
                     for pi, qi, ri in zip(self.p, self.q, self.r))

    @property
    def dim(self) -> int:
        return len(self.p)

    def __str__(self) -> str:
        return (f"tail p {format_vec(self.p)} q {format_vec(self.q)}"
                f" r {format_vec(self.r)}")


def tail(p: Iterable[RationalLike], q: Iterable[RationalLike],
         r: Iterable[RationalLike]) -> TailSequence:
    return TailSequence(as_vec(p), as_vec(q), as_vec(r))


@dataclass(frozen=True)
class GeneratorFamily:
    """A Newton body ``conv(points  union  tail points) + R^n_+``."""

    dim: int
    points: tuple[Vec, ...]
    tails: tuple[TailSequence, ...]

    def __str__(self) -> str:
        parts = [f"dim {self.dim}"]
        parts += [f"point {' '.join(format_rat(c) for c in pt)}"
                  for pt in self.points]
        parts += [str(t) for t in self.tails]
        return "\n".join(parts)


def family(points: Iterable[Iterable[RationalLike]] = (),
           tails: Iterable[TailSequence] = (),
           dim: int | None = None) -> GeneratorFamily:
    """Build and validate a family, inferring the dimension."""
    pts = tuple(as_vec(p) for p in points)
    tls = tuple(tails)
    if dim is None:
        if pts:
            dim = len(pts[0])
        elif tls:
            dim = tls[0].dim
        else:
            raise BodyValidationError("a body needs at least one generator")
    return validate(GeneratorFamily(dim, pts, tls))


def validate(body: GeneratorFamily) -> GeneratorFamily:
    """Check all structural invariants; raise a full report on violation."""
    problems: list[str] = []
    if body.dim < 1:
        problems.append(f"dimension must be positive, got {body.dim}")
    if not body.points and not body.tails:
        problems.append("a body needs at least one generator")
    for k, pt in enumerate(body.points):
        if len(pt) != body.dim:
            problems.append(f"point {k} arity {len(pt)} != dim {body.dim}")
            continue
        if not is_nonnegative(pt):
            problems.append(f"point {k} {format_vec(pt)} has a negative entry")
    for k, t in enumerate(body.tails):
        for name, v in (("p", t.p), ("q", t.q), ("r", t.r)):
            if len(v) != body.dim:
                problems.append(
                    f"tail {k} component {name} arity {len(v)} != dim {body.dim}")
            elif not is_nonnegative(v):
                problems.append(
                    f"tail {k} component {name} {format_vec(v)} has a negative entry")
        if len(t.q) == body.dim and all(qi == 0 for qi in t.q):
            problems.append(f"tail {k} must escape (q != 0)")
    if problems:
        raise BodyValidationError("; ".join(problems))
    return body


def scale(body: GeneratorFamily, m: RationalLike) -> GeneratorFamily:
    """The scaled body m*P: every generator datum multiplied by m > 0."""
    mf = rat(m)
    if mf <= 0:
        raise ValueError(f"scale factor must be positive, got {mf}")
    return GeneratorFamily(
        body.dim,
        tuple(vec_scale(pt, mf) for pt in body.points),
        tuple(TailSequence(vec_scale(t.p, mf), vec_scale(t.q, mf),
                           vec_scale(t.r, mf)) for t in body.tails),
    )


PROJECTION_PREFIX = 8  # redundant for the body; kept for oracle cross-checks


def check_subset(I: Sequence[int], dim: int, proper: bool = False) -> tuple[int, ...]:
    """Validate a 1-based coordinate subset, returned sorted."""
    idx = tuple(sorted(set(I)))
    if not idx:
        raise ValueError("coordinate subset must be nonempty")
    if idx != tuple(sorted(I)):
        raise ValueError("repeated coordinate in subset")
    if idx[0] < 1 or idx[-1] > dim:
        raise ValueError(f"coordinate subset {I} out of range 1..{dim}")
    if proper and len(idx) == dim:
        raise ValueError("coordinate subset must be proper")
    return idx


def _restrict(v: Vec, idx: tuple[int, ...]) -> Vec:
    return tuple(v[i - 1] for i in idx)


def project(body: GeneratorFamily, I: Sequence[int]) -> GeneratorFamily:
    """The closure of the coordinate projection of P onto I, as a family.

    Tails that still escape on I project to tails.  Tails whose escape
    vanishes on I converge there to p_I; the family keeps that limit point
    (which makes the result the *closure*) plus a finite prefix of the
    genuine projected points.  The prefix is dominated by the limit point,
    so it does not change the represented set.
    """
    idx = check_subset(I, body.dim)
    pts: list[Vec] = [_restrict(pt, idx) for pt in body.points]
    tls: list[TailSequence] = []
    for t in body.tails:
        q = _restrict(t.q, idx)
        if any(qi != 0 for qi in q):
            tls.append(TailSequence(_restrict(t.p, idx), q, _restrict(t.r, idx)))
        else:
            pts.append(_restrict(t.p, idx))
            pts.extend(_restrict(t.point_at(j), idx)
                       for j in range(1, PROJECTION_PREFIX + 1))
    seen: set[Vec] = set()
    unique = []
    for pt in pts:
        if pt not in seen:
            seen.add(pt)
            unique.append(pt)
    return GeneratorFamily(len(idx), tuple(unique), tuple(tls))


@dataclass(frozen=True)
class SupportValue:
    """Exact support data: ``value = inf_{x in P} <lam, x>``.

    ``attained`` records whether some generator achieves the infimum;
    ``witness`` is ("point", index) or ("tail", index, j) when it does.
    The infimum over a tail with <lam, q> = 0 and <lam, r> > 0 is its base
    value <lam, p>, approached but never reached.
    """

    value: Fraction
    attained: bool
    witness: tuple | None


def _floor_sqrt(x: Fraction) -> int:
    """Largest integer whose square is <= x (x >= 0)."""
    return isqrt(x.numerator * x.denominator) // x.denominator


def tail_support(t: TailSequence, lam: Vec) -> tuple[Fraction, int | None]:
    """(inf_j <lam, beta_j>, attaining j or None when unattained)."""
    base = dot(lam, t.p)
    a = dot(lam, t.q)
    c = dot(lam, t.r)
    if a == 0:
        if c == 0:
            return base, 1
        return base, None
    if c == 0:
        return base + a, 1
    # minimize a*j + c/j over integers j >= 1: check the floor/ceil of the
    # real minimizer sqrt(c/a), clamped to 1
    lo = max(1, _floor_sqrt(c / a))
    best_j = lo
    best = a * lo + c / Fraction(lo)
    hi_val = a * (lo + 1) + c / Fraction(lo + 1)
    if hi_val < best:
        best, best_j = hi_val, lo + 1
    return base + best, best_j


def support(body: GeneratorFamily, lam: Vec) -> SupportValue:
    """Exact support evaluation at a rational normal lam >= 0, lam != 0."""
    if len(lam) != body.dim:
        raise ValueError(f"normal arity {len(lam)} != dim {body.dim}")
    if not is_nonnegative(lam):
        raise ValueError("normal must be componentwise nonnegative")
    if all(li == 0 for li in lam):
        raise ValueError("normal must be nonzero")
    value: Fraction | None = None
    attained = False
    witness: tuple | None = None
    for k, pt in enumerate(body.points):
        v = dot(lam, pt)
        if value is None or v < value or (v == value and not attained):
            value, attained, witness = v, True, ("point", k)
    for k, t in enumerate(body.tails):
        v, j = tail_support(t, lam)
        if value is None or v < value:
            value = v
            attained = j is not None
            witness = ("tail", k, j) if j is not None else None
        elif v == value and not attained and j is not None:
            attained, witness = True, ("tail", k, j)
    assert value is not None  # validate() guarantees a generator exists
    return SupportValue(value, attained, witness)


@lru_cache(maxsize=256)
def truncate(body: GeneratorFamily, J: int) -> tuple[Vec, ...]:
    """All finite points plus tail points beta_1..beta_J, deduplicated.

    The hulls of these sets increase to P itself; adaptive algorithms double
    J until their certificates verify against the full body.
    """
    if J < 1:
        raise ValueError("truncation level starts at 1")
    out: list[Vec] = []
    seen: set[Vec] = set()
    for pt in body.points:
        if pt not in seen:
            seen.add(pt)
            out.append(pt)
    for t in body.tails:
        for j in range(1, J + 1):
            pt = t.point_at(j)
            if pt not in seen:
                seen.add(pt)
                out.append(pt)
    return tuple(out)


def from_weight_terms(dim: int, terms: Sequence) -> GeneratorFamily:
    """Body of a toric weight family: one generator per term.

    Each term is either a finite weight vector (iterable of rationals) or a
    tail, given as a TailSequence or a (p, q, r) triple of vectors.  The
    resulting body is the Newton body of the sup of the corresponding
    monomial log weights.
    """
    points: list[Vec] = []
    tails_: list[TailSequence] = []
    for term in terms:
        if isinstance(term, TailSequence):
            tails_.append(term)
            continue
        items = list(term)
        if len(items) == 3 and all(
                not isinstance(x, (int, str, Fraction)) for x in items):
            tails_.append(tail(items[0], items[1], items[2]))
        else:
            points.append(as_vec(items))
    if not points and not tails_:
        raise BodyValidationError("empty weight family")
    return validate(GeneratorFamily(dim, tuple(points), tuple(tails_)))
