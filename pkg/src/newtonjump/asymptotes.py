"""Asymptotic coordinate subspaces of a Newton body.

A coordinate affine subspace ``{x : x_i = a_i for i in I}`` is asymptotic
to the body P when it misses the interior of P yet lies at distance zero
from P.  Both conditions live entirely on the fixed coordinates, because P
is upward closed in every free direction: the subspace meets int P exactly
when the offset vector is interior to the closed projection of P onto I,
and its distance to P vanishes exactly when the offset vector belongs to
that closed projection.  :func:`newtonjump.body.project` returns the closed
projection as a generator family, so the two certified membership
predicates decide the geometry outright.

Enumeration targets subspaces whose offsets are positive integers, the
qualification the jumping-number machinery cares about.  Candidate offsets
are capped per coordinate by the largest generator coordinate at the first
tail index; past that cap a boundary offset can still arise when a decaying
tail coordinate races a growing one, so the caps are a documented policy,
not a completeness claim, and the report carries the caps it used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Mapping, Sequence

from .body import GeneratorFamily, check_subset, project, support
from .exact import ONE, RationalLike, Vec, ZERO, format_rat, rat
from .membership import (
    MembershipVerdict,
    SeparatingNormal,
    is_attained,
    is_in_closure,
    is_interior,
)


class InconsistencyError(AssertionError):
    """Two certified predicates contradicted each other.

    Raised when a subspace that verified as asymptotic yields a closure
    that verifies as non-asymptotic.  That can only mean a bug in the
    certificates or a caller declaring a coordinate "constant" that the
    underlying subspace does not actually keep constant; it is never a
    plain bad-input condition.
    """


@dataclass(frozen=True)
class CoordinateSubspace:
    """The affine subspace fixing ``x_i = offsets[pos]`` for i in ``fixed``.

    ``fixed`` is sorted and 1-based, ``offsets`` runs parallel to it.  At
    least one coordinate must be fixed and at least one left free; that is
    checked against a body's dimension at the point of use, since the
    subspace itself does not know the ambient dimension.
    """

    fixed: tuple[int, ...]
    offsets: Vec

    def offset_of(self, i: int) -> Fraction:
        return self.offsets[self.fixed.index(i)]

    def contains(self, other: "CoordinateSubspace") -> bool:
        """Set containment: self fixes fewer coordinates, at equal offsets."""
        return set(self.fixed) <= set(other.fixed) and all(
            other.offset_of(i) == a for i, a in zip(self.fixed, self.offsets))

    def label(self) -> str:
        return ", ".join(f"x{i}={format_rat(a)}"
                         for i, a in zip(self.fixed, self.offsets))


def subspace(assignment: Mapping[int, RationalLike]) -> CoordinateSubspace:
    """Build a subspace from a ``{coordinate: offset}`` mapping."""
    items = sorted((int(i), rat(a)) for i, a in assignment.items())
    return CoordinateSubspace(tuple(i for i, _ in items),
                              tuple(a for _, a in items))


def _check_subspace(body: GeneratorFamily, A: CoordinateSubspace) -> None:
    idx = check_subset(A.fixed, body.dim, proper=True)
    if idx != A.fixed:
        raise ValueError("fixed coordinates must be sorted and distinct")
    if len(A.offsets) != len(A.fixed):
        raise ValueError(
            f"offset arity {len(A.offsets)} != |I| = {len(A.fixed)}")


@dataclass(frozen=True)
class AsymptoticVerdict:
    """Both halves of the asymptotic test, certificates included.

    ``closure`` answers "is the offset vector in the closed projection",
    ``interior`` answers "is it interior to that projection"; asymptotic
    means the first holds and the second fails.
    """

    answer: bool
    closure: MembershipVerdict
    interior: MembershipVerdict


def is_asymptotic(body: GeneratorFamily,
                  A: CoordinateSubspace) -> AsymptoticVerdict:
    """Decide whether A avoids int P while lying at distance zero from P.

    Upward closedness collapses both conditions onto the fixed
    coordinates: A meets int P iff the offset vector is interior to the
    closed projection of P onto A.fixed, and d(A, P) = 0 iff the offset
    vector lies in that projection.  So asymptotic means exactly "offset
    vector on the boundary of the closed projection".
    """
    _check_subspace(body, A)
    proj = project(body, A.fixed)
    if any(a < 0 for a in A.offsets):
        # Strictly outside the nonnegative orthant; certify both misses
        # with the coordinate normal of one offending coordinate.
        pos = min(i for i, a in enumerate(A.offsets) if a < 0)
        lam = tuple(ONE if i == pos else ZERO for i in range(len(A.offsets)))
        h = support(proj, lam)
        miss = MembershipVerdict(
            False, SeparatingNormal(lam, A.offsets[pos] - h.value), 0)
        return AsymptoticVerdict(False, miss, miss)
    closure = is_in_closure(proj, A.offsets)
    interior = is_interior(proj, A.offsets)
    return AsymptoticVerdict(closure.answer and not interior.answer,
                             closure, interior)


def satisfies_star(body: GeneratorFamily, A: CoordinateSubspace) -> bool:
    """Asymptotic with every offset a positive integer.

    The integrality gate runs first; subspaces like ``{x_i = 0}`` can be
    asymptotic yet never qualify, and rejecting them costs nothing.
    """
    _check_subspace(body, A)
    if not all(a > 0 and a.denominator == 1 for a in A.offsets):
        return False
    return is_asymptotic(body, A).answer


def largest_asymp_closure(body: GeneratorFamily, A: CoordinateSubspace,
                          constant: Sequence[int] | None = None,
                          ) -> CoordinateSubspace:
    """The subspace fixing only the coordinates declared constant.

    A caller holding a general affine subspace S inside A, constant in
    exactly the coordinates ``constant`` (a subset of ``A.fixed``),
    presents its coordinate hull here; the result keeps those coordinates
    at A's offsets and frees the rest.  For an honest declaration the
    result is asymptotic whenever S is, because the dropped coordinates
    are directions in which the touching escapes to infinity.  Omitting
    ``constant`` keeps every fixed coordinate, returning A itself.

    Whenever the *input* verifies as asymptotic the output is re-verified,
    and a non-asymptotic result raises :class:`InconsistencyError`: either
    a certificate is wrong or the declaration dropped a coordinate that S
    keeps constant after all.
    """
    _check_subspace(body, A)
    if constant is None:
        keep = A.fixed
    else:
        keep = check_subset(constant, body.dim)
        if not set(keep) <= set(A.fixed):
            raise ValueError("constant coordinates must be fixed in A")
    result = CoordinateSubspace(keep, tuple(A.offset_of(i) for i in keep))
    if result == A:
        return A
    if is_asymptotic(body, A).answer:
        if not is_asymptotic(body, result).answer:
            raise InconsistencyError(
                f"closure {{{result.label()}}} of asymptotic "
                f"{{{A.label()}}} failed to verify as asymptotic")
    return result


_PRUNE_NOTE = ("offsets per coordinate capped at min(bound, floor of the "
               "largest generator coordinate at the first tail index); "
               "boundary offsets beyond a cap are not searched")


@dataclass(frozen=True)
class AsympReport:
    """Integer-offset asymptotic subspaces, grouped by dimension.

    ``asymp_prime[k-1]`` lists every qualifying subspace of dimension k;
    ``asymp[k-1]`` keeps those not contained in a higher-dimensional kept
    subspace.  ``attained`` pairs each listed subspace with whether some
    point of P actually realizes its fixed coordinates.
    """

    dim: int
    offset_bound: int
    coordinate_caps: tuple[int, ...]
    asymp_prime: tuple[tuple[CoordinateSubspace, ...], ...]
    asymp: tuple[tuple[CoordinateSubspace, ...], ...]
    attained: tuple[tuple[CoordinateSubspace, bool], ...]
    note: str = _PRUNE_NOTE

    def _at(self, table, k: int) -> tuple[CoordinateSubspace, ...]:
        if not 1 <= k <= self.dim - 1:
            raise ValueError(f"subspace dimension {k} out of range")
        return table[k - 1]

    def prime_at(self, k: int) -> tuple[CoordinateSubspace, ...]:
        return self._at(self.asymp_prime, k)

    def maximal_at(self, k: int) -> tuple[CoordinateSubspace, ...]:
        return self._at(self.asymp, k)

    def attained_of(self, A: CoordinateSubspace) -> bool:
        for sub, flag in self.attained:
            if sub == A:
                return flag
        raise KeyError(A.label())


def _coordinate_caps(body: GeneratorFamily,
                     offset_bound: int) -> tuple[int, ...]:
    caps = []
    for i in range(body.dim):
        best = ZERO
        for pt in body.points:
            best = max(best, pt[i])
        for t in body.tails:
            best = max(best, t.p[i] + t.q[i] + t.r[i])
        caps.append(min(offset_bound, math.floor(best)))
    return tuple(caps)


def enumerate_asymp(body: GeneratorFamily, offset_bound: int) -> AsympReport:
    """List integer-offset asymptotic subspaces up to the given bound.

    Candidates run over every proper nonempty fixed set I and every offset
    vector with entries in 1..min(offset_bound, cap_i); survivors of the
    boundary test form the per-dimension prime lists.  The maximal lists
    are filtered top-down: a subspace is dropped exactly when a kept
    higher-dimensional subspace contains it, which for coordinate
    subspaces means fixing fewer coordinates at the same offsets.
    """
    if offset_bound < 1:
        raise ValueError("offset bound must be at least 1")
    n = body.dim
    caps = _coordinate_caps(body, offset_bound)
    prime: dict[int, list[CoordinateSubspace]] = {k: [] for k in range(1, n)}
    attained: list[tuple[CoordinateSubspace, bool]] = []
    for size in range(1, n):
        for I in combinations(range(1, n + 1), size):
            proj = project(body, I)
            ranges = [range(1, caps[i - 1] + 1) for i in I]
            for offs in product(*ranges):
                a = tuple(Fraction(o) for o in offs)
                if not is_in_closure(proj, a).answer:
                    continue
                if is_interior(proj, a).answer:
                    continue
                A = CoordinateSubspace(I, a)
                prime[n - size].append(A)
                attained.append((A, is_attained(body, I, a).answer))
    maximal: dict[int, list[CoordinateSubspace]] = {}
    for k in range(n - 1, 0, -1):
        maximal[k] = [
            A for A in prime[k]
            if not any(big.contains(A)
                       for m in range(k + 1, n)
                       for big in maximal[m])
        ]
    return AsympReport(
        dim=n,
        offset_bound=offset_bound,
        coordinate_caps=caps,
        asymp_prime=tuple(tuple(prime[k]) for k in range(1, n)),
        asymp=tuple(tuple(maximal[k]) for k in range(1, n)),
        attained=tuple(attained),
    )
