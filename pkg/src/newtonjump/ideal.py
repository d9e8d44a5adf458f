"""Monomial membership and minimal generators of the scaled-body ideal.

A lattice exponent alpha belongs to the ideal at scale c exactly when
alpha + 1 is interior to c times the body.  The set of such alpha is upward
closed, so it is determined by its finitely many minimal elements (Dickson's
lemma); those are computed inside an explicit box, with a certified flag
saying whether the box provably captured every minimal generator.

Completeness is decidable because the gauge of alpha + 1 converges, as any
subset T of coordinates grows, to the gauge of the projected body at the
remaining coordinates.  A minimal generator with some coordinate >= B exists
iff for some nonempty T and some profile beta on the complement, the column
{beta} x [0,inf)^T eventually enters the ideal (projected gauge > c) but has
not entered by T-coordinates B-1.  Checking all (T, beta) pairs over the box
faces certifies the flag in both directions.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .body import GeneratorFamily, Vec, project, scale, truncate
from .gauge import GaugeInfinite, gauge
from .membership import is_interior


@dataclass(frozen=True)
class MonomialIdeal:
    """Minimal exponents of an upward-closed lattice set, inside a box."""

    dim: int
    minimal_generators: tuple[tuple[int, ...], ...]
    complete: bool


@lru_cache(maxsize=64)
def _scaled(body: GeneratorFamily, c: Fraction) -> GeneratorFamily:
    return scale(body, c)


def _check_exponent(body: GeneratorFamily, alpha) -> tuple[int, ...]:
    a = tuple(alpha)
    if len(a) != body.dim:
        raise ValueError(f"exponent arity {len(a)} != dim {body.dim}")
    out = []
    for x in a:
        if x != int(x) or x < 0:
            raise ValueError("exponents must be nonnegative integers")
        out.append(int(x))
    return tuple(out)


def contains_monomial(body: GeneratorFamily, c: Fraction, alpha) -> bool:
    """Whether z^alpha lies in the ideal at scale c: alpha+1 interior to c*P."""
    c = Fraction(c)
    if c <= 0:
        raise ValueError("scale must be positive")
    a = _check_exponent(body, alpha)
    u = tuple(Fraction(x + 1) for x in a)
    return is_interior(_scaled(body, c), u).answer


def _default_box(body: GeneratorFamily, c: Fraction) -> int:
    coords = [x for g in truncate(body, 1) for x in g]
    top = max(coords) if coords else Fraction(1)
    return max(2, math.ceil(4 * c * top))


def minimal_generators(body: GeneratorFamily, c: Fraction,
                       box: int | None = None) -> MonomialIdeal:
    """Minimal exponents inside [0, box]^n, with a certified complete flag.

    When box is omitted a heuristic box is tried and doubled a few times
    until the result is certifiably complete; an explicit box is used as
    given and may come back complete=False.
    """
    c = Fraction(c)
    if c <= 0:
        raise ValueError("scale must be positive")
    if box is None:
        B = _default_box(body, c)
        for _ in range(4):
            ideal = _generators_in_box(body, c, B)
            if ideal.complete:
                return ideal
            B *= 2
        return _generators_in_box(body, c, B)
    if box < 1:
        raise ValueError("box bound must be at least 1")
    return _generators_in_box(body, c, box)


def _generators_in_box(body: GeneratorFamily, c: Fraction,
                       B: int) -> MonomialIdeal:
    n = body.dim
    member: dict[tuple[int, ...], bool] = {}

    def query(alpha: tuple[int, ...]) -> bool:
        got = member.get(alpha)
        if got is None:
            got = contains_monomial(body, c, alpha)
            member[alpha] = got
        return got

    # lexicographic scan; upward closure means a point with a member below
    # it needs no LP at all, so only the staircase frontier is queried
    inside: set[tuple[int, ...]] = set()
    for alpha in itertools.product(range(B + 1), repeat=n):
        below = any(
            alpha[:i] + (alpha[i] - 1,) + alpha[i + 1:] in inside
            for i in range(n) if alpha[i] > 0)
        if below or query(alpha):
            inside.add(alpha)
            member[alpha] = True

    minimal = sorted(
        alpha for alpha in inside
        if all(alpha[i] == 0
               or alpha[:i] + (alpha[i] - 1,) + alpha[i + 1:] not in inside
               for i in range(n)))

    complete = all(max(g) < B for g in minimal) and _box_certified(
        body, c, B, query)
    return MonomialIdeal(n, tuple(minimal), complete)


def _box_certified(body: GeneratorFamily, c: Fraction, B: int, query) -> bool:
    """No column escaping the box enters the ideal later than B-1."""
    n = body.dim
    coords = tuple(range(1, n + 1))
    for size in range(1, n + 1):
        for T in itertools.combinations(coords, size):
            rest = tuple(i for i in coords if i not in T)
            if not rest:
                # all coordinates grow: the gauge diverges, so the diagonal
                # column always enters eventually
                if not query(tuple(B - 1 for _ in coords)):
                    return False
                continue
            proj = project(body, rest)
            for beta in itertools.product(range(B), repeat=len(rest)):
                u = tuple(Fraction(b + 1) for b in beta)
                try:
                    if gauge(proj, u).value <= c:
                        continue  # column never enters, no generator in it
                except GaugeInfinite:
                    pass  # projection reaches the origin: always enters
                full = [B - 1] * n
                for pos, i in enumerate(rest):
                    full[i - 1] = beta[pos]
                if not query(tuple(full)):
                    return False
    return True
