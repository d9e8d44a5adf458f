"""Exact simplex over an ordered field, and the three LP shapes the
membership machinery uses.

The solver is a dense two-phase tableau simplex with Bland's rule, generic
over any exact ordered field (``Fraction`` or the internal Q(eps)).  Every
row gets an artificial variable; artificials are never allowed to re-enter,
and their reduced costs at the end read off the exact dual multipliers.
All certificates are re-verified by exact arithmetic before being returned;
a verification failure is a bug, not an answer, and raises.

LP shapes:

* :func:`lp_dominate` -- maximize the uniform slack delta subject to
  ``sum_g w_g * g + delta * 1 <= u``, ``sum w = 1``, ``w >= 0``.  Strict
  domination holds iff delta* > 0, weak domination iff delta* >= 0.  The
  dual normal satisfies ``<lam, u> - min_g <lam, g> = delta*``.
* :func:`lp_strict_dominate` / :func:`lp_strict_dominate_eps` -- the public
  strict-domination predicates with exactly one of (weights, normal) set.
* :func:`lp_gauge` -- maximize total mass ``sum v`` subject to
  ``sum_g v_g * g <= u``, ``v >= 0``; the optimum is the gauge of u in the
  hull of the given points, and the dual normal prices every point >= 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Generic, Sequence, TypeVar

from .exact import (
    EpsDegreeOverflow,
    EpsRational,
    EpsVec,
    ExactError,
    ONE,
    Vec,
    ZERO,
    _Frac,
    _Poly,
    dot,
)

S = TypeVar("S")  # ordered-field scalar


class LpError(ExactError):
    """Internal LP invariant violation (certificate failed re-verification)."""


# ---------------------------------------------------------------------------
# Core solver


def simplex_max(A: Sequence[Sequence[S]], b: Sequence[S], c: Sequence[S],
                zero: S, one: S) -> tuple[str, list[S], list[S], S]:
    """Maximize c.x subject to A x = b, x >= 0.

    Rows with negative right-hand side are flipped, then every row gets an
    artificial variable; phase 1 minimizes the artificial mass, phase 2 the
    real objective.  Bland's rule guarantees termination.

    Returns (status, x, y, objective) where status is "optimal" or
    "unbounded", x has one entry per structural column, and y is the exact
    dual vector (one entry per row, in the orientation of the *input* rows).
    Raises LpError when the program is infeasible, since every LP issued by
    this package is feasible by construction.
    """
    m = len(b)
    n = len(c)
    rows: list[list[S]] = []
    rhs: list[S] = []
    flipped: list[bool] = []
    for i in range(m):
        if len(A[i]) != n:
            raise ValueError("ragged LP matrix")
        neg = b[i] < zero
        flipped.append(neg)
        if neg:
            rows.append([zero - a for a in A[i]])
            rhs.append(zero - b[i])
        else:
            rows.append(list(A[i]))
            rhs.append(b[i])

    # tableau columns: n structural + m artificial
    total = n + m
    tab = [rows[i] + [one if j == i else zero for j in range(m)]
           for i in range(m)]
    basis = list(range(n, n + m))

    def pivot(r: int, col: int) -> None:
        prow = tab[r]
        inv = one / prow[col]
        tab[r] = [inv * a for a in prow]
        rhs[r] = inv * rhs[r]
        for i in range(m):
            if i == r:
                continue
            f = tab[i][col]
            if f == zero:
                continue
            ri = tab[i]
            pr = tab[r]
            tab[i] = [ri[j] - f * pr[j] for j in range(total)]
            rhs[i] = rhs[i] - f * rhs[r]
        basis[r] = col

    # Bland's rule both ways: the entering column is the lowest-index one
    # with positive reduced cost, priced straight off the current tableau
    # (red_j = c_j - sum_i cost[basis[i]] * tab[i][j]); ties in the ratio
    # test break toward the lowest basis index.
    def solve(cost: list[S], allow: list[bool]) -> str:
        while True:
            enter = -1
            for j in range(total):
                if not allow[j]:
                    continue
                in_basis = False
                for bi in basis:
                    if bi == j:
                        in_basis = True
                        break
                if in_basis:
                    continue
                acc = cost[j]
                for i in range(m):
                    cb = cost[basis[i]]
                    if cb != zero and tab[i][j] != zero:
                        acc = acc - cb * tab[i][j]
                if acc > zero:
                    enter = j
                    break
            if enter < 0:
                return "optimal"
            leave = -1
            best = None
            for i in range(m):
                if tab[i][enter] > zero:
                    ratio = rhs[i] / tab[i][enter]
                    if best is None or ratio < best or (
                            ratio == best and basis[i] < basis[leave]):
                        best = ratio
                        leave = i
            if leave < 0:
                return "unbounded"
            pivot(leave, enter)

    # phase 1: drive artificials to zero
    cost1 = [zero] * n + [zero - one] * m
    allow1 = [True] * total
    status = solve(cost1, allow1)
    if status != "optimal":
        raise LpError("phase-1 LP unbounded; malformed program")
    for i in range(m):
        if basis[i] >= n and rhs[i] != zero:
            raise LpError("LP infeasible; callers construct feasible programs")

    # artificials still basic (at zero) must leave now: phase 2 bars them
    # from entering but a later pivot could regrow a basic one.  A degenerate
    # pivot on any nonbasic structural entry evicts; an all-zero structural
    # row is redundant and its rhs stays zero under every phase-2 pivot.
    for i in range(m):
        if basis[i] >= n:
            for j in range(n):
                if tab[i][j] != zero and all(basis[k] != j for k in range(m)):
                    pivot(i, j)
                    break

    # phase 2: real objective, artificials locked out
    cost2 = list(c) + [zero] * m
    allow2 = [True] * n + [False] * m
    status = solve(cost2, allow2)

    x = [zero] * n
    if status == "optimal":
        for i in range(m):
            if basis[i] < n:
                x[basis[i]] = rhs[i]

    # duals: y_r = sum_i cost2[basis[i]] * tab[i][n + r], flipped rows negate
    y = []
    for r in range(m):
        acc = zero
        for i in range(m):
            cb = cost2[basis[i]]
            if cb != zero and tab[i][n + r] != zero:
                acc = acc + cb * tab[i][n + r]
        y.append(zero - acc if flipped[r] else acc)

    obj = zero
    for j in range(n):
        if x[j] != zero and c[j] != zero:
            obj = obj + c[j] * x[j]
    return status, x, y, obj


# ---------------------------------------------------------------------------
# Domination LPs


@dataclass(frozen=True)
class DominationResult(Generic[S]):
    """Outcome of a domination query against finitely many points.

    Exactly one of ``weights`` / ``normal`` is set.  ``margin`` is the
    optimal uniform slack delta*: with weights, ``sum_g w_g g + margin * 1
    <= u`` holds componentwise; with a normal, ``<normal, u> - min_g
    <normal, g> = margin``.  The ``strict`` flag records which predicate was
    decided (margin > 0 versus margin >= 0).
    """

    feasible: bool
    strict: bool
    margin: S
    weights: tuple[S, ...] | None
    normal: tuple[S, ...] | None


def _dominate_field(points: Sequence[Sequence[S]], u: Sequence[S],
                    zero: S, one: S) -> tuple[S, list[S], list[S]]:
    """Max delta with sum w_g g + delta*1 <= u, sum w = 1, w >= 0.

    Returns (delta*, w, lam) with lam >= 0, sum lam = 1 and
    <lam, u> - min_g <lam, g> = delta*.  Exact; verified by the callers.
    """
    if not points:
        raise ValueError("empty point set")
    n = len(u)
    for g in points:
        if len(g) != n:
            raise ValueError("dimension mismatch between points and target")
    k = len(points)
    # columns: w_1..w_k, delta+, delta-, s_1..s_n
    ncols = k + 2 + n
    A: list[list[S]] = []
    b: list[S] = []
    for i in range(n):
        row = [points[g][i] for g in range(k)]
        row += [one, zero - one]
        row += [one if j == i else zero for j in range(n)]
        A.append(row)
        b.append(u[i])
    A.append([one] * k + [zero] * (2 + n))
    b.append(one)
    c = [zero] * k + [one, zero - one] + [zero] * n

    status, x, y, obj = simplex_max(A, b, c, zero, one)
    if status != "optimal":
        raise LpError("domination LP cannot be unbounded")
    w = x[:k]
    lam = y[:n]
    # exact re-verification: primal, dual, and strong duality
    total = zero
    for wi in w:
        if wi < zero:
            raise LpError("negative weight from simplex")
        total = total + wi
    if total != one:
        raise LpError("weights do not sum to one")
    for i in range(n):
        acc = zero
        for g in range(k):
            if w[g] != zero:
                acc = acc + w[g] * points[g][i]
        if acc + obj > u[i]:
            raise LpError("primal slack violated")
    lam_sum = zero
    for li in lam:
        if li < zero:
            raise LpError("negative dual multiplier")
        lam_sum = lam_sum + li
    if lam_sum != one:
        raise LpError("dual normal not normalized")
    best = None
    for g in points:
        v = dot(lam, g)
        if best is None or v < best:
            best = v
    if dot(lam, u) - best != obj:
        raise LpError("strong duality violated")
    return obj, w, lam


def lp_dominate(points: Sequence[Vec], u: Vec,
                strict: bool = True) -> DominationResult[Fraction]:
    """Decide (strict or weak) domination of u by a convex combination."""
    delta, w, lam = _dominate_field(points, u, ZERO, ONE)
    feasible = delta > 0 if strict else delta >= 0
    if feasible:
        return DominationResult(True, strict, delta, tuple(w), None)
    return DominationResult(False, strict, delta, None, tuple(lam))


def lp_strict_dominate(points: Sequence[Vec], u: Vec) -> DominationResult[Fraction]:
    """Strict componentwise domination: sum w_g g < u for convex weights.

    Feasible branch carries the weights; infeasible branch carries an exact
    separating normal lam >= 0, lam != 0 with <lam, u> <= min_g <lam, g>.
    """
    return lp_dominate(points, u, strict=True)


def _series(x: _Frac, degree: int) -> _Poly:
    """Power-series expansion of x in eps, truncated at the given degree."""
    d0 = x.den.eval_at_zero()
    if d0 == 0:
        raise ExactError("no power series: pole at eps = 0")
    num = x.num.coeffs
    den = x.den.coeffs
    out: list[Fraction] = []
    for k in range(degree + 1):
        acc = num[k] if k < len(num) else ZERO
        for j in range(1, k + 1):
            dj = den[j] if j < len(den) else ZERO
            if dj != 0:
                acc -= dj * out[k - j]
        out.append(acc / d0)
    return _Poly(out)


def _eps_weights(points: Sequence[tuple[_Frac, ...]], u: tuple[_Frac, ...],
                 w: Sequence[_Frac], cap: int) -> tuple[EpsRational, ...]:
    """Turn field weights into capped polynomial weights, exactly verified.

    Optimal weights live in Q(eps) but a feasible strict domination always
    admits polynomial weights of low degree: truncate the series, restore
    sum w = 1 through the last active weight, and re-verify.  Failures fall
    through to higher truncation degrees up to the cap.
    """
    support = [i for i, wi in enumerate(w) if not wi.is_zero()]
    zero = _Frac.zero()
    one = _Frac.one()
    for degree in range(cap + 1):
        cand: list[_Frac] = [zero] * len(w)
        acc = zero
        ok = True
        for i in support[:-1]:
            ci = _Frac(_series(w[i], degree))
            if ci.sign() < 0:
                ok = False
                break
            cand[i] = ci
            acc = acc + ci
        if not ok:
            continue
        last = one - acc
        if last.sign() < 0:
            continue
        cand[support[-1]] = last
        feasible = True
        for coord in range(len(u)):
            total = zero
            for i in support:
                if not cand[i].is_zero():
                    total = total + cand[i] * points[i][coord]
            if not total < u[coord]:
                feasible = False
                break
        if feasible:
            try:
                return tuple(EpsRational._from_frac(ci, cap) for ci in cand)
            except (ExactError, EpsDegreeOverflow):
                continue
    raise EpsDegreeOverflow(
        "no polynomial weights within the degree cap certify this domination")


def _from_frac_loose(x: _Frac, cap: int) -> EpsRational:
    """Exact conversion of a polynomial field element, widening the instance
    cap when the honest degree exceeds it (no truncation ever happens)."""
    poly = x.as_poly()
    return EpsRational(poly.coeffs, max(cap, max(0, poly.degree())))


def _eps_normal(lam: Sequence[_Frac], cap: int) -> tuple[EpsRational, ...]:
    """Clear denominators of a dual normal; scale is irrelevant for normals."""
    scale = _Frac.one()
    for li in lam:
        if li.den.degree() > 0 or li.den.eval_at_zero() != 1:
            scale = scale * _Frac(li.den)
    return tuple(_from_frac_loose(li * scale, cap) for li in lam)


def lp_strict_dominate_eps(points: Sequence[EpsVec], u: EpsVec) -> DominationResult[EpsRational]:
    """Strict domination over rationals extended by the infinitesimal eps.

    Same contract as :func:`lp_strict_dominate` with lexicographic
    comparisons.  Certificates come back as EpsRational values: the weights
    via truncated power series (re-verified exactly against the inputs), the
    normal via denominator clearing.  The reported margin is the exact
    slack of the returned certificate, not of the internal field optimum.
    """
    if not points:
        raise ValueError("empty point set")
    cap = max([e.max_degree for e in u]
              + [e.max_degree for g in points for e in g])
    fp = [tuple(e._as_frac() for e in g) for g in points]
    fu = tuple(e._as_frac() for e in u)
    for g in fp:
        if len(g) != len(fu):
            raise ValueError("dimension mismatch between points and target")
    delta, w, lam = _dominate_field(fp, fu, _Frac.zero(), _Frac.one())
    if delta.sign() > 0:
        weights = _eps_weights(fp, fu, w, cap)
        wf = [wi._as_frac() for wi in weights]
        slack = None
        for i in range(len(fu)):
            acc = _Frac.zero()
            for g in range(len(fp)):
                if not wf[g].is_zero():
                    acc = acc + wf[g] * fp[g][i]
            s = fu[i] - acc
            if slack is None or s < slack:
                slack = s
        if slack is None or slack.sign() <= 0:
            raise LpError("eps weights lost strictness")
        return DominationResult(True, True, _from_frac_loose(slack, cap),
                                weights, None)
    normal = _eps_normal(lam, cap)
    nf = [ni._as_frac() for ni in normal]
    mu = _Frac.zero()
    for li, ui in zip(nf, fu):
        mu = mu + li * ui
    best = None
    for g in fp:
        acc = _Frac.zero()
        for li, gi in zip(nf, g):
            acc = acc + li * gi
        if best is None or acc < best:
            best = acc
    margin = mu - best
    if margin.sign() > 0:
        raise LpError("cleared eps normal lost separation")
    return DominationResult(False, True, _from_frac_loose(margin, cap),
                            None, normal)


# ---------------------------------------------------------------------------
# Gauge LP


@dataclass(frozen=True)
class GaugeLpResult:
    """Max total mass sum(v) with sum v_g g <= u, v >= 0 over given points.

    ``unbounded`` means the hull's gauge of u is infinite (some point sits
    at the origin of a coordinate subspace u does not see).  Otherwise
    ``total`` is the hull gauge, ``weights`` attain it, and ``normal`` is an
    exact dual with <normal, g> >= 1 for every point and <normal, u> =
    total.
    """

    unbounded: bool
    total: Fraction
    weights: tuple[Fraction, ...]
    normal: Vec


def lp_gauge(points: Sequence[Vec], u: Vec) -> GaugeLpResult:
    if not points:
        raise ValueError("empty point set")
    n = len(u)
    k = len(points)
    A: list[list[Fraction]] = []
    for i in range(n):
        A.append([points[g][i] for g in range(k)]
                 + [ONE if j == i else ZERO for j in range(n)])
    b = list(u)
    c = [ONE] * k + [ZERO] * n
    status, x, y, obj = simplex_max(A, b, c, ZERO, ONE)
    if status == "unbounded":
        return GaugeLpResult(True, ZERO, (), ())
    v = tuple(x[:k])
    lam = tuple(y)
    total = ZERO
    for vi in v:
        if vi < 0:
            raise LpError("negative mass from gauge LP")
        total += vi
    if total != obj:
        raise LpError("gauge objective mismatch")
    for i in range(n):
        acc = ZERO
        for g in range(k):
            if v[g]:
                acc += v[g] * points[g][i]
        if acc > u[i]:
            raise LpError("gauge primal violated")
    for li in lam:
        if li < 0:
            raise LpError("negative gauge dual")
    for g in points:
        if dot(lam, g) < 1:
            raise LpError("gauge dual prices a point below one")
    if dot(lam, u) != total:
        raise LpError("gauge strong duality violated")
    return GaugeLpResult(False, total, v, lam)
