"""Static SVG pictures of a scaled body, in the plane or on a 2D slice.

The picture combines three exact layers: the lower boundary of the scaled
truncated hull (a polyline; the truncation level is printed on the canvas
since deeper tail points would nudge it), the lattice points colored by
monomial membership, and dashed asymptote lines taken from the bounded
asymptote enumeration.  Bodies with more than two coordinates are drawn on
an axis-aligned slice that fixes all but two of them at nonnegative
integers; the fixed values join the membership queries and the boundary LPs
as extra constraints.

Output is plain SVG 1.1 text, built with fixed-precision coordinates so a
given body, scale, and slice always render byte for byte the same.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping

from .asymptotes import enumerate_asymp
from .body import GeneratorFamily, truncate
from .bodyfile import body_hash
from .exact import ONE, ZERO, RationalLike, Vec, format_rat, rat, vec_scale
from .ideal import contains_monomial
from .simplex import LpError, simplex_max

_SIZE = 480
_MARGIN = 46
_SPAN = _SIZE - 2 * _MARGIN


def _px(value: float) -> str:
    return f"{value:.2f}"


class _Frame:
    """Affine map from world coordinates [0, bound]^2 to the SVG canvas."""

    def __init__(self, bound: int):
        self.bound = bound

    def x(self, wx: Fraction | float) -> str:
        return _px(_MARGIN + float(wx) / self.bound * _SPAN)

    def y(self, wy: Fraction | float) -> str:
        return _px(_MARGIN + _SPAN - float(wy) / self.bound * _SPAN)


def _check_slice(body: GeneratorFamily,
                 fixed: Mapping[int, RationalLike] | None) -> dict[int, int]:
    given = {} if fixed is None else dict(fixed)
    out: dict[int, int] = {}
    for k, v in given.items():
        if not isinstance(k, int) or not 1 <= k <= body.dim:
            raise ValueError(f"slice coordinate {k!r} out of range 1..{body.dim}")
        vr = rat(v)
        if vr.denominator != 1 or vr < 0:
            raise ValueError(
                f"slice value for x{k} must be a nonnegative integer, got {vr}")
        out[k] = int(vr)
    if len(out) != body.dim - 2:
        raise ValueError(
            f"need an axis-aligned 2D slice: fix exactly {body.dim - 2} of "
            f"{body.dim} coordinates, got {len(out)}")
    return out


def _min_coord_lp(columns: tuple[Vec, ...], objective_axis: int,
                  upper: list[tuple[int, Fraction]],
                  equal: list[tuple[int, Fraction]]) -> Fraction | None:
    """Minimize coordinate ``objective_axis`` over the hull of ``columns``
    intersected with per-coordinate bounds; None when infeasible.

    ``upper`` entries constrain sum_w w*g[i] <= cap (slack added), ``equal``
    entries pin the coordinate exactly.  All data is exact.
    """
    n_cols = len(columns)
    slacks = len(upper)
    width = n_cols + slacks
    rows = [[ONE] * n_cols + [ZERO] * slacks]
    rhs = [ONE]
    for s, (axis, cap) in enumerate(upper):
        rows.append([g[axis] for g in columns]
                    + [ONE if t == s else ZERO for t in range(slacks)])
        rhs.append(cap)
    for axis, cap in equal:
        rows.append([g[axis] for g in columns] + [ZERO] * slacks)
        rhs.append(cap)
    cost = [-g[objective_axis] for g in columns] + [ZERO] * slacks
    try:
        status, _, _, obj = simplex_max(rows, rhs, cost, ZERO, ONE)
    except LpError:
        return None
    assert status == "optimal", "bounded by construction"
    return -obj


def _boundary(columns: tuple[Vec, ...], ax: int, ay: int,
              fixed_caps: list[tuple[int, Fraction]], bound: int,
              samples: int) -> list[tuple[Fraction, Fraction]]:
    """Sampled lower boundary of the slice region, leftmost point exact."""
    x_min = _min_coord_lp(columns, ax, fixed_caps, [])
    if x_min is None or x_min > bound:
        return []
    pts: list[tuple[Fraction, Fraction]] = []
    step = Fraction(bound, samples)
    xs = [x_min] + [k * step for k in range(samples + 1) if k * step > x_min]
    for x in xs:
        y = _min_coord_lp(columns, ay, fixed_caps + [(ax, x)], [])
        if y is not None:
            pts.append((x, y))
    return pts


def _asymptote_lines(body: GeneratorFamily, c: Fraction, ax: int, ay: int,
                     fixed: dict[int, int],
                     bound: int) -> list[tuple[str, Fraction]]:
    """Dashed lines of the scaled picture: ("v", x0) or ("h", y0).

    A subspace contributes when it pins exactly one free coordinate and its
    fixed-coordinate offsets agree with the slice after scaling.  Only the
    smallest offset per axis is drawn: it marks the face the boundary curve
    flattens toward, and parallel subspaces deeper inside that face would
    cross the slice region rather than bound it.
    """
    offset_bound = max(1, math.ceil(Fraction(bound) / c))
    report = enumerate_asymp(body, offset_bound)
    best: dict[str, Fraction] = {}
    for k in range(1, body.dim):
        for sub in report.prime_at(k):
            on_free = [i for i in sub.fixed if i in (ax, ay)]
            if len(on_free) != 1:
                continue
            if any(c * sub.offset_of(i) != fixed[i]
                   for i in sub.fixed if i in fixed):
                continue
            kind = "v" if on_free[0] == ax else "h"
            off = c * sub.offset_of(on_free[0])
            if off <= bound and (kind not in best or off < best[kind]):
                best[kind] = off
    return sorted(best.items())


def plot_slice(body: GeneratorFamily,
               fixed: Mapping[int, RationalLike] | None,
               c: RationalLike,
               *, bound: int | None = None, truncation: int = 32,
               samples: int = 96) -> str:
    """Render the scaled body ``c*P`` (or its slice) as an SVG document."""
    cf = rat(c)
    if cf <= 0:
        raise ValueError(f"scale must be positive, got {cf}")
    if truncation < 1 or samples < 8:
        raise ValueError("truncation must be >= 1 and samples >= 8")
    slice_at = _check_slice(body, fixed)
    ax, ay = [i for i in range(1, body.dim + 1) if i not in slice_at]

    if bound is None:
        snap = max(
            [pt[i - 1] for pt in body.points for i in (ax, ay)]
            + [t.p[i - 1] + t.q[i - 1] + t.r[i - 1]
               for t in body.tails for i in (ax, ay)])
        bound = max(4, math.ceil(cf * snap) + 1)
    if bound < 1:
        raise ValueError("bound must be at least 1")

    columns = tuple(vec_scale(g, cf) for g in truncate(body, truncation))
    fixed_caps = [(k - 1, Fraction(v)) for k, v in sorted(slice_at.items())]
    boundary = _boundary(columns, ax - 1, ay - 1, fixed_caps, bound, samples)
    dashes = _asymptote_lines(body, cf, ax, ay, slice_at, bound)

    frame = _Frame(bound)
    top = _px(_MARGIN)
    bottom = _px(_MARGIN + _SPAN)
    left = _px(_MARGIN)
    right = _px(_MARGIN + _SPAN)

    out: list[str] = []
    out.append('<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
               f'width="{_SIZE}" height="{_SIZE}" '
               f'viewBox="0 0 {_SIZE} {_SIZE}">')
    slice_note = ", ".join(f"x{k}={v}" for k, v in sorted(slice_at.items()))
    out.append(f"<title>scaled body slice</title>")
    out.append(f"<desc>body {body_hash(body)} scale {format_rat(cf)}"
               + (f" slice {slice_note}" if slice_note else "")
               + f" truncation {truncation} bound {bound}</desc>")
    out.append(f'<rect width="{_SIZE}" height="{_SIZE}" fill="#ffffff"/>')
    out.append('<defs><clipPath id="frame">'
               f'<rect x="{left}" y="{top}" width="{_SPAN}.00" '
               f'height="{_SPAN}.00"/></clipPath></defs>')

    # axes and integer ticks
    tick = max(1, bound // 8)
    out.append(f'<g stroke="#333333" stroke-width="1">'
               f'<line x1="{left}" y1="{bottom}" x2="{right}" y2="{bottom}"/>'
               f'<line x1="{left}" y1="{bottom}" x2="{left}" y2="{top}"/></g>')
    labels = ['<g font-family="sans-serif" font-size="11" fill="#333333">']
    grid = ['<g stroke="#eeeeee" stroke-width="1">']
    for v in range(0, bound + 1, tick):
        px, py = frame.x(v), frame.y(v)
        if v:
            grid.append(f'<line x1="{px}" y1="{top}" x2="{px}" y2="{bottom}"/>')
            grid.append(f'<line x1="{left}" y1="{py}" x2="{right}" y2="{py}"/>')
        labels.append(f'<text x="{px}" y="{_px(_MARGIN + _SPAN + 16)}" '
                      f'text-anchor="middle">{v}</text>')
        labels.append(f'<text x="{_px(_MARGIN - 8)}" y="{py}" '
                      f'text-anchor="end" dominant-baseline="middle">{v}</text>')
    labels.append(f'<text x="{right}" y="{_px(_MARGIN + _SPAN + 32)}" '
                  f'text-anchor="end">x{ax}</text>')
    labels.append(f'<text x="{_px(_MARGIN - 8)}" y="{_px(_MARGIN - 10)}" '
                  f'text-anchor="end">x{ay}</text>')
    grid.append("</g>")
    out += grid

    out.append('<g clip-path="url(#frame)">')
    for kind, off in dashes:
        if kind == "v":
            px = frame.x(off)
            out.append(f'<line x1="{px}" y1="{top}" x2="{px}" y2="{bottom}" '
                       'stroke="#c05020" stroke-width="1.5" '
                       'stroke-dasharray="7 5"/>')
        else:
            py = frame.y(off)
            out.append(f'<line x1="{left}" y1="{py}" x2="{right}" y2="{py}" '
                       'stroke="#c05020" stroke-width="1.5" '
                       'stroke-dasharray="7 5"/>')
    if boundary:
        first = boundary[0]
        coords = [f"{frame.x(first[0])},{_px(_MARGIN - 4)}"]
        coords += [f"{frame.x(x)},{frame.y(y)}" for x, y in boundary]
        out.append(f'<polyline points="{" ".join(coords)}" fill="none" '
                   'stroke="#1f5fbf" stroke-width="2"/>')
    out.append("</g>")

    dots = ['<g stroke-width="1">']
    for a in range(bound + 1):
        for b in range(bound + 1):
            alpha = [0] * body.dim
            alpha[ax - 1], alpha[ay - 1] = a, b
            for k, v in slice_at.items():
                alpha[k - 1] = v
            inside = contains_monomial(body, cf, tuple(alpha))
            style = ('fill="#1a7f37" stroke="#1a7f37"' if inside
                     else 'fill="#ffffff" stroke="#999999"')
            dots.append(f'<circle cx="{frame.x(a)}" cy="{frame.y(b)}" '
                        f'r="3.5" {style}/>')
    dots.append("</g>")
    out += dots

    caption = f"c = {format_rat(cf)}, truncated at j = {truncation}"
    if slice_note:
        caption += f", slice {slice_note}"
    if not boundary:
        caption += " (slice region empty or out of view)"
    labels.append(f'<text x="{left}" y="{_px(_MARGIN - 10)}" '
                  f'text-anchor="start">{caption}</text>')
    labels.append("</g>")
    out += labels
    out.append("</svg>")
    return "\n".join(out) + "\n"
