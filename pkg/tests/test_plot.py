"""SVG slice renderings: exact layers, fixture geometry, determinism.

The drawing has three exact layers (boundary polyline from LPs over the
truncated hull, dashed asymptote lines, lattice dots from the monomial
ideal) so every assertion here is about geometry, not rasterization.
"""

import re
import xml.etree.ElementTree as ET

import pytest

from newtonjump import (cusp_body, hyperbola_body, hyperbola_prism,
                        plot_slice)


def _dashed_lines(svg):
    return [line for line in svg.splitlines() if "stroke-dasharray" in line]


def _polyline(svg):
    got = re.search(r'<polyline points="([^"]+)"', svg)
    return got.group(1) if got else None


def _dots(svg):
    green = svg.count('fill="#1a7f37"')
    white = svg.count('fill="#ffffff" stroke="#999999"')
    return green, white


def test_hyperbola_asymptote_pair():
    svg = plot_slice(hyperbola_body(), None, 1)
    dashes = _dashed_lines(svg)
    assert len(dashes) == 2
    vertical = [d for d in dashes if 'y2="434.00"' in d and 'x1' in d
                and d.count('x1="143.00"')]
    horizontal = [d for d in dashes if 'y1="337.00"' in d]
    # bound 4 maps value 1 to pixel 46 + 388/4 = 143 on x, 434 - 97 on y
    assert len(vertical) == 1 and len(horizontal) == 1


def test_cusp_staircase_dots():
    svg = plot_slice(cusp_body(), None, "5/6")
    assert _dashed_lines(svg) == []
    green, white = _dots(svg)
    # bound 4: all 25 lattice dots except the origin are in the ideal
    assert (green, white) == (24, 1)
    assert "c = 5/6, truncated at j = 32" in svg


def test_prism_slice_matches_the_plane_drawing():
    """Slicing the prism at x3 = 1 must reproduce the hyperbola boundary
    and asymptotes byte for byte; the dot layer legitimately differs
    because dots query the full-dimensional ideal."""
    flat = plot_slice(hyperbola_body(), None, 1)
    sliced = plot_slice(hyperbola_prism(), {3: 1}, 1)
    assert _polyline(sliced) == _polyline(flat)
    assert _dashed_lines(sliced) == _dashed_lines(flat)
    assert ", slice x3=1" in sliced
    assert _dots(sliced) != _dots(flat)


def test_empty_slice_is_labelled():
    svg = plot_slice(hyperbola_prism(), {3: 0}, 1)
    assert _polyline(svg) is None
    assert "(slice region empty or out of view)" in svg
    green, _ = _dots(svg)
    assert green == 0


def test_svg_parses_and_carries_metadata():
    svg = plot_slice(cusp_body(), None, 1, bound=6, truncation=12)
    root = ET.fromstring(svg)
    ns = "{http://www.w3.org/2000/svg}"
    assert root.find(f"{ns}title").text == "scaled body slice"
    desc = root.find(f"{ns}desc").text
    assert "truncation 12" in desc and "bound 6" in desc
    assert re.search(r"body [0-9a-f]{12}", desc)


def test_deterministic_output():
    a = plot_slice(hyperbola_body(), None, "3/2", bound=5)
    b = plot_slice(hyperbola_body(), None, "3/2", bound=5)
    assert a == b


def test_input_validation():
    hyp = hyperbola_body()
    with pytest.raises(ValueError):
        plot_slice(hyp, None, 0)
    with pytest.raises(ValueError):
        plot_slice(hyp, None, 1, truncation=0)
    with pytest.raises(ValueError):
        plot_slice(hyp, None, 1, samples=4)
    with pytest.raises(ValueError):
        plot_slice(hyp, {1: 1}, 1)  # 2D body leaves nothing to slice
    with pytest.raises(ValueError):
        plot_slice(hyperbola_prism(), None, 1)  # 3D body needs one fixed
    with pytest.raises(ValueError):
        plot_slice(hyperbola_prism(), {4: 1}, 1)
    with pytest.raises(ValueError):
        plot_slice(hyperbola_prism(), {3: "1/2"}, 1)
    with pytest.raises(ValueError):
        plot_slice(hyperbola_prism(), {3: -1}, 1)
