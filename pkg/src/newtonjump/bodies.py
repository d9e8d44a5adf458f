"""Example bodies used across the test-suite, docs, and CLI demos.

Each constructor returns a fresh validated family.  The four cover the
phenomenology the library cares about:

* :func:`cusp_body` -- polyhedral, the Newton body of the monomial pair
  z1^2, z2^3; one facet x/2 + y/3 = 1, no asymptotes, no cluster points.
* :func:`hyperbola_body` -- the staircase hull of (1 + 1/j, 1 + j) and its
  mirror, whose boundary approaches the lines x = 1 and y = 1 without
  touching them; jumping numbers accumulate at every positive integer.
* :func:`shifted_hyperbola_body` -- one branch with the vertical asymptote
  moved to x = 1/2 plus the point (3, 1), pinning the horizontal boundary
  offset to an attained value; cluster points form the progression 2Z+.
* :func:`hyperbola_prism` -- the hyperbola staircase laid in the plane
  x3 = 1 of R^3 together with the off-plane point (1, 1, 2); the planes
  {x1 = 1}, {x2 = 1}, {x3 = 1} are asymptotic and attained, while the lines
  {x1 = 1, x3 = 1} and {x2 = 1, x3 = 1} are asymptotic, unattained, and
  contained in asymptotic planes; they witness every integer cluster point.
"""

from __future__ import annotations

from .body import GeneratorFamily, family, tail


def cusp_body() -> GeneratorFamily:
    return family(points=[(2, 0), (0, 3)])


def hyperbola_body() -> GeneratorFamily:
    return family(tails=[
        tail(p=(1, 1), q=(0, 1), r=(1, 0)),
        tail(p=(1, 1), q=(1, 0), r=(0, 1)),
    ])


def shifted_hyperbola_body() -> GeneratorFamily:
    return family(points=[(3, 1)],
                  tails=[tail(p=("1/2", 1), q=(0, 1), r=(1, 0))])


def hyperbola_prism() -> GeneratorFamily:
    return family(points=[(1, 1, 2)],
                  tails=[
                      tail(p=(1, 1, 1), q=(0, 1, 0), r=(1, 0, 0)),
                      tail(p=(1, 1, 1), q=(1, 0, 0), r=(0, 1, 0)),
                  ])


def example_bodies() -> dict[str, GeneratorFamily]:
    return {
        "cusp": cusp_body(),
        "hyperbola": hyperbola_body(),
        "shifted_hyperbola": shifted_hyperbola_body(),
        "hyperbola_prism": hyperbola_prism(),
    }
