"""Shared fixtures: example bodies, random-body builders, strategies."""

from __future__ import annotations

import random
import sys
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from newtonjump import GeneratorFamily, example_bodies, family, tail


def pytest_terminal_summary(terminalreporter):
    """Replay the acceptance gate's per-criterion lines after the run."""
    module = sys.modules.get("test_acceptance")
    for line in getattr(module, "CRITERION_LINES", ()):
        terminalreporter.write_line(line)

# small rational pools keep LP sizes tame while still hitting ties,
# halves, and boundary contacts
COORDS = [Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3, 2),
          Fraction(2), Fraction(3)]
POSITIVE = COORDS[1:] + [Fraction(7, 2)]


@pytest.fixture(scope="session")
def bodies() -> dict[str, GeneratorFamily]:
    return example_bodies()


def random_family(rng: random.Random, dim: int) -> GeneratorFamily:
    """A small valid body: up to 2 points and 2 tails, never empty."""
    points = [tuple(rng.choice(COORDS) for _ in range(dim))
              for _ in range(rng.randrange(3))]
    tails = []
    for _ in range(rng.randrange(3)):
        support = rng.sample(range(dim), rng.randrange(1, dim + 1))
        q = tuple(rng.choice(POSITIVE[:4]) if i in support else Fraction(0)
                  for i in range(dim))
        p = tuple(rng.choice(COORDS) for _ in range(dim))
        r = tuple(rng.choice(COORDS[:4]) for _ in range(dim))
        tails.append(tail(p, q, r))
    if not points and not tails:
        points = [tuple(rng.choice(POSITIVE) for _ in range(dim))]
    return family(points=points, tails=tails, dim=dim)


@st.composite
def gen_bodies(draw, dims=(2, 3)) -> GeneratorFamily:
    dim = draw(st.sampled_from(list(dims)))
    coords = st.sampled_from(COORDS)
    vec = st.tuples(*[coords] * dim)
    points = draw(st.lists(vec, max_size=2))
    n_tails = draw(st.integers(0 if points else 1, 2))
    tails = []
    for _ in range(n_tails):
        support = draw(st.lists(st.integers(0, dim - 1), min_size=1,
                                max_size=dim, unique=True))
        q = tuple(draw(st.sampled_from(POSITIVE[:4])) if i in support
                  else Fraction(0) for i in range(dim))
        p = draw(vec)
        r = draw(vec)
        tails.append(tail(p, q, r))
    return family(points=points, tails=tails, dim=dim)


@st.composite
def positive_points(draw, dim: int) -> tuple[Fraction, ...]:
    return tuple(draw(st.sampled_from(POSITIVE)) for _ in range(dim))
