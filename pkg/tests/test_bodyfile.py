"""Body text format: canonical round-trips, scan errors, hash stability.

Parse errors carry 1-based line and column so a CLI user can point an
editor at the offending token; semantic problems must surface as the shared
validation error, not as scan failures.
"""

import pytest
from hypothesis import given, settings

from conftest import gen_bodies
from newtonjump import (BodyParseError, BodyValidationError, body_hash,
                        example_bodies, load_body, parse_body, save_body,
                        serialize_body)


def test_round_trips_examples():
    for name, body in example_bodies().items():
        assert parse_body(serialize_body(body)) == body, name


def test_frozen_hashes():
    bodies = example_bodies()
    assert body_hash(bodies["cusp"]) == "a9aa68398897"
    assert body_hash(bodies["hyperbola"]) == "09d92642d9bb"


def test_canonical_form():
    text = serialize_body(example_bodies()["cusp"])
    assert text == "dim 2\npoint 2 0\npoint 0 3\n"
    text = serialize_body(example_bodies()["shifted_hyperbola"])
    assert text == ("dim 2\n"
                    "point 3 1\n"
                    "tail p 1/2 1  q 0 1  r 1 0\n")


def test_comments_and_whitespace():
    body = parse_body(
        "# staircase, one branch\n"
        "\n"
        "dim 2   # the plane\n"
        "  point   2    0\n"
        "point 0 3 # other axis\n")
    assert body == example_bodies()["cusp"]


def test_dim_one_is_allowed():
    body = parse_body("dim 1\npoint 1\n")
    assert body.dim == 1
    assert body.points == ((1,),)


@pytest.mark.parametrize("text,line,fragment", [
    ("dim 2\npoint 1\n", 2, "point arity 1 != dim 2"),
    ("point 1 2\n", 1, "dim line must come before"),
    ("dim 2\ndim 3\n", 2, "duplicate dim"),
    ("dim 2 2\n", 1, "exactly one integer"),
    ("dim x\n", 1, "expected an integer"),
    ("dim 0\n", 1, "must be positive"),
    ("dim 2\npoint 1 1/0\n", 2, "expected a rational"),
    ("dim 2\npoint 1 two\n", 2, "expected a rational"),
    ("dim 2\ntail q 1 1  p 0 1  r 1 0\n", 2, "expected 'p'"),
    ("dim 2\ntail p 1 1  r 1 0  q 0 1\n", 2, "expected 'q'"),
    ("dim 2\ntail p 1  q 0 1  r 1 0\n", 2, "expected a rational"),
    ("dim 2\ntail p 1 1  q 0 1  r 1\n", 2, "needs 2 entries"),
    ("dim 2\ntail p 1 1  q 0 1  r 1 0 extra\n", 2, "trailing token"),
    ("dim 2\nfacet 1 1\n", 2, "unknown directive"),
    ("# only a comment\n", 1, "missing dim"),
    ("", 1, "missing dim"),
])
def test_scan_errors(text, line, fragment):
    with pytest.raises(BodyParseError) as err:
        parse_body(text)
    assert err.value.line == line
    assert fragment in str(err.value)
    assert f"line {line}, column {err.value.column}:" in str(err.value)


def test_column_points_at_the_bad_token():
    with pytest.raises(BodyParseError) as err:
        parse_body("dim 2\npoint 1 oops\n")
    assert (err.value.line, err.value.column) == (2, 9)


def test_semantic_problems_use_the_validator():
    with pytest.raises(BodyValidationError):
        parse_body("dim 2\npoint -1 0\n")
    with pytest.raises(BodyValidationError):
        # q = 0 makes the tail a bounded sequence, not an escape
        parse_body("dim 2\ntail p 1 1  q 0 0  r 1 0\n")
    with pytest.raises(BodyValidationError):
        parse_body("dim 2\n")  # no generators at all


def test_save_and_load(tmp_path):
    target = tmp_path / "body.txt"
    body = example_bodies()["hyperbola_prism"]
    save_body(target, body)
    assert load_body(target) == body
    assert target.read_text() == serialize_body(body)


@given(gen_bodies(dims=(2, 3)))
@settings(max_examples=50, deadline=None)
def test_round_trip_is_identity(body):
    again = parse_body(serialize_body(body))
    assert again == body
    assert body_hash(again) == body_hash(body)
