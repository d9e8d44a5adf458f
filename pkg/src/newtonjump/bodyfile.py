"""Reading and writing the line-oriented body text format.

A body file holds one item per line: a ``dim`` header followed by ``point``
and ``tail`` generator lines.  Entries are exact rationals written ``p/q``
(the denominator omitted when 1), ``#`` starts a comment, blank lines are
skipped.  ``serialize_body`` emits the canonical form (header first,
generators in stored order, single spaces) and ``parse_body`` accepts any
whitespace, so parse(serialize(B)) reproduces B exactly.

Scan-level problems raise :class:`BodyParseError` tagged with 1-based line
and column; semantic problems (negative entries, non-escaping tails) come
back as :class:`~newtonjump.body.BodyValidationError` from the shared
validator.
"""

from __future__ import annotations

import hashlib
import re
from fractions import Fraction
from pathlib import Path

from .body import GeneratorFamily, TailSequence, family
from .exact import Vec, as_vec, format_rat

_TOKEN = re.compile(r"\S+")


class BodyParseError(ValueError):
    """A body file that does not scan."""

    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _parse_rat(token: str, line: int, column: int) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise BodyParseError(line, column,
                             f"expected a rational p/q, got {token!r}") from None


def _take_group(tokens: list[tuple[str, int]], start: int, marker: str,
                count: int, line: int) -> tuple[Vec, int]:
    """Consume a literal marker and ``count`` rationals, returning the vector."""
    if start >= len(tokens) or tokens[start][0] != marker:
        got = tokens[start][0] if start < len(tokens) else "end of line"
        col = tokens[start][1] if start < len(tokens) else tokens[-1][1]
        raise BodyParseError(line, col, f"expected {marker!r}, got {got!r}")
    pos = start + 1
    entries = []
    for _ in range(count):
        if pos >= len(tokens):
            raise BodyParseError(line, tokens[-1][1],
                                 f"tail component {marker} needs {count} entries")
        tok, col = tokens[pos]
        entries.append(_parse_rat(tok, line, col))
        pos += 1
    return tuple(entries), pos


def parse_body(text: str) -> GeneratorFamily:
    """Parse a body file into a validated generator family."""
    dim: int | None = None
    points: list[Vec] = []
    tails: list[TailSequence] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0]
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(stripped)]
        if not tokens:
            continue
        head, col = tokens[0]
        if head == "dim":
            if dim is not None:
                raise BodyParseError(lineno, col, "duplicate dim line")
            if len(tokens) != 2:
                raise BodyParseError(lineno, col,
                                     "dim takes exactly one integer")
            tok, tcol = tokens[1]
            try:
                dim = int(tok)
            except ValueError:
                raise BodyParseError(
                    lineno, tcol, f"expected an integer, got {tok!r}") from None
            if dim < 1:
                raise BodyParseError(lineno, tcol,
                                     f"dimension must be positive, got {dim}")
        elif head == "point":
            if dim is None:
                raise BodyParseError(lineno, col,
                                     "dim line must come before generators")
            if len(tokens) - 1 != dim:
                raise BodyParseError(
                    lineno, col, f"point arity {len(tokens) - 1} != dim {dim}")
            points.append(tuple(_parse_rat(tok, lineno, tcol)
                                for tok, tcol in tokens[1:]))
        elif head == "tail":
            if dim is None:
                raise BodyParseError(lineno, col,
                                     "dim line must come before generators")
            p, pos = _take_group(tokens, 1, "p", dim, lineno)
            q, pos = _take_group(tokens, pos, "q", dim, lineno)
            r, pos = _take_group(tokens, pos, "r", dim, lineno)
            if pos != len(tokens):
                tok, tcol = tokens[pos]
                raise BodyParseError(lineno, tcol,
                                     f"unexpected trailing token {tok!r}")
            tails.append(TailSequence(as_vec(p), as_vec(q), as_vec(r)))
        else:
            raise BodyParseError(lineno, col, f"unknown directive {head!r}")
    if dim is None:
        raise BodyParseError(1, 1, "missing dim line")
    return family(points=points, tails=tails, dim=dim)


def _entries(v: Vec) -> str:
    return " ".join(format_rat(c) for c in v)


def serialize_body(body: GeneratorFamily) -> str:
    """Canonical text form: dim header, then generators in stored order."""
    lines = [f"dim {body.dim}"]
    lines += [f"point {_entries(pt)}" for pt in body.points]
    lines += [f"tail p {_entries(t.p)}  q {_entries(t.q)}  r {_entries(t.r)}"
              for t in body.tails]
    return "\n".join(lines) + "\n"


def body_hash(body: GeneratorFamily) -> str:
    """Short content hash of the canonical form, for report headers."""
    digest = hashlib.sha256(serialize_body(body).encode("ascii")).hexdigest()
    return digest[:12]


def load_body(path: str | Path) -> GeneratorFamily:
    return parse_body(Path(path).read_text(encoding="utf-8"))


def save_body(path: str | Path, body: GeneratorFamily) -> None:
    Path(path).write_text(serialize_body(body), encoding="utf-8")
