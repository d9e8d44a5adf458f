"""Command line front end: load a body file, run one query, print a report.

Reports are deterministic key/value listings (text or JSON) carrying the
command echo, a content hash of the body, the bounds that were used, and an
explicit undecided flag.  Exact values are printed as rationals; floating
point appears only in oracle lines, which say so in their key.

Exit codes: 0 success, 2 usage, 3 undecided (an honest cap, not an error),
4 invalid input (body file or query data).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .asymptotes import enumerate_asymp
from .body import BodyValidationError, GeneratorFamily, scale
from .bodyfile import BodyParseError, body_hash, load_body
from .cluster import cluster_points, witness_sequence
from .exact import format_rat, format_vec
from .gauge import (FacetWitness, GaugeInfinite, gauge, jumping_numbers_up_to,
                    oracle_gauge)
from .ideal import minimal_generators
from .membership import (InteriorWitness, SeparatingNormal, Undecided,
                         is_attained, is_in_closure, is_interior,
                         verify_attained, verify_closure, verify_interior)
from .plot import plot_slice

Pairs = list[tuple[str, object]]


def _rat_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(
            f"expected a rational p/q, got {text!r}") from None


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _subset_arg(text: str) -> tuple[int, ...]:
    try:
        idx = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated coordinates, got {text!r}") from None
    return idx


def _slice_arg(text: str) -> tuple[int, int]:
    coord, eq, value = text.partition("=")
    if not eq:
        raise argparse.ArgumentTypeError(
            f"expected coord=value, got {text!r}")
    try:
        return int(coord), int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected integers in coord=value, got {text!r}") from None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="newtonjump",
        description="Exact queries on Newton bodies with tail generators.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> argparse.ArgumentParser:
        p.add_argument("--body", required=True, metavar="FILE",
                       help="body file (dim/point/tail lines)")
        p.add_argument("--format", choices=("text", "json"), default="text")
        return p

    common(sub.add_parser("validate", help="parse and validate a body file"))

    p = common(sub.add_parser("member", help="membership with certificate"))
    p.add_argument("--kind", choices=("int", "cl", "att"), required=True,
                   help="interior / closure / attained-on-subset")
    p.add_argument("--c", type=_rat_arg, default=Fraction(1),
                   help="scale of the body (default 1)")
    p.add_argument("--subset", type=_subset_arg,
                   help="fixed coordinates for --kind att, e.g. 1,3")
    p.add_argument("coords", nargs="+", type=_rat_arg)

    p = common(sub.add_parser("ideal", help="minimal monomial generators"))
    p.add_argument("--c", type=_rat_arg, required=True)
    p.add_argument("--box", type=_positive_int,
                   help="search box edge (default: grown until certified)")

    p = common(sub.add_parser("gauge", help="exact gauge of a positive point"))
    p.add_argument("--oracle", action="store_true",
                   help="add a floating-point cross-check line")
    p.add_argument("coords", nargs="+", type=_rat_arg)

    p = common(sub.add_parser("jump", help="jumping numbers from a lattice box"))
    p.add_argument("--max", type=_rat_arg, required=True)
    p.add_argument("--lattice", type=_positive_int, default=8,
                   help="lattice box edge (default 8)")
    p.add_argument("--oracle", action="store_true",
                   help="add floating-point cross-check lines")

    p = common(sub.add_parser("asymp", help="asymptotic coordinate subspaces"))
    p.add_argument("--bound", type=_positive_int, default=3,
                   help="offset bound per coordinate (default 3)")

    p = common(sub.add_parser("cluster", help="cluster points of jumping numbers"))
    p.add_argument("--max", type=_rat_arg, required=True)

    p = common(sub.add_parser("witness", help="witness sequence for a cluster point"))
    p.add_argument("--m", type=_rat_arg, required=True)
    p.add_argument("--count", type=_positive_int, default=20)

    p = common(sub.add_parser("plot", help="SVG picture of a scaled body slice"))
    p.add_argument("--c", type=_rat_arg, default=Fraction(1))
    p.add_argument("--slice", action="append", type=_slice_arg, default=[],
                   metavar="K=V", help="fix coordinate K at integer V")
    p.add_argument("--bound", type=_positive_int)
    p.add_argument("--truncation", type=_positive_int, default=32)
    p.add_argument("--out", metavar="FILE", help="write SVG here (default stdout)")
    return parser


# ---------------------------------------------------------------------------
# Command handlers: each returns report pairs (already formatted exactly)


def _coords(args, body: GeneratorFamily, want: int) -> tuple[Fraction, ...]:
    if len(args.coords) != want:
        raise ValueError(
            f"query arity {len(args.coords)} != expected {want}")
    return tuple(args.coords)


def _cmd_validate(args, body: GeneratorFamily) -> Pairs:
    return [("dim", body.dim), ("points", len(body.points)),
            ("tails", len(body.tails)), ("ok", True)]


def _certificate_lines(cert) -> str:
    if isinstance(cert, InteriorWitness):
        nonzero = sum(1 for w in cert.weights if w)
        return (f"convex weights at truncation level {cert.level}, "
                f"{nonzero} of {len(cert.weights)} nonzero")
    assert isinstance(cert, SeparatingNormal)
    entries = ", ".join(str(x) for x in cert.normal)
    text = f"separating normal ({entries}), margin {cert.margin}"
    if cert.per_generator_strict:
        text += ", strict per generator"
    return text


def _cmd_member(args, body: GeneratorFamily) -> Pairs:
    scaled = scale(body, args.c) if args.c != 1 else body
    pairs: Pairs = [("kind", args.kind), ("scale", format_rat(args.c))]
    if args.kind == "att":
        if not args.subset:
            raise ValueError("--kind att needs --subset")
        alpha = _coords(args, body, len(args.subset))
        verdict = is_attained(scaled, args.subset, alpha)
        checked = verify_attained(scaled, args.subset, alpha, verdict)
        pairs.append(("subset", ", ".join(map(str, args.subset))))
    else:
        if args.subset:
            raise ValueError("--subset only applies to --kind att")
        u = _coords(args, body, body.dim)
        query = is_interior if args.kind == "int" else is_in_closure
        verdict = query(scaled, u)
        verify = verify_interior if args.kind == "int" else verify_closure
        checked = verify(scaled, u, verdict)
    pairs += [("query", format_vec(tuple(args.coords))),
              ("answer", verdict.answer),
              ("certificate", _certificate_lines(verdict.certificate)),
              ("reverified", checked),
              ("undecided", False)]
    return pairs


def _cmd_ideal(args, body: GeneratorFamily) -> Pairs:
    ideal = minimal_generators(body, args.c, args.box)
    gens = [" ".join(map(str, g)) for g in ideal.minimal_generators]
    return [("c", format_rat(args.c)),
            ("box", args.box if args.box is not None else "auto"),
            ("count", len(gens)),
            ("generators", gens),
            ("complete", ideal.complete)]


def _cmd_gauge(args, body: GeneratorFamily) -> Pairs:
    u = _coords(args, body, body.dim)
    pairs: Pairs = [("query", format_vec(u))]
    try:
        result = gauge(body, u)
    except GaugeInfinite:
        pairs += [("gauge", "infinite"),
                  ("note", "the body contains the origin"),
                  ("undecided", False)]
        return pairs
    witness = result.achieved_by
    if isinstance(witness, FacetWitness):
        achieved = (f"facet normal {format_vec(witness.normal)}, "
                    f"support {format_rat(witness.support_value)}")
    else:
        achieved = (f"limit normal on coordinates "
                    f"{', '.join(map(str, witness.subset))}, "
                    f"offsets {format_vec(witness.offsets)}")
    pairs += [("gauge", format_rat(result.value)),
              ("witness", achieved),
              ("exact", result.exact)]
    if args.oracle:
        pairs.append(("oracle gauge (float)", repr(oracle_gauge(body, u))))
    pairs.append(("undecided", False))
    return pairs


def _cmd_jump(args, body: GeneratorFamily) -> Pairs:
    report = jumping_numbers_up_to(body, args.max, args.lattice)
    values = []
    for e in report.entries:
        shown = ", ".join(format_rat(x) for x in e.witnesses[0])
        values.append(f"value {format_rat(e.value)}  witness ({shown})")
    pairs: Pairs = [("max", format_rat(report.max_value)),
                    ("lattice", report.lattice_bound),
                    ("count", len(values)),
                    ("values", values)]
    if args.oracle:
        floats = [repr(oracle_gauge(body, tuple(x + 1 for x in e.witnesses[0])))
                  for e in report.entries]
        pairs.append(("oracle values (float)", floats))
    pairs.append(("note", report.note))
    return pairs


def _cmd_asymp(args, body: GeneratorFamily) -> Pairs:
    report = enumerate_asymp(body, args.bound)
    pairs: Pairs = [("offset_bound", report.offset_bound),
                    ("caps", format_vec(report.coordinate_caps))]

    def fmt(sub) -> str:
        flag = str(report.attained_of(sub)).lower()
        return f"{sub.label()}  attained={flag}"

    for k in range(1, body.dim):
        pairs.append((f"asymp_prime_{k}", [fmt(s) for s in report.prime_at(k)]))
        pairs.append((f"asymp_{k}", [fmt(s) for s in report.maximal_at(k)]))
    pairs.append(("note", report.note))
    return pairs


def _cmd_cluster(args, body: GeneratorFamily) -> Pairs:
    report = cluster_points(body, args.max)
    return [("max", format_rat(report.max_value)),
            ("offset_caps", format_vec(report.offset_caps)),
            ("values", ", ".join(format_rat(v) for v in report.values)),
            ("progressions", [p.label() for p in report.progressions]),
            ("witnesses", [f"{format_rat(m)}: {sub.label()}"
                           for m, sub in report.witnesses]),
            ("min_gap", format_rat(report.min_gap))]


def _cmd_witness(args, body: GeneratorFamily) -> Pairs:
    terms = witness_sequence(body, args.m, args.count)
    lines = [f"x = ({', '.join(map(str, t.point))})  gauge {format_rat(t.value)}"
             for t in terms]
    return [("m", format_rat(args.m)),
            ("count", args.count),
            ("terms", lines),
            ("final_gap", format_rat(args.m - terms[-1].value))]


def _render(pairs: Pairs, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(dict(pairs), indent=2)
    lines = []
    for key, value in pairs:
        if isinstance(value, list):
            lines.append(f"{key}:")
            lines.extend(f"  {item}" for item in value)
        elif isinstance(value, bool):
            lines.append(f"{key}: {str(value).lower()}")
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines)


_HANDLERS = {
    "validate": _cmd_validate,
    "member": _cmd_member,
    "ideal": _cmd_ideal,
    "gauge": _cmd_gauge,
    "jump": _cmd_jump,
    "asymp": _cmd_asymp,
    "cluster": _cmd_cluster,
    "witness": _cmd_witness,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2

    try:
        body = load_body(args.body)
    except OSError as exc:
        print(f"cannot read body file: {exc}", file=sys.stderr)
        return 4
    except (BodyParseError, BodyValidationError) as exc:
        print(f"invalid body: {exc}", file=sys.stderr)
        return 4

    prologue: Pairs = [("command", " ".join(argv)),
                       ("body", args.body),
                       ("hash", body_hash(body)),
                       ("dim", body.dim)]

    if args.command == "plot":
        try:
            svg = plot_slice(body, dict(args.slice), args.c,
                             bound=args.bound, truncation=args.truncation)
        except ValueError as exc:
            print(f"invalid query: {exc}", file=sys.stderr)
            return 4
        if args.out:
            Path(args.out).write_text(svg, encoding="utf-8")
            pairs = prologue + [("svg", args.out), ("bytes", len(svg))]
            print(_render(pairs, args.format))
        else:
            sys.stdout.write(svg)
        return 0

    try:
        pairs = _HANDLERS[args.command](args, body)
    except Undecided as exc:
        pairs = prologue + [("undecided", True),
                            ("operation", exc.operation),
                            ("detail", exc.detail)]
        print(_render(pairs, args.format))
        return 3
    except (BodyValidationError, ValueError) as exc:
        print(f"invalid query: {exc}", file=sys.stderr)
        return 4
    print(_render(prologue + pairs, args.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
