"""Command line surface: report shape, exit codes, determinism.

Reports must stay free of floating point except on lines whose key says
"(float)"; exit codes separate usage mistakes (2) from honest indecision
(3) and invalid input (4).
"""

import json
import re

import pytest

from newtonjump import example_bodies, save_body
from newtonjump.cli import main
from newtonjump.membership import Undecided


FLOAT = re.compile(r"\b\d+\.\d+\b")


@pytest.fixture()
def files(tmp_path):
    out = {}
    for name, body in example_bodies().items():
        path = tmp_path / f"{name}.nb"
        save_body(path, body)
        out[name] = str(path)
    return out


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_gauge_example(files, capsys):
    code, out, _ = run(capsys, ["gauge", "--body", files["cusp"], "1", "1"])
    assert code == 0
    assert "gauge: 5/6" in out
    assert "facet normal (1/2, 1/3), support 1" in out
    assert "hash: a9aa68398897" in out
    assert not FLOAT.search(out)


def test_cluster_example(files, capsys):
    code, out, _ = run(capsys, ["cluster", "--body", files["hyperbola"],
                                "--max", "3"])
    assert code == 0
    assert "values: 1, 2, 3" in out
    assert "m*(x1=1) integral, step 1" in out
    assert "min_gap: 1" in out
    assert not FLOAT.search(out)


def test_member_example(files, capsys):
    code, out, _ = run(capsys, ["member", "--kind", "int", "--body",
                                files["cusp"], "--c", "1", "2", "0"])
    assert code == 0
    assert "answer: false" in out
    assert "separating normal" in out
    assert "reverified: true" in out


def test_member_attained(files, capsys):
    code, out, _ = run(capsys, ["member", "--kind", "att", "--subset", "1",
                                "--body", files["hyperbola"], "1"])
    assert code == 0
    assert "answer: false" in out
    assert "reverified: true" in out
    assert "undecided: false" in out


def test_validate(files, capsys):
    code, out, _ = run(capsys, ["validate", "--body", files["hyperbola_prism"]])
    assert code == 0
    assert "dim: 3" in out and "points: 1" in out and "tails: 2" in out
    assert "ok: true" in out


def test_ideal_generators(files, capsys):
    code, out, _ = run(capsys, ["ideal", "--body", files["cusp"],
                                "--c", "5/6"])
    assert code == 0
    assert "generators:\n  0 1\n  1 0" in out
    assert "complete: true" in out


def test_jump_lines(files, capsys):
    code, out, _ = run(capsys, ["jump", "--body", files["cusp"],
                                "--max", "2", "--lattice", "6"])
    assert code == 0
    assert "count: 7" in out
    assert "value 5/6  witness (0, 0)" in out
    assert "value 2  witness (1, 2)" in out
    assert not FLOAT.search(out)


def test_float_lines_say_so(files, capsys):
    _, out, _ = run(capsys, ["jump", "--body", files["cusp"], "--max", "2",
                             "--lattice", "6", "--oracle"])
    active = None
    for line in out.splitlines():
        if not line.startswith("  "):
            active = line
        if FLOAT.search(line):
            assert active is not None and "(float)" in active, line

    _, out, _ = run(capsys, ["gauge", "--body", files["cusp"], "--oracle",
                             "1", "1"])
    for line in out.splitlines():
        if FLOAT.search(line):
            assert "(float)" in line


def test_asymp_lists(files, capsys):
    code, out, _ = run(capsys, ["asymp", "--body", files["hyperbola_prism"],
                                "--bound", "2"])
    assert code == 0
    assert "asymp_prime_2:" in out and "asymp_2:" in out
    assert "x3=1  attained=true" in out
    assert "x1=1, x3=1  attained=false" in out
    # every line sits inside a kept plane, so the maximal line list is empty
    assert "asymp_1:\nasymp_prime_2:" in out


def test_witness_terms(files, capsys):
    code, out, _ = run(capsys, ["witness", "--body", files["hyperbola"],
                                "--m", "1", "--count", "5"])
    assert code == 0
    assert out.count("gauge ") == 5
    assert "final_gap: " in out
    assert not FLOAT.search(out)


def test_json_format(files, capsys):
    code, out, _ = run(capsys, ["gauge", "--body", files["cusp"],
                                "--format", "json", "1", "1"])
    assert code == 0
    doc = json.loads(out)
    assert doc["gauge"] == "5/6"
    assert doc["dim"] == 2
    assert doc["hash"] == "a9aa68398897"
    assert doc["undecided"] is False


def test_deterministic_reports(files, capsys):
    argv = ["cluster", "--body", files["shifted_hyperbola"], "--max", "4"]
    _, first, _ = run(capsys, argv)
    _, second, _ = run(capsys, argv)
    assert first == second
    assert "values: 2, 4" in first


def test_gauge_infinite_is_a_result(tmp_path, capsys):
    path = tmp_path / "orthant.nb"
    path.write_text("dim 2\npoint 0 0\n")
    code, out, _ = run(capsys, ["gauge", "--body", str(path), "1", "1"])
    assert code == 0
    assert "gauge: infinite" in out


def test_usage_errors_exit_2(files, capsys):
    assert run(capsys, ["frobnicate", "--body", files["cusp"]])[0] == 2
    assert run(capsys, ["gauge", "--body", files["cusp"], "1/0", "1"])[0] == 2
    assert run(capsys, ["jump", "--body", files["cusp"]])[0] == 2
    assert run(capsys, ["jump", "--body", files["cusp"], "--max", "2",
                        "--lattice", "0"])[0] == 2


def test_invalid_input_exits_4(files, tmp_path, capsys):
    code, _, err = run(capsys, ["validate", "--body",
                                str(tmp_path / "absent.nb")])
    assert code == 4 and "cannot read body file" in err

    bad = tmp_path / "bad.nb"
    bad.write_text("dim 2\npoint 1\n")
    code, _, err = run(capsys, ["validate", "--body", str(bad)])
    assert code == 4 and "invalid body" in err

    neg = tmp_path / "neg.nb"
    neg.write_text("dim 2\npoint -1 0\n")
    code, _, err = run(capsys, ["validate", "--body", str(neg)])
    assert code == 4 and "invalid body" in err

    code, _, err = run(capsys, ["gauge", "--body", files["cusp"], "0", "1"])
    assert code == 4 and "invalid query" in err

    code, _, err = run(capsys, ["gauge", "--body", files["cusp"], "1"])
    assert code == 4 and "invalid query" in err

    code, _, err = run(capsys, ["member", "--kind", "att", "--body",
                                files["cusp"], "1", "1"])
    assert code == 4 and "needs --subset" in err


def test_undecided_exits_3(files, capsys, monkeypatch):
    def give_up(body, u):
        raise Undecided("gauge", "pricing cap reached")

    monkeypatch.setattr("newtonjump.cli.gauge", give_up)
    code, out, _ = run(capsys, ["gauge", "--body", files["cusp"], "1", "1"])
    assert code == 3
    assert "undecided: true" in out
    assert "pricing cap reached" in out


def test_plot_to_file_and_stdout(files, tmp_path, capsys):
    target = tmp_path / "cusp.svg"
    code, out, _ = run(capsys, ["plot", "--body", files["cusp"],
                                "--c", "5/6", "--out", str(target)])
    assert code == 0
    assert target.read_text().startswith("<svg")
    assert str(target) in out

    code, out, _ = run(capsys, ["plot", "--body", files["hyperbola"]])
    assert code == 0
    assert out.startswith("<svg") and out.rstrip().endswith("</svg>")

    code, _, err = run(capsys, ["plot", "--body", files["hyperbola_prism"]])
    assert code == 4 and "invalid query" in err
