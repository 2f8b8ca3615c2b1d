import io
import re

import pydantic
import pytest

from ckah.algebra.pomsets import funcs as pomsetFuncs
from ckah.algebra.pomsets import oracles as pomsetOracles
from ckah.algebra.pomsets.models import make_poset
from ckah.algebra.terms.semantics import parse_pomset
from ckah.cli import EXIT_DIFFERENT, EXIT_EQUIVALENT, EXIT_INCONCLUSIVE, EXIT_INVALID, EXIT_OK
from ckah.cli import dotExport
from ckah.cli.main import main
from ckah.core.config import Config


NODE = re.compile(r"^\s*n(\d+) \[label=(\".*\")\];$")
EDGE = re.compile(r"^\s*n(\d+) -> n(\d+);$")


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def members(output: str) -> list[str]:
    return [line for line in output.splitlines() if line and not line.startswith("#")]


# check


def test_check_observation_collapse():
    code, output = run("check", "{o};a;{!o}", "0", "--hyp", "obs")
    assert code == EXIT_DIFFERENT
    assert "DIFFERENT" in output
    assert "witness: @{o};a;@{} (only in the left closure)" in output


def test_check_identical_terms():
    code, output = run("check", "a", "a", "--hyp", "none")
    assert code == EXIT_EQUIVALENT
    assert "\nEQUIVALENT\n" in output


def test_check_exchange_direction():
    code, output = run("check", "(a||b);(c||d)", "(a;c)||(b;d)", "--hyp", "exch")
    assert code == EXIT_DIFFERENT
    assert "left <= right: true" in output
    assert "right <= left: false" in output
    assert "(only in the right closure)" in output


def test_check_header():
    _code, output = run("check", "{o}", "{o};{o}", "--hyp", "obs", "--bound", "5")
    lines = output.splitlines()
    assert lines[0] == "# ckah 0.1.0 check"
    assert lines[1] == "# bound 5, hypotheses obs, omega {o}"
    assert lines[3] == "# left:  {o}"
    assert lines[4] == "# right: {o};{o}"


def test_check_star_terms_up_to_the_bound():
    code, output = run("check", "a*", "a*;a*", "--bound", "4")
    assert code == EXIT_EQUIVALENT
    assert "EQUIVALENT-UP-TO 4" in output


def test_check_witness_as_dot(tmp_path):
    code, output = run(
        "check", "a||b", "a;b", "--hyp", "exch", "--witness", "--dot", str(tmp_path)
    )
    assert code == EXIT_DIFFERENT
    assert "digraph witness {" in output
    assert (tmp_path / "witness.dot").read_text(encoding="utf-8").startswith("digraph")


def test_check_cross_checks():
    _code, output = run("check", "(a||b);c", "a;b;c + b;a;c", "--hyp", "exch", "--cross-check")
    assert "cross-check left exch rewriting: agrees" in output
    assert "cross-check right exch rewriting: agrees" in output

    _code, output = run("check", "{o};a;{!o}", "0", "--hyp", "obs", "--cross-check")
    assert "cross-check raw observation laws: agrees" in output

    _code, output = run(
        "check", "bake||bake;mix", "bake;bake;mix", "--hyp", "demo-bake", "--cross-check"
    )
    assert "cross-check left round-robin closure: agrees" in output


def test_check_with_a_hypothesis_file(tmp_path):
    path = tmp_path / "swap.hyp"
    path.write_text("a;b <= b;a\n", encoding="utf-8")
    code, output = run("check", "b;a", "a;b + b;a", "--hyp-file", str(path))
    assert code == EXIT_EQUIVALENT
    assert "hypotheses swap" in output


def test_check_inconclusive(tmp_path):
    path = tmp_path / "grow.hyp"
    path.write_text("a;a <= a\n", encoding="utf-8")
    code, output = run("check", "a", "a;a", "--hyp-file", str(path), "--bound", "3")
    assert code == EXIT_INCONCLUSIVE
    assert "INCONCLUSIVE" in output and "reason:" in output


# closure


def test_closure_of_parallel_composition():
    code, output = run("closure", "a||b", "--hyp", "exch")
    assert code == EXIT_OK
    assert members(output) == ["a;b", "a||b", "b;a"]


def test_closure_of_unit():
    code, output = run("closure", "1", "--hyp", "obs")
    assert code == EXIT_OK
    assert members(output) == ["1"]


def test_closure_contracts_observations():
    code, output = run("closure", "{o};{o}", "--hyp", "obs", "--omega", "o")
    assert code == EXIT_OK
    assert members(output) == ["@{o}", "@{o};@{o}"]


def test_closure_writes_dot_files(tmp_path):
    code, output = run("closure", "a||b", "--hyp", "exch", "--dot", str(tmp_path))
    assert code == EXIT_OK
    assert sorted(path.name for path in tmp_path.iterdir()) == [
        "pomset-000.dot",
        "pomset-001.dot",
        "pomset-002.dot",
    ]


def test_closure_truncated(tmp_path):
    path = tmp_path / "grow.hyp"
    path.write_text("a;a <= a\n", encoding="utf-8")
    code, output = run("closure", "a", "--hyp-file", str(path), "--bound", "3")
    assert code == EXIT_INCONCLUSIVE
    assert "# truncated:" in output


# errors


def test_syntax_error(capsys):
    code, output = run("check", "a;;b", "a")
    assert code == EXIT_INVALID
    assert output == ""
    err = capsys.readouterr().err
    assert err.startswith("error: syntax error")
    assert "a;;b\n  ^" in err


def test_invalid_requests(tmp_path, capsys):
    assert run("check", "{T}", "1", "--omega", "T")[0] == EXIT_INVALID
    assert run("check", "{o}", "1", "--omega", "p")[0] == EXIT_INVALID
    assert run("closure", "a", "--bound", "500")[0] == EXIT_INVALID
    assert run("closure", "a", "--hyp-file", str(tmp_path / "missing.hyp"))[0] == EXIT_INVALID
    assert "error:" in capsys.readouterr().err


def test_pack_and_file_are_exclusive(tmp_path):
    with pytest.raises(SystemExit):
        run("closure", "a", "--hyp", "exch", "--hyp-file", str(tmp_path / "x.hyp"))


def test_log_level_is_checked(capsys):
    with pytest.raises(SystemExit) as info:
        run("--log-level", "loud", "check", "a", "a")
    assert info.value.code == 2
    assert "invalid choice" in capsys.readouterr().err
    assert run("--log-level", "debug", "check", "a", "a")[0] == EXIT_EQUIVALENT
    with pytest.raises(pydantic.ValidationError):
        Config(log_level="loud")
    assert Config(log_level="info").log_level == "INFO"



# DOT


def test_hasse_edges():
    assert dotExport.hasse_edges(parse_pomset("a;b")) == [(0, 1)]
    assert dotExport.hasse_edges(parse_pomset("a||b")) == []
    assert dotExport.hasse_edges(parse_pomset("(a||b);c")) == [(0, 2), (1, 2)]
    assert dotExport.hasse_edges(parse_pomset("a;b;c")) == [(0, 1), (1, 2)]


def test_to_dot():
    assert dotExport.to_dot(parse_pomset("a;b"), "w") == (
        'digraph w {\n  n0 [label="a"];\n  n1 [label="b"];\n  n0 -> n1;\n}\n'
    )


def read_dot(text: str):
    labels, edges = {}, set()
    for line in text.splitlines():
        if node := NODE.match(line):
            labels[int(node.group(1))] = node.group(2)[1:-1]
        elif edge := EDGE.match(line):
            edges.add((int(edge.group(1)), int(edge.group(2))))
    return make_poset(labels, edges)


def test_dot_round_trips(rng):
    for _case in range(100):
        u = pomsetOracles.random_sp(rng, "abc", 6)
        assert pomsetFuncs.iso(read_dot(dotExport.to_dot(u)), pomsetFuncs.to_poset(u))
