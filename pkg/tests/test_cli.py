import json
from pathlib import Path

from soficdyn.cli import main

DATA = Path(__file__).parents[1] / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_sft(capsys):
    code, out, _ = run(capsys, "check-sft", DATA / "golden.sofic")
    assert code == 0 and out.strip() == "SFT: yes; minimal forbidden: 11"
    code, out, _ = run(capsys, "check-sft", DATA / "at_most_one_1.sofic")
    assert out.startswith("SFT: no") and "10001" in out


def test_json_report_has_input_hashes(capsys):
    code, out, _ = run(capsys, "check-sft", DATA / "golden.sofic", "--json")
    rep = json.loads(out)
    assert rep["op"] == "check-sft" and code == 0
    assert len(next(iter(rep["inputs"].values()))) == 64
    assert "timing_s" in rep


def test_text_output_is_deterministic(capsys):
    a = run(capsys, "golden-pipeline", "--emit-patterns")[1]
    b = run(capsys, "golden-pipeline", "--emit-patterns")[1]
    assert a == b and "width 4: 4, width 5: 40, width 6: 20" in a


def test_errors_are_one_line_with_exit_code_1(capsys, tmp_path):
    code, out, err = run(capsys, "check-sft", tmp_path / "missing.sofic")
    assert code == 1 and len(err.strip().splitlines()) == 1
    bad = tmp_path / "bad.sofic"
    bad.write_text("nonsense directive\n")
    code, _, err = run(capsys, "check-sft", bad)
    assert code == 1 and err.startswith("error: ParseError")
    code, out, _ = run(capsys, "beta-classify", "--dstar", ":01", "--json")
    assert code == 1 and json.loads(out)["error"] == "NotAValidDStar"


def test_relation_commands(capsys):
    rel = DATA / "binary_reals_Z.rel"
    code, out, _ = run(capsys, "equivalence", DATA / "golden_kernel.rel", DATA / "golden.sofic")
    assert out.strip() == "reflexive: True; symmetric: True; transitive: True"
    code, out, _ = run(capsys, "expansive", DATA / "full2.sofic", rel, "--kmax", 6)
    assert code == 0 and out.startswith("expansive")
    code, out, _ = run(capsys, "compose", rel, rel)
    assert out.startswith("side Z")
    code, out, _ = run(capsys, "transitive-closure", rel, DATA / "full2.sofic")
    assert code == 0


def test_metric_commands(capsys):
    code, out, _ = run(capsys, "metric-bracket", "--system", "interval", "--x", "0(0)", "--y", "(1)",
                       "--depth", 2)
    assert code == 0 and out.splitlines()[0].startswith("m=1: [1/2, 1]")
    code, out, _ = run(capsys, "metric-bracket", "--system", DATA / "interval.gs",
                       "--x", "e,0,00,000", "--y", "e,1,11,111", "--depth", 1)
    assert code == 0 and "m=1" in out
    code, out, _ = run(capsys, "dimension-bound", DATA / "full2.sofic", DATA / "binary_reals_Z.rel")
    assert "c = 37" in out


def test_toral_and_beta_commands(capsys):
    code, out, _ = run(capsys, "toral-kernel", "--matrix", "2,1;1,1")
    assert code == 0 and out.startswith("digits 0..2")
    code, out, _ = run(capsys, "mult-table")
    assert "R o R = RR" in out
    code, out, _ = run(capsys, "beta-classify", "--beta", "(1+sqrt(5))/2")
    assert "SFT/proper-sofic" in out
    code, out, _ = run(capsys, "beta-classify", "--dstar", "2:1")
    assert "proper-sofic/proper-sofic" in out


def test_simplicial_and_dot(capsys):
    code, out, _ = run(capsys, "simplicial", "--facets", "12,13,23")
    assert "17 states" in out and "[0, 1, 2]" in out
    code, out, _ = run(capsys, "simplicial", "--facets", "12,13,23", "--suspend", "Z", "--emit", "sofic-pair")
    assert code == 0 and "#" in out
    code, _, _ = run(capsys, "simplicial")
    assert code == 1
    code, out, _ = run(capsys, "dot-export", DATA / "golden.sofic")
    assert out.startswith("digraph")


def test_help_exits_cleanly(capsys):
    assert main(["--help"]) == 0
    assert main(["no-such-command"]) == 1
