# tests/test_cli.py
"""
End-to-end runs through cli.main.main(argv); results on stdout, exit codes
as documented.
"""

import json

import pytest

from cli.main import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_build_code_json(capsys):
    code, out, _ = run(capsys, "build-code", "--p", "3", "--m", "2", "--delta", "3", "-q")
    assert code == 0
    payload = json.loads(out)
    assert payload["n"] == 10
    assert payload["dimension"] == 6
    assert payload["defining_set"] == [0, 3, 4, 5, 6, 7]


def test_build_code_text(capsys):
    code, out, _ = run(capsys, "build-code", "--p", "2", "--m", "2", "--delta", "2", "--format", "text", "-q")
    assert code == 0
    assert "[5,3]_4 (δ=2)" in out
    assert "k = 3" in out


def test_build_code_uses_the_preset_when_no_parameters_are_given(capsys):
    code, out, _ = run(capsys, "build-code", "-q")
    assert code == 0
    assert json.loads(out)["q"] == 9


def test_verify_design_text_report(capsys):
    code, out, _ = run(capsys, "verify", "design", "--p", "2", "--m", "2", "--delta", "2", "--format", "text", "-q")
    assert code == 0
    assert "3-(5,3,1) Steiner: PASS" in out


@pytest.mark.slow
def test_verify_design_at_q9(capsys):
    code, out, _ = run(capsys, "verify", "design", "--p", "3", "--m", "2", "--delta", "3", "--format", "text", "-q")
    assert code == 0
    assert "3-(10,4,1) Steiner: PASS" in out


def test_verify_classification(capsys):
    code, out, _ = run(capsys, "verify", "classification", "--p", "3", "--m", "1", "--samples", "10",
                       "--format", "text", "-q")
    assert code == 0
    assert "4 invariant codes: PASS" in out


def test_verify_json_report(capsys):
    code, out, _ = run(capsys, "verify", "p-rank", "--p", "3", "--m", "2", "--delta", "3", "-q")
    assert code == 0
    report = json.loads(out)
    assert report["suite"] == "p-rank"
    assert report["parameters"]["q"] == 9
    assert report["checks"][0]["name"] == "rank_3 S(3,4,10) = 10"
    assert all(check["passed"] for check in report["checks"])


@pytest.mark.slow
def test_verify_p_rank_q25(capsys):
    code, out, _ = run(capsys, "verify", "p-rank", "--p", "5", "--m", "2", "--delta", "5", "--format", "text", "-q")
    assert code == 0
    assert "rank_5 S(3,6,26) = 26: PASS" in out


def test_weight_dist_side_is_positional(capsys):
    code, out, _ = run(capsys, "weight-dist", "dual", "--p", "3", "--m", "2", "--delta", "3", "-q")
    assert code == 0
    payload = json.loads(out)
    assert payload["side"] == "dual"
    assert payload["counts"][6] == "240"


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "verify", "nope", "--p", "3", "--m", "2", "--delta", "3", "-q")[0] == 2
    assert run(capsys, "build-code", "--p", "4", "--m", "2", "--delta", "4", "-q")[0] == 2
    assert run(capsys, "build-code", "--p", "3", "--m", "2", "--delta", "9", "--threads", "0", "-q")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_delta_codes_need_m_at_least_2(capsys):
    code, _, err = run(capsys, "verify", "params", "--p", "3", "--m", "1", "--delta", "3", "-q")
    assert code == 2
    assert "m ≥ 2" in err
    assert run(capsys, "build-code", "--p", "2", "--m", "1", "--delta", "4", "-q")[0] == 2


def test_weight_dist_of_the_smallest_code(capsys):
    code, out, _ = run(capsys, "weight-dist", "--p", "2", "--m", "2", "--delta", "2", "-q")
    assert code == 0
    assert json.loads(out)["counts"] == ["1", "0", "0", "30", "15", "18"]
    code, out, _ = run(capsys, "weight-dist", "dual", "--p", "2", "--m", "2", "--delta", "2", "-q")
    assert code == 0
    assert json.loads(out)["counts"] == ["1", "0", "0", "0", "15", "0"]


def test_guard_exits_3_with_a_suggestion(capsys):
    code, _, err = run(capsys, "weight-dist", "--p", "3", "--m", "2", "--delta", "3", "--max-messages", "100", "-q")
    assert code == 3
    assert "suggestion:" in err


def test_presets_listing(capsys):
    code, out, _ = run(capsys, "presets")
    assert code == 0
    assert "classification\t" in out
