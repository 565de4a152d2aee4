# tests/test_commands.py

import pytest
from pydantic import ValidationError

from core.commands import EXIT_FAILED, EXIT_OK, RunConfig, handle_command, run_suite
from core.errors import GuardExceeded, ParameterError
from core.schemas import CheckResult, VerifyReport
from core.suites import SUITES, ParamSet, SuiteContext


def test_run_config_validation():
    config = RunConfig(command="build-code", p=3, m=2, delta=3)
    assert config.q == 9
    assert RunConfig(command="verify", target="classification", p=3, m=1).q == 3
    with pytest.raises(ValidationError):
        RunConfig(command="build-code", p=4, m=2)
    with pytest.raises(ValidationError):
        RunConfig(command="build-code", p=3, m=2, delta=4)
    with pytest.raises(ValidationError):
        RunConfig(command="build-code", p=3)
    with pytest.raises(ValidationError):
        RunConfig(command="build-code", p=3, m=2, threads=0)
    with pytest.raises(ValidationError):
        RunConfig(command="decode")
    with pytest.raises(ValidationError):
        RunConfig(command="verify", target="params", p=3, m=1, delta=3)


@pytest.mark.parametrize("p, m, delta, k", [(3, 2, 3, 6), (2, 2, 2, 3), (5, 2, 5, 18)])
def test_build_code(p, m, delta, k):
    result = handle_command(RunConfig(command="build-code", p=p, m=m, delta=delta))
    assert result.exit_code == EXIT_OK
    (code,) = result.documents
    assert code.dimension == k
    assert len(code.generator) == code.n - k + 1
    assert len(code.defining_set) == k


def test_build_code_dual_side():
    (code,) = handle_command(RunConfig(command="build-code", p=3, m=2, delta=3, side="dual")).documents
    assert code.dimension == 4
    assert code.defining_set == [1, 2, 8, 9]


def test_weight_dist_dual_by_trace_and_by_macwilliams():
    traced = handle_command(RunConfig(command="weight-dist", p=3, m=2, delta=3, side="dual")).documents[0]
    assert traced.method == "trace"
    assert traced.counts == ["1", "0", "0", "0", "0", "0", "240", "0", "2160", "2000", "2160"]
    config = RunConfig(command="weight-dist", p=2, m=2, delta=2, side="dual", method="macwilliams")
    via_primary = handle_command(config).documents[0]
    assert via_primary.counts == ["1", "0", "0", "0", "15", "0"]


def test_weight_dist_primary_cross_checks_small_codes():
    (dist,) = handle_command(RunConfig(command="weight-dist", p=2, m=2, delta=2)).documents
    assert dist.method == "exhaustive"
    assert dist.counts == ["1", "0", "0", "30", "15", "18"]


def test_weight_dist_primary_via_macwilliams():
    config = RunConfig(command="weight-dist", p=3, m=2, delta=3, method="macwilliams")
    (dist,) = handle_command(config).documents
    assert dist.counts[:5] == ["1", "0", "0", "0", "240"]
    assert sum(int(c) for c in dist.counts) == 9 ** 6


def test_weight_dist_rejects_trace_on_primary():
    with pytest.raises(ParameterError):
        handle_command(RunConfig(command="weight-dist", p=3, m=2, delta=3, method="trace"))


def test_weight_dist_guard():
    with pytest.raises(GuardExceeded):
        handle_command(RunConfig(command="weight-dist", p=3, m=2, delta=3, max_messages=100))


def test_verify_unknown_id_and_missing_parameters():
    with pytest.raises(ParameterError):
        handle_command(RunConfig(command="verify", target="nope", p=3, m=2, delta=3))
    with pytest.raises(ParameterError):
        handle_command(RunConfig(command="verify", target="params"))
    with pytest.raises(ParameterError):
        handle_command(RunConfig(command="build-code", p=3, m=2))


def test_verify_params_suite_passes():
    result = handle_command(RunConfig(command="verify", target="params", p=2, m=2, delta=2))
    assert result.exit_code == EXIT_OK
    (report,) = result.documents
    assert report.passed
    assert "d = 3" in [c.name for c in report.checks]


def test_failed_check_gives_exit_one(monkeypatch):
    def failing(params, ctx):
        return [CheckResult(name="always", passed=False)]

    monkeypatch.setitem(SUITES, "params", failing)
    result = handle_command(RunConfig(command="verify", target="params", p=2, m=2, delta=2))
    assert result.exit_code == EXIT_FAILED


def test_parameter_sets_override_the_config():
    config = RunConfig(command="verify", target="classification")
    sets = [ParamSet(p=3, m=1), ParamSet(p=2, m=2, h=2)]
    result = handle_command(config, sets)
    assert [r.parameters["q"] for r in result.documents] == [3, 4]
    assert all(r.passed for r in result.documents)


def test_run_suite_report_shape():
    report = run_suite("classification", ParamSet(p=3, m=1), SuiteContext(samples=10))
    assert isinstance(report, VerifyReport)
    assert report.suite == "classification"
    assert report.checks[0].name == "4 invariant codes"
    assert VerifyReport.model_validate_json(report.model_dump_json()) == report
