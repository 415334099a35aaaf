"""検証スイート（チェック一覧・ジョブ計画・集計・終了コード）のテスト"""

import json
from datetime import datetime

import pytest
from pydantic import ValidationError

from src.cli.services.check_registry import CHECKS, get_check, instance_rng, run_instance
from src.cli.services.suite_runner import (
    JobStatus,
    SuiteConfig,
    SuiteJob,
    SuiteRunner,
    aggregate,
    check_names,
    default_counts,
    run_suite,
)
from src.config.constants import (
    EXIT_FAIL,
    EXIT_NO_CONVERGENCE,
    EXIT_OK,
    REPORTS_FILENAME,
    SUMMARY_FILENAME,
    get_settings_path,
)
from src.config.settings_loader import KNOWN_CHECKS, SettingsLoader
from src.convex.inequalities.report import CheckReport
from src.convex.solver.options import SolverOptions

_CHEAP = {"brunn_minkowski": 4, "box_bound": 2, "flop_volume": 2, "mixed_discriminant_kt": 2}


def _config(**kwargs) -> SuiteConfig:
    values = {"seed": 42, "dimensions": (2,), "instance_counts": _CHEAP, "vertex_range": (4, 6)}
    values.update(kwargs)
    return SuiteConfig(**values)


def _lines(summary):
    return [job.to_line() for job in summary.jobs]


# ===== チェック一覧 =====
def test_registry_matches_known_checks():
    assert tuple(check_names()) == KNOWN_CHECKS
    assert len(CHECKS) == 23


def test_check_dimensions():
    assert get_check("brunn_minkowski").dimensions([2, 3]) == [2, 3]
    assert get_check("log_concavity").dimensions([2, 3]) == [3]
    assert get_check("log_concavity").dimensions([2]) == []
    assert get_check("flop_volume").dimensions([2]) == [3]
    with pytest.raises(KeyError):
        get_check("unknown")


def test_instance_rng_is_deterministic():
    first = instance_rng(1, "morse", 3).random(4).tolist()
    assert instance_rng(1, "morse", 3).random(4).tolist() == first
    assert instance_rng(1, "morse", 4).random(4).tolist() != first
    assert instance_rng(1, "box_bound", 3).random(4).tolist() != first


def test_run_instance_homothetic_period():
    opts = SolverOptions()
    plain = run_instance("brunn_minkowski", 42, 0, 2, True, (4, 6), opts)
    assert plain.passed
    homothetic = run_instance("brunn_minkowski", 42, 3, 2, True, (4, 6), opts)
    assert homothetic.passed
    assert homothetic.witnesses["homothetic"]


def test_run_instance_is_reproducible():
    opts = SolverOptions()
    first = run_instance("box_bound", 9, 1, 3, True, (4, 8), opts)
    second = run_instance("box_bound", 9, 1, 3, True, (4, 8), opts)
    assert first.to_dict() == second.to_dict()


# ===== 設定 =====
def test_config_validation():
    with pytest.raises(ValidationError):
        _config(dimensions=(5,))
    with pytest.raises(ValidationError):
        _config(instance_counts={"unknown": 1})
    with pytest.raises(ValidationError):
        _config(instance_counts={"morse": -1})
    with pytest.raises(ValidationError):
        _config(vertex_range=(2, 5))
    assert _config(dimensions=(3, 2, 3)).dimensions == (2, 3)


def test_config_from_settings():
    loader = SettingsLoader(str(get_settings_path("default_suite")))
    config = SuiteConfig.from_settings(loader, seed=7, workers=None)
    assert config.seed == 7
    assert set(config.instance_counts) == set(KNOWN_CHECKS)
    assert config.exact == (config.mode == "exact")


def test_config_from_invalid_settings(tmp_path):
    path = tmp_path / "settings.py"
    path.write_text(
        "SEED = -1\nDIMENSIONS = [2]\nARITHMETIC_MODE = 'exact'\nVERTEX_COUNT_RANGE = (4, 6)\nINSTANCE_COUNTS = {}\n",
        encoding="utf-8",
    )
    with pytest.raises(ValueError, match="SEED"):
        SuiteConfig.from_settings(SettingsLoader(str(path)))


def test_default_counts():
    assert default_counts(3, ["morse"]) == {"morse": 3}
    assert len(default_counts(1)) == 23
    with pytest.raises(KeyError):
        default_counts(1, ["unknown"])


# ===== 計画 =====
def test_plan_cycles_dimensions_and_skips_unavailable_checks():
    config = _config(dimensions=(2, 3), instance_counts={"morse": 3, "log_concavity": 2, "flop_volume": 1})
    jobs = SuiteRunner(config).plan()
    assert [(job.check, job.n) for job in jobs] == [
        ("morse", 2),
        ("morse", 3),
        ("morse", 2),
        ("log_concavity", 3),
        ("log_concavity", 3),
        ("flop_volume", 3),
    ]
    skipped = SuiteRunner(_config(instance_counts={"log_concavity": 2})).plan()
    assert skipped == []


# ===== 実行と集計 =====
def test_suite_passes_and_is_deterministic():
    first = run_suite(_config())
    assert first.exit_code == EXIT_OK
    assert sum(c.total for c in first.checks.values()) == 10
    assert first.checks["brunn_minkowski"].equalities >= 1

    again = run_suite(_config(workers=3))
    assert _lines(again) == _lines(first)
    assert again.to_dict()["checks"] == first.to_dict()["checks"]


def test_suite_writes_results(tmp_path):
    summary = run_suite(_config(output_dir=str(tmp_path)))
    lines = (tmp_path / REPORTS_FILENAME).read_text(encoding="utf-8").splitlines()
    assert len(lines) == len(summary.jobs)
    assert json.loads(lines[0])["check"] == "brunn_minkowski"
    written = json.loads((tmp_path / SUMMARY_FILENAME).read_text(encoding="utf-8"))
    assert written["exit_code"] == EXIT_OK
    assert written["seed"] == 42


def test_non_convergence_gives_exit_code_three():
    config = _config(
        instance_counts={"solver_round_trip": 1},
        solver=SolverOptions(tolerance=1e-14, max_iterations=1),
    )
    summary = run_suite(config)
    assert summary.non_converged == 1
    assert summary.failures == 0
    assert summary.exit_code == EXIT_NO_CONVERGENCE
    [job] = summary.jobs
    assert job.status == JobStatus.NO_CONVERGENCE
    assert job.diagnostics is not None
    assert summary.solver_aggregate()["runs"] == 1


def _job(check, instance, status, report=None, error=None):
    return SuiteJob(
        check=check, instance=instance, n=2, status=status, created_at=datetime.now(), report=report, error=error
    )


def test_failures_take_precedence():
    passing = CheckReport.build("morse", 2.0, 1.0, 1.0)
    failing = CheckReport("morse", 1.0, 1.0, -1.0)
    jobs = [
        _job("morse", 1, JobStatus.COMPLETED, failing),
        _job("morse", 0, JobStatus.COMPLETED, passing),
        _job("brunn_minkowski", 0, JobStatus.NO_CONVERGENCE, error="no convergence"),
    ]
    summary = aggregate(_config(), jobs, 0.0)
    assert [job.key for job in summary.jobs] == [(0, 0), (3, 0), (3, 1)]
    assert summary.checks["morse"].failed == 1
    assert summary.checks["morse"].worst_slack < 0
    assert summary.exit_code == EXIT_FAIL


def test_evaluation_errors_count_as_failures():
    jobs = [_job("morse", 0, JobStatus.FAILED, error="DegenerateInput: x")]
    summary = aggregate(_config(), jobs, 0.0)
    assert summary.checks["morse"].errors == 1
    assert summary.exit_code == EXIT_FAIL
    assert summary.to_dict()["checks"]["morse"]["errors"] == 1
