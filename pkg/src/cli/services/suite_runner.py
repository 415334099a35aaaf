"""
検証スイートの実行サービス

ジョブ（チェック × インスタンス）を asyncio のキューに積み、
スレッドプールで並列に評価します。各ジョブは (seed, チェック番号, インスタンス番号) から
自分の乱数列を作るので、結果はワーカー数やスケジューリングに依存しません。
集計はジョブを (チェック名, インスタンス番号) で並べてから行います。
"""

import asyncio
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.cli.services.check_registry import CHECKS, CHECK_INDEX, get_check, run_instance
from src.cli.utils.cli_util import environment_info, relative_slack
from src.config import env_loader
from src.config.constants import (
    EXIT_FAIL,
    EXIT_NO_CONVERGENCE,
    EXIT_OK,
    REPORTS_FILENAME,
    SUMMARY_FILENAME,
)
from src.config.settings_loader import SettingsLoader
from src.convex.exceptions import ConvexGeometryError, NoConvergence
from src.convex.inequalities.report import CheckReport
from src.convex.solver.options import SolverOptions
from src.types import CheckSummaryDict, EnvironmentInfo, SuiteSummaryDict
from src.utils.logger import setup_logger

logger = setup_logger("suite_runner", log_dir=env_loader.LOG_DIR + "/suite")


class JobStatus:
    PENDING = "pending"
    RUNNING = "running"
    COMPLETED = "completed"
    FAILED = "failed"
    NO_CONVERGENCE = "no_convergence"


class SuiteConfig(BaseModel):
    """
    スイートの実行条件

    Attributes:
        name: スイート名
        seed: 乱数シード
        dimensions: 対象次元（2〜4）
        instance_counts: チェック名 -> インスタンス数（載っていないチェックは実行しない）
        mode: "exact" または "float"
        vertex_range: ランダム多面体の点の数の範囲
        solver: ソルバー設定
        workers: スレッドプールのワーカー数
        output_dir: summary.json と reports.jsonl の出力先（None なら書き出さない）
    """

    model_config = ConfigDict(frozen=True)

    name: str = env_loader.DEFAULT_SUITE_NAME
    seed: int = Field(default=env_loader.SUITE_SEED, ge=0)
    dimensions: Tuple[int, ...] = (2, 3)
    instance_counts: Dict[str, int] = Field(default_factory=dict)
    mode: Literal["exact", "float"] = "exact"
    vertex_range: Tuple[int, int] = (4, 12)
    solver: SolverOptions = Field(default_factory=SolverOptions)
    workers: int = Field(default=env_loader.SUITE_WORKERS, ge=1)
    output_dir: Optional[str] = None

    @field_validator("dimensions")
    @classmethod
    def check_dimensions(cls, value: Tuple[int, ...]) -> Tuple[int, ...]:
        if not value or any(n < 2 or n > 4 for n in value):
            raise ValueError("dimensions は 2〜4 の整数の空でない列である必要があります")
        return tuple(sorted(set(value)))

    @field_validator("instance_counts")
    @classmethod
    def check_counts(cls, value: Dict[str, int]) -> Dict[str, int]:
        for name, count in value.items():
            if name not in CHECK_INDEX:
                raise ValueError(f"未知のチェックです: {name}")
            if count < 0:
                raise ValueError(f"{name} のインスタンス数が負です")
        return value

    @model_validator(mode="after")
    def check_vertex_range(self) -> "SuiteConfig":
        low, high = self.vertex_range
        if low < 3 or low > high:
            raise ValueError("vertex_range は 3 <= min <= max である必要があります")
        return self

    @property
    def exact(self) -> bool:
        return self.mode == "exact"

    @classmethod
    def from_settings(cls, loader: SettingsLoader, **overrides: Any) -> "SuiteConfig":
        """
        settings.py（と環境変数）から設定を作り、None でない overrides で上書き

        Raises:
            ValueError: settings.py の検証に失敗した場合
        """
        is_valid, errors = loader.validate_suite_settings()
        if not is_valid:
            raise ValueError("スイート設定が不正です: " + "; ".join(errors))
        solver = SolverOptions(
            tolerance=loader.get_or_default("SOLVER_TOLERANCE", env_loader.SOLVER_TOLERANCE),
            max_iterations=loader.get_or_default("SOLVER_MAX_ITERATIONS", env_loader.SOLVER_MAX_ITERATIONS),
            damping=loader.get_or_default("SOLVER_DAMPING", env_loader.SOLVER_DAMPING),
        )
        values: Dict[str, Any] = {
            "name": loader.get_or_default("SUITE_NAME", env_loader.DEFAULT_SUITE_NAME),
            "seed": loader.get_variable("SEED"),
            "dimensions": tuple(loader.get_variable("DIMENSIONS")),
            "instance_counts": dict(loader.get_variable("INSTANCE_COUNTS")),
            "mode": loader.get_variable("ARITHMETIC_MODE"),
            "vertex_range": tuple(loader.get_variable("VERTEX_COUNT_RANGE")),
            "solver": solver,
            "workers": loader.get_or_default("WORKERS", env_loader.SUITE_WORKERS),
            "output_dir": loader.get_or_default("OUTPUT_DIR", None),
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)


@dataclass
class SuiteJob:
    check: str
    instance: int
    n: int
    status: str
    created_at: datetime
    started_at: Optional[datetime] = field(default=None)
    completed_at: Optional[datetime] = field(default=None)
    report: Optional[CheckReport] = field(default=None)
    error: Optional[str] = field(default=None)
    diagnostics: Optional[Dict[str, Any]] = field(default=None)

    @property
    def key(self) -> Tuple[int, int]:
        return CHECK_INDEX[self.check], self.instance

    def to_line(self) -> Dict[str, Any]:
        """reports.jsonl の 1 行"""
        line: Dict[str, Any] = {"check": self.check, "instance": self.instance, "n": self.n, "status": self.status}
        if self.report is not None:
            line["report"] = self.report.to_dict()
        if self.error is not None:
            line["error"] = self.error
        if self.diagnostics is not None:
            line["diagnostics"] = self.diagnostics
        return line


@dataclass
class CheckSummary:
    total: int = 0
    passed: int = 0
    failed: int = 0
    equalities: int = 0
    errors: int = 0
    no_convergence: int = 0
    worst_slack: Optional[float] = None

    def add(self, job: SuiteJob) -> None:
        self.total += 1
        if job.status == JobStatus.NO_CONVERGENCE:
            self.no_convergence += 1
            return
        if job.report is None:
            self.errors += 1
            return
        if job.report.passed:
            self.passed += 1
        else:
            self.failed += 1
        if job.report.equality:
            self.equalities += 1
        slack = relative_slack(job.report)
        if self.worst_slack is None or slack < self.worst_slack:
            self.worst_slack = slack

    def to_dict(self) -> CheckSummaryDict:
        return {
            "total": self.total,
            "passed": self.passed,
            "failed": self.failed,
            "equalities": self.equalities,
            "errors": self.errors,
            "no_convergence": self.no_convergence,
            "worst_slack": self.worst_slack,
        }


@dataclass
class SuiteSummary:
    """
    スイートの集計結果

    checks の合計はジョブ数（reports.jsonl の行数）と一致します。
    """

    config: SuiteConfig
    jobs: List[SuiteJob]
    checks: Dict[str, CheckSummary]
    runtime_seconds: float
    environment: EnvironmentInfo

    @property
    def failures(self) -> int:
        return sum(c.failed + c.errors for c in self.checks.values())

    @property
    def non_converged(self) -> int:
        return sum(c.no_convergence for c in self.checks.values())

    @property
    def exit_code(self) -> int:
        """FAIL（評価エラーを含む）があれば 1、なければ非収束で 3、すべて PASS で 0"""
        if self.failures:
            return EXIT_FAIL
        if self.non_converged:
            return EXIT_NO_CONVERGENCE
        return EXIT_OK

    def solver_aggregate(self) -> Dict[str, Any]:
        """ソルバー診断（レポートの witnesses["solver"] と非収束ジョブ）の集計"""
        runs = [
            job.report.witnesses["solver"]
            for job in self.jobs
            if job.report is not None and isinstance(job.report.witnesses.get("solver"), dict)
        ]
        runs += [job.diagnostics for job in self.jobs if job.diagnostics is not None]
        if not runs:
            return {"runs": 0}
        iterations = [int(run["iterations"]) for run in runs]
        return {
            "runs": len(runs),
            "converged": sum(1 for run in runs if run["converged"]),
            "max_iterations": max(iterations),
            "mean_iterations": sum(iterations) / len(iterations),
            "max_relative_error": max(float(run["max_relative_error"]) for run in runs),
            "total_halvings": sum(int(run["halvings"]) for run in runs),
        }

    def reverse_kt_minimum(self) -> Dict[str, Any]:
        """逆 KT の比 lhs / (vol(L)·V(K^k, M^{n-k})) の最小値（定数 k!(n-k)!/n! と並べて表示）"""
        best: Optional[Dict[str, Any]] = None
        for job in self.jobs:
            if job.check != "reverse_kt" or job.report is None:
                continue
            ratio = float(job.report.witnesses["ratio"])
            factor = float(job.report.witnesses["factor"])
            if best is None or ratio / factor < best["normalized"]:
                best = {
                    "ratio": ratio,
                    "factor": factor,
                    "normalized": ratio / factor,
                    "n": job.n,
                    "k": job.report.witnesses["k"],
                    "instance": job.instance,
                }
        return best or {}

    def to_dict(self) -> SuiteSummaryDict:
        return {
            "suite": self.config.name,
            "seed": self.config.seed,
            "mode": self.config.mode,
            "dimensions": list(self.config.dimensions),
            "checks": {name: summary.to_dict() for name, summary in self.checks.items()},
            "solver": self.solver_aggregate(),
            "reverse_kt_min_ratio": self.reverse_kt_minimum(),
            "runtime_seconds": self.runtime_seconds,
            "exit_code": self.exit_code,
            "environment": self.environment,
        }

    def write(self, directory: str) -> Path:
        """summary.json と reports.jsonl を書き出す"""
        out_dir = Path(directory)
        out_dir.mkdir(parents=True, exist_ok=True)
        with open(out_dir / SUMMARY_FILENAME, "w", encoding="utf-8") as f:
            json.dump(self.to_dict(), f, ensure_ascii=False, indent=2)
        with open(out_dir / REPORTS_FILENAME, "w", encoding="utf-8") as f:
            for job in self.jobs:
                f.write(json.dumps(job.to_line(), ensure_ascii=False) + "\n")
        logger.info(f"結果を書き出しました: {out_dir}")
        return out_dir


def execute_job(config: SuiteConfig, job: SuiteJob) -> CheckReport:
    """1 ジョブを評価する（ワーカースレッドで実行）"""
    return run_instance(
        job.check,
        config.seed,
        job.instance,
        job.n,
        config.exact,
        config.vertex_range,
        config.solver,
    )


class SuiteRunner:
    """
    スイートのジョブを管理する非同期キュー

    - plan() でジョブを作成
    - run() でキューに積み、ワーカーがスレッドプールで順次処理
    - 1 ジョブの例外はそのジョブの FAILED / NO_CONVERGENCE として記録し、他のジョブは続行
    """

    def __init__(self, config: SuiteConfig) -> None:
        self.config = config
        self._queue: "asyncio.Queue[SuiteJob]" = asyncio.Queue()
        self._jobs: List[SuiteJob] = []

    def plan(self) -> List[SuiteJob]:
        """チェックの登録順・インスタンス番号順のジョブ一覧"""
        jobs: List[SuiteJob] = []
        for entry in CHECKS:
            count = self.config.instance_counts.get(entry.name, 0)
            dimensions = entry.dimensions(list(self.config.dimensions))
            if count and not dimensions:
                logger.warning(f"{entry.name}: 対象次元がスイートの次元 {self.config.dimensions} に無いためスキップします")
                continue
            for instance in range(count):
                jobs.append(
                    SuiteJob(
                        check=entry.name,
                        instance=instance,
                        n=dimensions[instance % len(dimensions)],
                        status=JobStatus.PENDING,
                        created_at=datetime.now(),
                    )
                )
        return jobs

    async def _enqueue(self, job: SuiteJob) -> None:
        self._jobs.append(job)
        await self._queue.put(job)
        logger.debug(f"Job enqueued: {job.check}#{job.instance} n={job.n}")

    async def run(self) -> SuiteSummary:
        started = time.perf_counter()
        jobs = self.plan()
        logger.info(
            f"スイート '{self.config.name}' を開始します: {len(jobs)} ジョブ, "
            f"seed={self.config.seed}, mode={self.config.mode}, workers={self.config.workers}"
        )
        for job in jobs:
            await self._enqueue(job)

        with ThreadPoolExecutor(max_workers=self.config.workers, thread_name_prefix="suite") as executor:
            workers = [
                asyncio.create_task(self._worker(executor), name=f"suite_worker_{i}")
                for i in range(self.config.workers)
            ]
            await self._queue.join()
            for task in workers:
                task.cancel()
            await asyncio.gather(*workers, return_exceptions=True)

        summary = aggregate(self.config, self._jobs, time.perf_counter() - started)
        logger.info(
            f"スイート '{self.config.name}' が終了しました: 失敗 {summary.failures}, "
            f"非収束 {summary.non_converged}, {summary.runtime_seconds:.1f} 秒"
        )
        return summary

    async def _worker(self, executor: ThreadPoolExecutor) -> None:
        """キューからジョブを取り出してスレッドプールで評価"""
        loop = asyncio.get_running_loop()
        while True:
            job = await self._queue.get()
            job.status = JobStatus.RUNNING
            job.started_at = datetime.now()
            logger.debug(f"Job started: {job.check}#{job.instance}")
            try:
                job.report = await loop.run_in_executor(executor, execute_job, self.config, job)
                job.status = JobStatus.COMPLETED
                verdict = "PASS" if job.report.passed else "FAIL"
                log = logger.info if job.report.passed else logger.error
                log(f"Job completed: {job.check}#{job.instance} n={job.n} {verdict} slack={float(job.report.slack):.3e}")
            except NoConvergence as e:
                job.status = JobStatus.NO_CONVERGENCE
                job.error = str(e)
                job.diagnostics = e.diagnostics.to_dict() if e.diagnostics is not None else None
                logger.error(f"Job failed (no convergence): {job.check}#{job.instance} - {e}")
            except ConvexGeometryError as e:
                job.status = JobStatus.FAILED
                job.error = f"{type(e).__name__}: {e}"
                logger.error(f"Job failed: {job.check}#{job.instance} - {job.error}")
            except Exception as e:
                job.status = JobStatus.FAILED
                job.error = f"{type(e).__name__}: {e}"
                logger.error(f"Job failed: {job.check}#{job.instance} - {e}", exc_info=True)
            finally:
                job.completed_at = datetime.now()
                self._queue.task_done()


def aggregate(config: SuiteConfig, jobs: List[SuiteJob], runtime_seconds: float) -> SuiteSummary:
    """(チェック, インスタンス) 順に並べてチェックごとに集計"""
    ordered = sorted(jobs, key=lambda job: job.key)
    checks: Dict[str, CheckSummary] = {}
    for job in ordered:
        checks.setdefault(job.check, CheckSummary()).add(job)
    return SuiteSummary(
        config=config,
        jobs=ordered,
        checks=checks,
        runtime_seconds=runtime_seconds,
        environment=environment_info(),
    )


def run_suite(config: SuiteConfig) -> SuiteSummary:
    """
    スイートを実行して集計を返す（output_dir があれば結果も書き出す）

    Example:
        >>> summary = run_suite(SuiteConfig(instance_counts={"brunn_minkowski": 4}))
        >>> summary.exit_code
        0
    """
    summary = asyncio.run(SuiteRunner(config).run())
    if config.output_dir:
        summary.write(config.output_dir)
    return summary


def check_names() -> List[str]:
    return [entry.name for entry in CHECKS]


def default_counts(count: int, names: Optional[List[str]] = None) -> Dict[str, int]:
    """すべて（または names）のチェックに同じインスタンス数を割り当てる"""
    selected = names or check_names()
    for name in selected:
        get_check(name)
    return {name: count for name in selected}
