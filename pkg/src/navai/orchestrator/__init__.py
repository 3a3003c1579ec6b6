"""Turn-loop orchestration: tasks, batch suites, and the live service."""

from .backends import ComponentBundle, build_bundle
from .config import RunConfig
from .runner import TaskRunner, is_scan_task, run_scan, run_task
from .service import create_app, serve
from .suite import CSV_COLUMNS, SuiteReport, SuiteRow, run_suite
from .task import (
    TIMING_COLUMNS,
    Mode,
    TaskReport,
    TaskSpec,
    Termination,
    TurnRecord,
    TurnTimings,
)

__all__ = [
    "CSV_COLUMNS",
    "ComponentBundle",
    "Mode",
    "RunConfig",
    "SuiteReport",
    "SuiteRow",
    "TIMING_COLUMNS",
    "TaskReport",
    "TaskRunner",
    "TaskSpec",
    "Termination",
    "TurnRecord",
    "TurnTimings",
    "build_bundle",
    "create_app",
    "is_scan_task",
    "run_scan",
    "run_suite",
    "run_task",
    "serve",
]
