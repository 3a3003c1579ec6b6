"""Batch execution over a directory of task files, with CSV/JSON reports.

The CSV mirrors the evaluation tables: one row per attempt with per-turn
timing averages. Attempts are numbered within their scene, matching how
the tables group attempts by environment.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

from .config import RunConfig
from .runner import TaskRunner, is_scan_task
from .task import TaskReport, TaskSpec, Termination

CSV_COLUMNS = (
    "attempt",
    "success",
    "turns",
    "voter_s",
    "visual_s",
    "textual_s",
    "action_s",
    "total_per_turn_s",
)


@dataclass
class SuiteRow:
    scene: str
    attempt: int  # ordinal within the scene
    task_file: str
    report: TaskReport

    def csv_values(self) -> list:
        averages = self.report.averages
        return [
            self.attempt,
            "true" if self.report.success else "false",
            self.report.turns,
            f"{averages['voter_s']:.6f}",
            f"{averages['visual_s']:.6f}",
            f"{averages['textual_s']:.6f}",
            f"{averages['action_s']:.6f}",
            f"{averages['total_s']:.6f}",
        ]


@dataclass
class SuiteReport:
    rows: list[SuiteRow] = field(default_factory=list)

    @property
    def all_succeeded(self) -> bool:
        return all(row.report.success for row in self.rows)

    def per_environment_averages(self) -> dict[str, dict[str, float]]:
        by_scene: dict[str, list[SuiteRow]] = {}
        for row in self.rows:
            by_scene.setdefault(row.scene, []).append(row)
        out: dict[str, dict[str, float]] = {}
        for scene, rows in by_scene.items():
            n = len(rows)
            reports = [r.report for r in rows]
            out[scene] = {
                "attempts": n,
                "successes": sum(1 for r in reports if r.success),
                "turns": sum(r.turns for r in reports) / n,
                "voter_s": sum(r.averages["voter_s"] for r in reports) / n,
                "visual_s": sum(r.averages["visual_s"] for r in reports) / n,
                "textual_s": sum(r.averages["textual_s"] for r in reports) / n,
                "action_s": sum(r.averages["action_s"] for r in reports) / n,
                "total_per_turn_s": sum(r.averages["total_s"] for r in reports) / n,
            }
        return out

    def to_csv(self, path: str | Path) -> None:
        with Path(path).open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(CSV_COLUMNS)
            for row in self.rows:
                writer.writerow(row.csv_values())

    def to_json(self, path: str | Path) -> None:
        doc = {
            "rows": [
                {
                    "scene": row.scene,
                    "attempt": row.attempt,
                    "task_file": row.task_file,
                    "report": row.report.to_dict(),
                }
                for row in self.rows
            ],
            "per_environment": self.per_environment_averages(),
        }
        Path(path).write_text(json.dumps(doc, indent=2))


def run_suite(directory: str | Path, config: RunConfig | None = None) -> SuiteReport:
    """Run every task file under the directory; failures never stop the rest."""
    directory = Path(directory)
    report = SuiteReport()
    counters: dict[str, int] = {}
    for task_file in sorted(directory.glob("*.json")):
        try:
            spec = TaskSpec.from_dict(json.loads(task_file.read_text()))
        except (ValueError, KeyError) as exc:
            broken = TaskSpec(scene="?", query="(malformed task file)")
            failed = TaskReport(
                spec=broken,
                success=False,
                turns=0,
                termination=Termination.ERROR,
                error=f"malformed task file {task_file.name}: {exc}",
            )
            scene = "?"
            counters[scene] = counters.get(scene, 0) + 1
            report.rows.append(SuiteRow(scene, counters[scene], task_file.name, failed))
            continue
        runner = TaskRunner(spec, config)
        result = runner.run_scan() if is_scan_task(spec) else runner.run()
        counters[spec.scene] = counters.get(spec.scene, 0) + 1
        report.rows.append(
            SuiteRow(spec.scene, counters[spec.scene], task_file.name, result)
        )
    return report
