"""Command-line entry points: run one task, run a suite, render, serve."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .orchestrator import (
    RunConfig,
    TaskRunner,
    TaskSpec,
    is_scan_task,
    run_suite,
    serve,
)
from .world import render, resolve_scene


def _load_config(path: str | None) -> RunConfig:
    return RunConfig.from_file(path) if path else RunConfig()


def _cmd_run(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    spec = TaskSpec(
        scene=args.scene,
        query=args.query,
        mode=args.mode,
        target_label=args.target_label,
        max_turns=args.max_turns,
        rotation_step_deg=args.rotation_step,
    )
    runner = TaskRunner(spec, config)
    report = runner.run_scan() if is_scan_task(spec) else runner.run()
    config.save_recording()
    if args.out:
        report.save(args.out)
        print(f"report written to {args.out}")
    averages = report.averages
    print(
        f"success={report.success} turns={report.turns} "
        f"termination={report.termination.value} "
        f"total/turn={averages['total_s']:.3f}s"
    )
    if report.answer:
        print(report.answer)
    if report.error:
        print(f"error: {report.error}", file=sys.stderr)
    return 0 if report.success else 1


def _cmd_suite(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    report = run_suite(args.dir, config)
    config.save_recording()
    out = Path(args.out)
    report.to_csv(out)
    report.to_json(out.with_suffix(".json"))
    ok = sum(1 for row in report.rows if row.report.success)
    print(f"{ok}/{len(report.rows)} attempts succeeded; results in {out}")
    return 0 if report.all_succeeded else 1


def _cmd_render(args: argparse.Namespace) -> int:
    scene = resolve_scene(args.scene)
    frame = render(scene, scene.agent_start, args.width, args.height)
    data = frame.to_ppm() if args.out.endswith(".ppm") else frame.to_png()
    Path(args.out).write_bytes(data)
    print(f"{args.out} ({frame.width}x{frame.height})")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    config = _load_config(args.config)
    defaults = TaskSpec(
        scene=args.scene,
        query="placeholder",
        mode=args.mode,
        max_turns=args.max_turns,
    )
    print(f"serving scene {args.scene!r} on port {args.port}")
    serve(args.port, scene=args.scene, config=config, defaults=defaults, host=args.host)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="navai")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a single navigation task")
    run.add_argument("--scene", required=True, help="bundled scene name or .scene file")
    run.add_argument("--query", required=True)
    run.add_argument("--mode", choices=["oracle", "llm", "mixed"], default="oracle")
    run.add_argument("--target-label", default=None)
    run.add_argument("--max-turns", type=int, default=25)
    run.add_argument("--rotation-step", type=float, default=45.0)
    run.add_argument("--out", default=None, help="write the task report JSON here")
    run.add_argument("--config", default=None, help="endpoints/defaults config file")
    run.set_defaults(fn=_cmd_run)

    suite = sub.add_parser("suite", help="run every task file in a directory")
    suite.add_argument("--dir", required=True)
    suite.add_argument("--out", required=True, help="CSV path (JSON written alongside)")
    suite.add_argument("--config", default=None)
    suite.set_defaults(fn=_cmd_suite)

    rnd = sub.add_parser("render", help="render a scene's start view to an image")
    rnd.add_argument("--scene", required=True)
    rnd.add_argument("--out", required=True, help=".png or .ppm")
    rnd.add_argument("--width", type=int, default=512)
    rnd.add_argument("--height", type=int, default=512)
    rnd.set_defaults(fn=_cmd_render)

    srv = sub.add_parser("serve", help="start the HTTP service")
    srv.add_argument("--port", type=int, required=True)
    srv.add_argument("--host", default="127.0.0.1")
    srv.add_argument("--scene", default="highway")
    srv.add_argument("--mode", choices=["oracle", "llm", "mixed"], default="oracle")
    srv.add_argument("--max-turns", type=int, default=25)
    srv.add_argument("--config", default=None)
    srv.set_defaults(fn=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
