"""weightsim command line.

    weightsim replay    --trace T.jsonl --config C.json --out R.json
    weightsim cohort    --config C.json --n 6 --seed S --out R.json --csv R.csv
    weightsim calibrate --points P.json --out M.json
    weightsim serve     --port 8700 --config C.json [--ui DIR]

Exit code 0 on success; on failure a single JSON line {"error": "..."} goes
to stderr and the exit code is nonzero.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import harness


def _fail(message: str) -> int:
    sys.stderr.write(json.dumps({"error": message}) + "\n")
    return 1


def _cmd_replay(args: argparse.Namespace) -> int:
    config = harness.load_config(args.config)
    if args.trace:
        config.trace_path = args.trace
    report = harness.replay(config)
    out = args.out or config.output or "replay_report.json"
    harness.write_json(report.to_dict(), out)
    print(f"wrote {out} (attempts={report.attempts}, solved={report.solved})")
    return 0


def _cmd_cohort(args: argparse.Namespace) -> int:
    config = harness.load_config(args.config)
    if args.n is not None:
        config.n_per_condition = args.n
    if args.seed is not None:
        config.base_seed = args.seed
    report = harness.simulate_cohort(config)
    out = args.out or config.output or "cohort_report.json"
    harness.write_json(report.to_dict(), out)
    wrote = [out]
    csv_path = args.csv or config.csv_path
    if csv_path:
        harness.write_cohort_csv(report, csv_path)
        wrote.append(csv_path)
    print(f"wrote {' and '.join(wrote)} "
          f"(n={config.n_per_condition} per condition per game)")
    return 0


def _cmd_calibrate(args: argparse.Namespace) -> int:
    model = harness.calibrate(args.points, args.out)
    print(harness.format_residuals(model))
    print(f"wrote {args.out}")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import ServiceConfig, create_app

    service = ServiceConfig()
    if args.config:
        run = harness.load_config(args.config)
        service = ServiceConfig(dynamics=run.dynamics, thumb_cal=run.thumb_cal,
                                palm_cal=run.palm_cal)
    app = create_app(service)
    if args.ui:
        from fastapi.staticfiles import StaticFiles
        app.mount("/", StaticFiles(directory=args.ui, html=True), name="ui")
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="weightsim",
                                     description="pseudo-haptic weight simulation harness")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("replay", help="replay a recorded trace through the pipeline")
    p.add_argument("--trace", help="trace file (overrides config)")
    p.add_argument("--config", required=True)
    p.add_argument("--out", help="report path (overrides config)")
    p.set_defaults(fn=_cmd_replay)

    p = sub.add_parser("cohort", help="run synthetic participants through both games")
    p.add_argument("--config", required=True)
    p.add_argument("--n", type=int, help="agents per condition (overrides config)")
    p.add_argument("--seed", type=int, help="base seed (overrides config)")
    p.add_argument("--out", help="JSON report path")
    p.add_argument("--csv", help="per-agent CSV path")
    p.set_defaults(fn=_cmd_cohort)

    p = sub.add_parser("calibrate", help="fit an adc-to-force calibration")
    p.add_argument("--points", required=True, help="measured (adc, N) points JSON")
    p.add_argument("--out", required=True, help="calibration model output path")
    p.set_defaults(fn=_cmd_calibrate)

    p = sub.add_parser("serve", help="run the live session service")
    p.add_argument("--port", type=int, default=8700)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--config", help="run config supplying dynamics/calibration")
    p.add_argument("--ui", help="static directory to serve at / (built frontend)")
    p.set_defaults(fn=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (harness.ConfigError, ValueError, OSError) as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
