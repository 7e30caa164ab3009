"""Run configuration and the batch entry points behind the CLI.

A run config is a JSON object with exactly one of ``trace`` (replay mode) or
``agent`` (cohort mode):

    {
      "dynamics": {"cd_enabled": true, "ratio_cap": 4.0, ...},
      "calibration": {"thumb": "thumb_cal.json", "palm": "palm_cal.json"},
      "game": {"name": "arrange", "seed": 7},
      "trace": "session.jsonl",
      "agent": {"weber_fraction": 0.15, "absolute_noise": 0.0, "cue_gain": 1.0},
      "cohort": {"n_per_condition": 6, "base_seed": 1, "attempt_cap": 1000},
      "output": "report.json",
      "csv": "report.csv"
    }

Unknown dynamics keys are rejected rather than ignored so a typo cannot
silently fall back to a default. All outputs are deterministic: no clocks,
no locale, keys sorted.
"""

from __future__ import annotations

import csv
import json
import os
from dataclasses import dataclass, fields

from .agents import CohortReport, ParticipantModel, run_cohort
from .core import DynamicsConfig
from .games import AttemptReport, Game
from .replay import replay_trace
from .sensor import CalibrationModel, Channel, fit_calibration, fit_residuals
from .service import default_calibration
from .trace import load_trace


class ConfigError(ValueError):
    pass


_DYNAMICS_FIELDS = {f.name for f in fields(DynamicsConfig)}


def dynamics_from_dict(d: dict) -> DynamicsConfig:
    unknown = set(d) - _DYNAMICS_FIELDS
    if unknown:
        raise ConfigError(f"unknown dynamics keys: {sorted(unknown)}")
    try:
        return DynamicsConfig(**d)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad dynamics config: {exc}") from None


@dataclass
class RunConfig:
    dynamics: DynamicsConfig
    thumb_cal: CalibrationModel
    palm_cal: CalibrationModel
    game: Game | None
    seed: int
    trace_path: str | None
    agent: ParticipantModel | None
    n_per_condition: int
    base_seed: int
    attempt_cap: int
    output: str | None
    csv_path: str | None

    @property
    def mode(self) -> str:
        return "replay" if self.trace_path is not None else "cohort"


def load_config(path: str) -> RunConfig:
    if not os.path.exists(path):
        raise ConfigError(f"config file not found: {path}")
    with open(path) as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc.msg}") from None
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")

    trace_path = raw.get("trace")
    agent_raw = raw.get("agent")
    if (trace_path is None) == (agent_raw is None):
        raise ConfigError("config needs exactly one of 'trace' or 'agent'")
    if trace_path is not None and not os.path.exists(trace_path):
        raise ConfigError(f"trace file not found: {trace_path}")

    dynamics = dynamics_from_dict(raw.get("dynamics", {}))

    cal = raw.get("calibration", {})
    thumb_default, palm_default = default_calibration()
    try:
        thumb = CalibrationModel.load(cal["thumb"]) if "thumb" in cal else thumb_default
        palm = CalibrationModel.load(cal["palm"]) if "palm" in cal else palm_default
    except FileNotFoundError as exc:
        raise ConfigError(f"calibration file not found: {exc.filename}") from None

    game_raw = raw.get("game", {})
    game = None
    if "name" in game_raw:
        try:
            game = Game(game_raw["name"])
        except ValueError:
            raise ConfigError(f"unknown game {game_raw['name']!r}") from None
    if trace_path is not None and game is None:
        raise ConfigError("replay mode needs game.name")

    agent = None
    if agent_raw is not None:
        try:
            agent = ParticipantModel(
                weber_fraction=float(agent_raw.get("weber_fraction", 0.0)),
                absolute_noise=float(agent_raw.get("absolute_noise", 0.0)),
                cue_gain=float(agent_raw.get("cue_gain", 0.0)),
            )
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad agent config: {exc}") from None

    cohort = raw.get("cohort", {})
    return RunConfig(
        dynamics=dynamics,
        thumb_cal=thumb,
        palm_cal=palm,
        game=game,
        seed=int(game_raw.get("seed", 0)),
        trace_path=trace_path,
        agent=agent,
        n_per_condition=int(cohort.get("n_per_condition", 6)),
        base_seed=int(cohort.get("base_seed", 0)),
        attempt_cap=int(cohort.get("attempt_cap", 1000)),
        output=raw.get("output"),
        csv_path=raw.get("csv"),
    )


def write_json(obj: dict, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def replay(config: RunConfig) -> AttemptReport:
    if config.mode != "replay":
        raise ConfigError("config is not in replay mode (no trace)")
    records = load_trace(config.trace_path)
    return replay_trace(records, config.game, config.seed, config.dynamics,
                        config.thumb_cal, config.palm_cal)


def simulate_cohort(config: RunConfig) -> CohortReport:
    if config.mode != "cohort":
        raise ConfigError("config is not in cohort mode (no agent)")
    return run_cohort(config.n_per_condition, config.agent, config.base_seed,
                      attempt_cap=config.attempt_cap)


COHORT_CSV_COLUMNS = ("condition", "agent_index",
                      "arrange_attempts", "arrange_solved", "arrange_capped",
                      "balance_attempts", "balance_solved", "balance_capped")


def write_cohort_csv(report: CohortReport, path: str) -> None:
    """Flat table for external analysis: one row per agent, both games."""
    by_key = {(r.condition, r.agent_index, r.game): r.report
              for r in report.results}
    conditions = sorted({r.condition for r in report.results},
                        key=lambda c: c.value)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(COHORT_CSV_COLUMNS)
        for condition in conditions:
            for i in range(report.n_per_condition):
                row = [condition.value, i]
                for game in Game:
                    rep = by_key[(condition, i, game)]
                    row.extend([rep.attempts, int(rep.solved), int(rep.capped)])
                writer.writerow(row)


def calibrate(points_path: str, out_path: str) -> CalibrationModel:
    """Fit a calibration from a points file and write the model JSON.

    Points file: {"channel": "thumb"|"palm", "deadband_adc": int,
                  "points": [[adc, newtons], ...]}
    """
    if not os.path.exists(points_path):
        raise ConfigError(f"points file not found: {points_path}")
    with open(points_path) as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"points file is not valid JSON: {exc.msg}") from None
    try:
        channel = Channel(raw.get("channel", "thumb"))
        deadband = int(raw.get("deadband_adc", 0))
        points = [(int(p[0]), float(p[1])) for p in raw["points"]]
    except (KeyError, TypeError, ValueError, IndexError):
        raise ConfigError("points file must carry points: [[adc, newtons], ...]") from None
    model = fit_calibration(points, deadband_adc=deadband, channel=channel)
    model.save(out_path)
    return model


def format_residuals(model: CalibrationModel) -> str:
    lines = [f"fit: a={model.a:.9g} b={model.b:.9g} deadband={model.deadband_adc}"]
    worst = 0.0
    for adc, residual in fit_residuals(model):
        worst = max(worst, abs(residual))
        lines.append(f"adc={adc} residual={residual:+.3e} N")
    lines.append(f"max_abs_residual={worst:.3e} N")
    return "\n".join(lines)
