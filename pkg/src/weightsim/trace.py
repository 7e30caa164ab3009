"""Trace files: JSON Lines recordings of glove frames, hand pose, and actions.

One record per tick carries the raw ADC pair alongside the tracked hand pose
(the headset provides the pose in the live system, so it rides with the
sensor data here too):

    {"t_ms": 100, "thumb_adc": 310, "palm_adc": 12, "hand_y_m": 0.05, "hand_x_m": 0.0}

Button presses the sensor stream cannot carry appear as action records, which
may interleave anywhere:

    {"action": "submit"}

Timestamps must be nondecreasing; action records may omit t_ms and inherit
the previous record's time.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

TRACE_ACTIONS = ("submit", "reset", "restart", "giveup")


class TraceError(ValueError):
    def __init__(self, line_no: int, reason: str):
        super().__init__(f"trace line {line_no}: {reason}")
        self.line_no = line_no


@dataclass(frozen=True)
class TraceSample:
    t_ms: int
    thumb_adc: int
    palm_adc: int
    hand_y_m: float
    hand_x_m: float

    def to_dict(self) -> dict:
        return {"t_ms": self.t_ms, "thumb_adc": self.thumb_adc,
                "palm_adc": self.palm_adc, "hand_y_m": self.hand_y_m,
                "hand_x_m": self.hand_x_m}


@dataclass(frozen=True)
class TraceAction:
    t_ms: int
    name: str

    def to_dict(self) -> dict:
        return {"t_ms": self.t_ms, "action": self.name}


TraceRecord = TraceSample | TraceAction


def _require_number(obj: dict, key: str, line_no: int) -> float:
    value = obj.get(key)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise TraceError(line_no, f"field {key!r} must be a number, got {value!r}")
    return value


def parse_trace_line(line: str, line_no: int, last_t: int) -> TraceRecord:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise TraceError(line_no, f"invalid JSON: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise TraceError(line_no, "record must be a JSON object")

    if "action" in obj:
        name = obj["action"]
        if name not in TRACE_ACTIONS:
            raise TraceError(line_no, f"unknown action {name!r}")
        t_ms = int(_require_number(obj, "t_ms", line_no)) if "t_ms" in obj else last_t
        return TraceAction(t_ms=t_ms, name=name)

    t_ms = int(_require_number(obj, "t_ms", line_no))
    thumb = int(_require_number(obj, "thumb_adc", line_no))
    palm = int(_require_number(obj, "palm_adc", line_no))
    if not (0 <= thumb <= 1023 and 0 <= palm <= 1023):
        raise TraceError(line_no, f"adc out of range: thumb={thumb} palm={palm}")
    return TraceSample(
        t_ms=t_ms,
        thumb_adc=thumb,
        palm_adc=palm,
        hand_y_m=float(_require_number(obj, "hand_y_m", line_no)),
        hand_x_m=float(_require_number(obj, "hand_x_m", line_no)),
    )


def load_trace(path: str) -> list[TraceRecord]:
    records: list[TraceRecord] = []
    last_t = 0
    with open(path) as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            record = parse_trace_line(line, line_no, last_t)
            if record.t_ms < last_t:
                raise TraceError(line_no,
                                 f"timestamp {record.t_ms} decreases below {last_t}")
            last_t = record.t_ms
            records.append(record)
    return records


def write_trace(records: list[TraceRecord], path: str) -> None:
    with open(path, "w") as fh:
        for record in records:
            fh.write(json.dumps(record.to_dict(), sort_keys=True))
            fh.write("\n")
