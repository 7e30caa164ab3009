"""Glove byte-stream decoding and force calibration.

The glove firmware reports two 10-bit ADC channels (thumb and palm pressure
pads) as ASCII lines with an NMEA-style XOR checksum:

    F,<seq>,<time_ms>,<thumb_adc>,<palm_adc>*<ck>\\n

<ck> is two lowercase hex digits, the XOR of every payload byte from the
leading ``F`` up to but excluding the ``*``. ADC counts map to volts on a
0-5 V scale and then to Newtons through a fitted power law per channel.
A deadband pins the sensor noise floor to exactly zero force so an idle
hand never registers a ghost squeeze.
"""

from __future__ import annotations

import json
import math
import random
import re
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

ADC_MAX = 1023
ADC_REFERENCE_VOLTS = 5.0


class FrameError(ValueError):
    """Base class for frame decoding failures; corrupted frames are dropped."""


class FrameSyntaxError(FrameError):
    """Line does not match the frame grammar (truncated, bad framing)."""


class FrameFieldError(FrameError):
    """A payload field is not an unsigned decimal integer."""


class FrameRangeError(FrameError):
    """A numeric field is outside its allowed range."""


class FrameChecksumError(FrameError):
    """Payload and checksum disagree."""


class CalibrationError(ValueError):
    """Calibration fit rejected (too few points, degenerate, non-monotone)."""


class Channel(Enum):
    THUMB = "thumb"
    PALM = "palm"


@dataclass(frozen=True)
class SensorFrame:
    seq: int
    time_ms: int
    thumb_adc: int
    palm_adc: int

    def __post_init__(self) -> None:
        if self.seq < 0 or self.time_ms < 0:
            raise ValueError("seq and time_ms must be non-negative")
        for name in ("thumb_adc", "palm_adc"):
            v = getattr(self, name)
            if not (0 <= v <= ADC_MAX):
                raise ValueError(f"{name}={v} outside 0..{ADC_MAX}")


def adc_to_voltage(adc: int) -> float:
    if not (0 <= adc <= ADC_MAX):
        raise ValueError(f"adc={adc} outside 0..{ADC_MAX}")
    return adc * ADC_REFERENCE_VOLTS / ADC_MAX


def _xor_checksum(payload: bytes) -> int:
    ck = 0
    for b in payload:
        ck ^= b
    return ck


def encode_frame(frame: SensorFrame) -> bytes:
    payload = f"F,{frame.seq},{frame.time_ms},{frame.thumb_adc},{frame.palm_adc}".encode("ascii")
    return payload + b"*%02x\n" % _xor_checksum(payload)


_FRAME_RE = re.compile(rb"\A(F,([^*]*))\*([0-9a-f]{2})\n\Z")


def parse_frame(line: bytes) -> SensorFrame:
    """Decode one frame line; raises a FrameError subclass on any corruption.

    Checksums are verified before fields are interpreted, so a single
    flipped payload byte is always rejected rather than misread.
    """
    if isinstance(line, str):
        line = line.encode("ascii", errors="replace")
    m = _FRAME_RE.match(line)
    if m is None:
        raise FrameSyntaxError(f"not a frame line: {line!r}")
    payload, fields_part, ck_hex = m.group(1), m.group(2), m.group(3)
    expect = _xor_checksum(payload)
    got = int(ck_hex, 16)
    if got != expect:
        raise FrameChecksumError(
            f"checksum {ck_hex.decode()} != computed {expect:02x}")
    fields = fields_part.split(b",")
    if len(fields) != 4:
        raise FrameSyntaxError(f"expected 4 payload fields, got {len(fields)}")
    values = []
    for name, raw in zip(("seq", "time_ms", "thumb_adc", "palm_adc"), fields):
        if not raw.isdigit():
            raise FrameFieldError(f"{name} field {raw!r} is not an unsigned integer")
        values.append(int(raw))
    seq, time_ms, thumb, palm = values
    if thumb > ADC_MAX or palm > ADC_MAX:
        raise FrameRangeError(f"adc out of range: thumb={thumb} palm={palm}")
    return SensorFrame(seq=seq, time_ms=time_ms, thumb_adc=thumb, palm_adc=palm)


@dataclass(frozen=True)
class CalibrationModel:
    """Monotone ADC-to-Newtons map for one channel: F = a * V^b above a deadband."""

    channel: Channel
    a: float
    b: float
    deadband_adc: int
    source_points: tuple[tuple[int, float], ...] = ()

    def to_dict(self) -> dict:
        return {
            "channel": self.channel.value,
            "a": self.a,
            "b": self.b,
            "deadband_adc": self.deadband_adc,
            "points": [[adc, force] for adc, force in self.source_points],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CalibrationModel":
        return cls(
            channel=Channel(d["channel"]),
            a=float(d["a"]),
            b=float(d["b"]),
            deadband_adc=int(d["deadband_adc"]),
            source_points=tuple((int(p[0]), float(p[1])) for p in d.get("points", [])),
        )

    def save(self, path: str) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")

    @classmethod
    def load(cls, path: str) -> "CalibrationModel":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


def fit_calibration(points: list[tuple[int, float]], deadband_adc: int = 0,
                    channel: Channel = Channel.THUMB) -> CalibrationModel:
    """Least-squares power-law fit, log F against log V.

    Only points above the deadband with positive force enter the fit. The
    fit is rejected if it would produce a non-monotone (b <= 0) map.
    """
    usable = [(adc, f) for adc, f in points if adc > deadband_adc and f > 0]
    if any(f <= 0 for _, f in points):
        raise CalibrationError("calibration forces must be > 0 N")
    if len({adc for adc, _ in usable}) < 3:
        raise CalibrationError(
            f"insufficient points: need >= 3 distinct adc above deadband, got {len(usable)}")
    log_v = np.log([adc_to_voltage(adc) for adc, _ in usable])
    log_f = np.log([f for _, f in usable])
    if np.ptp(log_v) == 0:
        raise CalibrationError("degenerate fit: all voltages equal")
    b, log_a = np.polyfit(log_v, log_f, 1)
    if b <= 0:
        raise CalibrationError(f"non-monotone fit rejected (b={b:.4g})")
    return CalibrationModel(channel=channel, a=float(math.exp(log_a)), b=float(b),
                            deadband_adc=deadband_adc,
                            source_points=tuple((int(a_), float(f)) for a_, f in points))


def adc_to_force(adc: int, model: CalibrationModel) -> float:
    if not (0 <= adc <= ADC_MAX):
        raise ValueError(f"adc={adc} outside 0..{ADC_MAX}")
    if adc <= model.deadband_adc:
        return 0.0
    return model.a * adc_to_voltage(adc) ** model.b


def force_to_adc(force: float, model: CalibrationModel) -> int:
    """Inverse of adc_to_force, rounded to the nearest count and clamped."""
    if force < 0:
        raise ValueError(f"force must be >= 0 N, got {force}")
    if force == 0.0:
        return model.deadband_adc
    volts = (force / model.a) ** (1.0 / model.b)
    adc = round(volts * ADC_MAX / ADC_REFERENCE_VOLTS)
    return min(max(adc, 0), ADC_MAX)


def fit_residuals(model: CalibrationModel) -> list[tuple[int, float]]:
    """(adc, fitted minus measured force) for each usable source point."""
    out = []
    for adc, force in model.source_points:
        if adc > model.deadband_adc and force > 0:
            out.append((adc, adc_to_force(adc, model) - force))
    return out


@dataclass
class FsrEmulatorModel:
    """Synthetic glove: runs the calibration maps backwards, with optional noise."""

    thumb: CalibrationModel
    palm: CalibrationModel
    noise_sigma: float = 0.0  # ADC counts
    sample_rate: float = 50.0  # Hz
    seed: int = 0
    _rng: random.Random = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.noise_sigma < 0:
            raise ValueError("noise_sigma must be >= 0")
        if self.sample_rate <= 0:
            raise ValueError("sample_rate must be > 0 Hz")
        self._rng = random.Random(self.seed)

    def _emit(self, force: float, model: CalibrationModel) -> int:
        adc = force_to_adc(force, model)
        if self.noise_sigma > 0:
            adc = round(adc + self._rng.gauss(0.0, self.noise_sigma))
        return min(max(adc, 0), ADC_MAX)


def emulate_frames(force_profile: list[tuple[float, float, float]],
                   model: FsrEmulatorModel) -> list[SensorFrame]:
    """Turn a (time_ms, thumb_N, palm_N) profile into the frames a glove would send."""
    frames = []
    last_t = None
    for seq, (t_ms, thumb_n, palm_n) in enumerate(force_profile):
        if last_t is not None and t_ms < last_t:
            raise ValueError(f"profile times must be nondecreasing at t={t_ms}")
        last_t = t_ms
        if thumb_n < 0 or palm_n < 0:
            raise ValueError("commanded forces must be >= 0 N")
        frames.append(SensorFrame(
            seq=seq,
            time_ms=int(t_ms),
            thumb_adc=model._emit(thumb_n, model.thumb),
            palm_adc=model._emit(palm_n, model.palm),
        ))
    return frames


def smooth_ema(previous: float, value: float, alpha: float) -> float:
    """One step of exponential smoothing; alpha = 1 is a passthrough."""
    if not (0 < alpha <= 1):
        raise ValueError(f"alpha must be in (0, 1], got {alpha}")
    return alpha * value + (1.0 - alpha) * previous
