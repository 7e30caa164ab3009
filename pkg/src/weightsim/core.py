"""Pseudo-haptic weight model.

The lift illusion works by scaling the rendered (display) motion of a held
object relative to the tracked hand motion. The scale factor is the ratio of
the force the user actually exerts to the force the object's weight demands,
so a too-light squeeze makes the object visibly lag and a hard squeeze makes
it overshoot. Everything here is a pure function over plain value types; the
session layer owns time and mutation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

STANDARD_GRAVITY = 9.80665  # m/s^2


class Gesture(Enum):
    NONE = "none"
    PINCH = "pinch"
    GRIP = "grip"


class Phase(Enum):
    FREE = "free"
    HELD_RESTING = "held_resting"
    LIFTING = "lifting"
    FALLING = "falling"


class ForceComparison(Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"


class DisplayRule(Enum):
    """What the renderer should do with the object this tick."""

    STAY_STATIC = "stay_static"
    BEGIN_LIFT = "begin_lift"
    DISPLAY_EQUALS_PHYSICAL = "display_equals_physical"
    DISPLAY_ABOVE_PHYSICAL = "display_above_physical"
    DISPLAY_BELOW_PHYSICAL = "display_below_physical"


@dataclass(frozen=True)
class DynamicsConfig:
    gravity: float = STANDARD_GRAVITY
    pinch_gain: float = 1.0
    grip_gain: float = 1.0
    pinch_threshold: float = 0.05  # N
    grip_threshold: float = 0.5  # N
    grab_radius: float = 0.10  # m
    release_ratio: float = 0.25
    release_hold_ms: float = 150.0
    ratio_cap: float = 4.0
    cd_enabled: bool = True

    def __post_init__(self) -> None:
        for name in ("gravity", "pinch_gain", "grip_gain", "pinch_threshold",
                     "grip_threshold", "grab_radius", "release_ratio",
                     "release_hold_ms", "ratio_cap"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be strictly positive")
        if not (self.release_ratio < 1.0 <= self.ratio_cap):
            raise ValueError("require release_ratio < 1 <= ratio_cap")


@dataclass(frozen=True)
class ForceSample:
    """One resolved glove reading: raw channel forces plus the gesture verdict."""

    time_ms: float
    thumb_force: float
    palm_force: float
    gesture: Gesture
    effective_force: float


@dataclass(frozen=True)
class HandState:
    time_ms: float
    height: float  # m
    horizontal_position: float = 0.0  # m, side-view x used for placement
    grab_target: int | None = None


@dataclass(frozen=True)
class ObjectState:
    """A virtual cube.

    physical_height is the hand-attachment height (where the tracked hand last
    was while holding); display_height is where the cube is drawn. The two
    deliberately diverge while lifting, that divergence is the illusion.
    low_force_ms and fall_speed are bookkeeping for the release dwell and the
    gravity drop; they are zero outside the phases that use them.
    """

    mass: float  # grams
    expected_force: float  # N, stored once at construction
    phase: Phase = Phase.FREE
    physical_height: float = 0.0
    display_height: float = 0.0
    grab_height: float = 0.0
    support_height: float = 0.0
    horizontal_position: float = 0.0
    fall_speed: float = 0.0
    low_force_ms: float = 0.0

    @classmethod
    def resting(cls, mass: float, *, support_height: float = 0.0,
                horizontal_position: float = 0.0,
                gravity: float = STANDARD_GRAVITY) -> "ObjectState":
        return cls(
            mass=mass,
            expected_force=expected_force(mass, gravity=gravity),
            phase=Phase.FREE,
            physical_height=support_height,
            display_height=support_height,
            grab_height=support_height,
            support_height=support_height,
            horizontal_position=horizontal_position,
        )


def expected_force(mass: float, *, gravity: float = STANDARD_GRAVITY) -> float:
    """Weight in Newtons of a mass given in grams; the lift threshold."""
    if mass <= 0:
        raise ValueError(f"mass must be > 0 g, got {mass}")
    return mass / 1000.0 * gravity


def work_done(force: float, height_change: float) -> float:
    """Mechanical work of moving against a constant force; negative going down."""
    return force * height_change


def cd_ratio(actual_force: float, expected: float, *, ratio_cap: float = 4.0) -> float:
    """Control/display ratio: exerted force over the lift threshold, clamped.

    The clamp keeps sensor spikes from teleporting the display position.
    """
    if expected <= 0:
        raise ValueError(f"expected force must be > 0 N, got {expected}")
    r = actual_force / expected
    return min(max(r, 0.0), ratio_cap)


def resolve_gesture(thumb_force: float, palm_force: float,
                    cfg: DynamicsConfig) -> tuple[Gesture, float]:
    """Pick the dominant squeeze channel and the force it contributes.

    Palm pressure above its threshold wins (grip); otherwise thumb pressure
    above its threshold counts as a pinch. The channels are alternatives,
    not additive.
    """
    if thumb_force < 0 or palm_force < 0:
        raise ValueError("channel forces must be >= 0 N")
    if palm_force >= cfg.grip_threshold:
        return Gesture.GRIP, cfg.grip_gain * palm_force
    if thumb_force >= cfg.pinch_threshold:
        return Gesture.PINCH, cfg.pinch_gain * thumb_force
    return Gesture.NONE, 0.0


def make_sample(time_ms: float, thumb_force: float, palm_force: float,
                cfg: DynamicsConfig) -> ForceSample:
    gesture, eff = resolve_gesture(thumb_force, palm_force, cfg)
    return ForceSample(time_ms=time_ms, thumb_force=thumb_force,
                       palm_force=palm_force, gesture=gesture,
                       effective_force=eff)


_TRANSITIONS: dict[tuple[Phase, ForceComparison], tuple[Phase, DisplayRule]] = {
    (Phase.HELD_RESTING, ForceComparison.LESS):
        (Phase.HELD_RESTING, DisplayRule.STAY_STATIC),
    (Phase.HELD_RESTING, ForceComparison.EQUAL):
        (Phase.LIFTING, DisplayRule.BEGIN_LIFT),
    (Phase.HELD_RESTING, ForceComparison.GREATER):
        (Phase.LIFTING, DisplayRule.BEGIN_LIFT),
    (Phase.LIFTING, ForceComparison.EQUAL):
        (Phase.LIFTING, DisplayRule.DISPLAY_EQUALS_PHYSICAL),
    (Phase.LIFTING, ForceComparison.GREATER):
        (Phase.LIFTING, DisplayRule.DISPLAY_ABOVE_PHYSICAL),
    (Phase.LIFTING, ForceComparison.LESS):
        (Phase.LIFTING, DisplayRule.DISPLAY_BELOW_PHYSICAL),
}


def lift_rule_transition(phase: Phase,
                      comparison: ForceComparison) -> tuple[Phase, DisplayRule]:
    """Resting/lifting rule table for a held object.

    Resting with too little force stays put; matching or exceeding the weight
    starts the lift. While lifting, the display tracks, leads, or lags the
    hand according to the same comparison. Free and falling objects are not
    covered here; step_dynamics owns those.
    """
    try:
        return _TRANSITIONS[(phase, comparison)]
    except KeyError:
        raise ValueError(f"no rule for phase {phase.value}") from None


def compare_force(effective_force: float, expected: float) -> ForceComparison:
    if effective_force < expected:
        return ForceComparison.LESS
    if effective_force == expected:
        return ForceComparison.EQUAL
    return ForceComparison.GREATER


def lift_ratio(effective_force: float, expected: float,
               cfg: DynamicsConfig) -> float:
    """Per-tick display scale R.

    With the dynamic ratio disabled this degrades to the binary baseline:
    the object moves 1:1 when the force meets the weight and not at all
    otherwise.
    """
    if cfg.cd_enabled:
        return cd_ratio(effective_force, expected, ratio_cap=cfg.ratio_cap)
    return 1.0 if effective_force >= expected else 0.0


def hand_distance(obj: ObjectState, hand: HandState) -> float:
    return math.hypot(hand.horizontal_position - obj.horizontal_position,
                      hand.height - obj.display_height)


def force_release(obj: ObjectState) -> ObjectState:
    """Drop a held object immediately (explicit release, lost link, give-up)."""
    if obj.phase not in (Phase.HELD_RESTING, Phase.LIFTING):
        return obj
    return replace(obj, phase=Phase.FALLING, fall_speed=0.0, low_force_ms=0.0)


def step_dynamics(obj: ObjectState, hand: HandState, sample: ForceSample,
                  dt: float, cfg: DynamicsConfig) -> ObjectState:
    """Advance one object by one tick.

    Free objects get grabbed when the hand is close enough and squeezing.
    Held objects follow the rule table: while lifting, the display height
    advances by R times the hand's height change this tick. A sustained
    under-squeeze (R below release_ratio for release_hold_ms) or a fully
    opened hand drops the object, which then falls under gravity to its
    support. The display height never goes below the support.
    """
    if dt <= 0:
        raise ValueError("dt must be > 0 s")

    if obj.phase is Phase.FREE:
        if sample.effective_force > 0 and hand_distance(obj, hand) <= cfg.grab_radius:
            return replace(
                obj,
                phase=Phase.HELD_RESTING,
                physical_height=hand.height,
                grab_height=hand.height,
                display_height=obj.support_height,
                horizontal_position=hand.horizontal_position,
                fall_speed=0.0,
                low_force_ms=0.0,
            )
        return obj

    if obj.phase is Phase.FALLING:
        speed = obj.fall_speed + cfg.gravity * dt
        height = obj.display_height - speed * dt
        if height <= obj.support_height:
            return replace(obj, phase=Phase.FREE,
                           display_height=obj.support_height,
                           physical_height=obj.support_height,
                           fall_speed=0.0, low_force_ms=0.0)
        return replace(obj, display_height=height, fall_speed=speed)

    # Held (resting or lifting) from here on.
    eff = sample.effective_force
    if eff == 0.0:
        return force_release(obj)

    ratio = lift_ratio(eff, obj.expected_force, cfg)
    next_phase, rule = lift_rule_transition(obj.phase,
                                         compare_force(eff, obj.expected_force))

    if next_phase is Phase.LIFTING:
        hand_delta = hand.height - obj.physical_height
        display = max(obj.support_height,
                      obj.display_height + ratio * hand_delta)
    else:
        display = obj.support_height  # resting objects sit on their support

    grab_height = hand.height if rule is DisplayRule.BEGIN_LIFT else obj.grab_height

    low_ms = obj.low_force_ms + dt * 1000.0 if ratio < cfg.release_ratio else 0.0
    if low_ms >= cfg.release_hold_ms:
        return replace(obj, phase=Phase.FALLING, display_height=display,
                       physical_height=hand.height, grab_height=grab_height,
                       horizontal_position=hand.horizontal_position,
                       fall_speed=0.0, low_force_ms=0.0)

    return replace(obj, phase=next_phase, display_height=display,
                   physical_height=hand.height, grab_height=grab_height,
                   horizontal_position=hand.horizontal_position,
                   low_force_ms=low_ms)
