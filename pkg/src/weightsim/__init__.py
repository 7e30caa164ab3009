"""Pseudo-haptic weight simulation: dynamic display-ratio lifting, a force
glove pipeline, two cube games, synthetic participants, and a live session
service."""

from .core import (
    DisplayRule,
    DynamicsConfig,
    ForceComparison,
    ForceSample,
    Gesture,
    HandState,
    ObjectState,
    Phase,
    STANDARD_GRAVITY,
    cd_ratio,
    expected_force,
    make_sample,
    resolve_gesture,
    step_dynamics,
    lift_rule_transition,
    work_done,
)
from .sensor import (
    ADC_MAX,
    CalibrationModel,
    Channel,
    FrameChecksumError,
    FrameError,
    FrameFieldError,
    FrameRangeError,
    FrameSyntaxError,
    FsrEmulatorModel,
    SensorFrame,
    adc_to_force,
    adc_to_voltage,
    emulate_frames,
    encode_frame,
    fit_calibration,
    force_to_adc,
    parse_frame,
    smooth_ema,
)
from .games import (
    GAME1_MASSES,
    GAME2_MASSES,
    AttemptReport,
    CubeSpec,
    Game,
    GameAction,
    GameState,
    Screen,
    Tilt,
    apply_action,
    check_arrangement,
    check_balance,
    is_legal,
    new_game,
    scale_tilt,
)
from .agents import (
    CohortReport,
    Condition,
    ParticipantModel,
    PerceivedWeight,
    perceive_weight,
    play_game1,
    play_game2,
    run_cohort,
)

__version__ = "0.1.0"
