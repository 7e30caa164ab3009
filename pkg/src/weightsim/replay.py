"""Deterministic replay: a trace file driven through the full pipeline.

Each sensor record is calibrated to Newtons, resolved to a gesture, and fed
to the dynamics step for whichever cube is in play. Grabs are inferred (hand
near a free cube while squeezing); releases happen when the dynamics drop the
cube, and the landing spot snaps to the nearest zone that can legally take
it, judged by the hand's horizontal position at the moment of release.
Submit, reset, restart, and give-up arrive as explicit action records.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    DynamicsConfig,
    HandState,
    ObjectState,
    Phase,
    hand_distance,
    make_sample,
    step_dynamics,
)
from .games import (
    AttemptReport,
    Game,
    GameAction,
    GameState,
    apply_action,
    build_report,
    is_legal,
    nearest_release_target,
    new_game,
    zone_x,
)
from .sensor import CalibrationModel, adc_to_force
from .trace import TraceAction, TraceRecord, TraceSample

NOMINAL_DT = 0.02  # s, used when a trace does not advance time

_ACTIONS = {
    "submit": GameAction.SUBMIT,
    "reset": GameAction.RESET,
    "restart": GameAction.RESTART,
    "giveup": GameAction.GIVE_UP,
}


def objects_for_layout(state: GameState) -> list[ObjectState]:
    objects = []
    for cube in state.cubes:
        location = state.locations[cube.id]
        x = zone_x(state.game, location) if location != "held" else 0.0
        objects.append(ObjectState.resting(cube.mass, horizontal_position=x))
    return objects


@dataclass
class ReplaySession:
    """Mutable pipeline state for one trace run."""

    state: GameState
    objects: list[ObjectState]
    cfg: DynamicsConfig
    thumb_cal: CalibrationModel
    palm_cal: CalibrationModel
    pending_target: str | None = None
    last_t_ms: int | None = None

    @classmethod
    def start(cls, game: Game, seed: int, cfg: DynamicsConfig,
              thumb_cal: CalibrationModel, palm_cal: CalibrationModel) -> "ReplaySession":
        state = new_game(game, seed)
        return cls(state=state, objects=objects_for_layout(state), cfg=cfg,
                   thumb_cal=thumb_cal, palm_cal=palm_cal)

    def _resync_objects(self) -> None:
        self.objects = objects_for_layout(self.state)
        self.pending_target = None

    def apply_trace_action(self, record: TraceAction) -> None:
        before = self.state
        self.state = apply_action(self.state, _ACTIONS[record.name])
        if record.name in ("reset", "restart") and self.state is not before:
            self._resync_objects()

    def _falling_cube(self) -> int | None:
        for i, obj in enumerate(self.objects):
            if obj.phase is Phase.FALLING:
                return i
        return None

    def process_sample(self, record: TraceSample) -> None:
        if self.last_t_ms is None or record.t_ms <= self.last_t_ms:
            dt = NOMINAL_DT
        else:
            dt = (record.t_ms - self.last_t_ms) / 1000.0
        self.last_t_ms = record.t_ms

        thumb_n = adc_to_force(record.thumb_adc, self.thumb_cal)
        palm_n = adc_to_force(record.palm_adc, self.palm_cal)
        sample = make_sample(record.t_ms, thumb_n, palm_n, self.cfg)
        hand = HandState(time_ms=record.t_ms, height=record.hand_y_m,
                         horizontal_position=record.hand_x_m)
        held = self.state.held_cube
        if held is not None:
            obj = step_dynamics(self.objects[held], hand, sample, dt, self.cfg)
            if obj.phase is Phase.FALLING and self.pending_target is None:
                # Placement intent is fixed the moment the grip fails.
                self.pending_target = self._release_target(hand.horizontal_position)
            if obj.phase is Phase.FREE:
                self._land(held, obj)
            else:
                self.objects[held] = obj
            return

        falling = self._falling_cube()
        if falling is not None:
            obj = step_dynamics(self.objects[falling], hand, sample, dt, self.cfg)
            self.objects[falling] = obj
            return

        self._try_grab(hand, sample, dt)

    def _release_target(self, hand_x: float) -> str | None:
        try:
            return nearest_release_target(self.state, hand_x)
        except RuntimeError:
            return None

    def _land(self, cube: int, obj: ObjectState) -> None:
        target = self.pending_target
        self.pending_target = None
        if target is not None:
            landed = apply_action(self.state, GameAction.release(target))
            if landed is not self.state:
                self.state = landed
                self.objects[cube] = ObjectState.resting(
                    obj.mass, horizontal_position=zone_x(self.state.game, target))
                return
        # No legal spot (screen changed mid-fall): leave the cube where it fell.
        self.objects[cube] = obj

    def _try_grab(self, hand: HandState, sample, dt: float) -> None:
        if sample.effective_force <= 0:
            return
        candidates = [
            (hand_distance(self.objects[i], hand), i)
            for i in range(len(self.objects))
            if is_legal(self.state, GameAction.grab(i))
            and self.objects[i].phase is Phase.FREE
        ]
        for _, cube in sorted(candidates):
            obj = step_dynamics(self.objects[cube], hand, sample, dt, self.cfg)
            if obj.phase is Phase.HELD_RESTING:
                self.state = apply_action(self.state, GameAction.grab(cube))
                self.objects[cube] = obj
                return

    def settle(self, max_steps: int = 100_000) -> None:
        """Let any in-flight cube finish falling after the trace ends."""
        held = self.state.held_cube
        falling = self._falling_cube()
        cube = held if held is not None else falling
        if cube is None:
            return
        t = self.last_t_ms or 0
        zero = make_sample(t, 0.0, 0.0, self.cfg)
        hand = HandState(time_ms=t, height=self.objects[cube].physical_height,
                         horizontal_position=self.objects[cube].horizontal_position)
        if held is not None and self.pending_target is None:
            self.pending_target = self._release_target(hand.horizontal_position)
        for _ in range(max_steps):
            obj = step_dynamics(self.objects[cube], hand, zero, NOMINAL_DT, self.cfg)
            if obj.phase is Phase.FREE:
                if held is not None:
                    self._land(cube, obj)
                else:
                    self.objects[cube] = obj
                return
            self.objects[cube] = obj


def replay_trace(records: list[TraceRecord], game: Game, seed: int,
                 cfg: DynamicsConfig, thumb_cal: CalibrationModel,
                 palm_cal: CalibrationModel) -> AttemptReport:
    session = ReplaySession.start(game, seed, cfg, thumb_cal, palm_cal)
    for record in records:
        if isinstance(record, TraceAction):
            session.apply_trace_action(record)
        else:
            session.process_sample(record)
    session.settle()
    return build_report(session.state, cfg.cd_enabled)
