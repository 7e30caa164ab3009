"""Real-time play sessions over a JSON WebSocket at ``/session``.

One connection hosts one session: the client opens with a game, seed, and
condition flag, then streams force / hand / action messages while the server
ticks the dynamics at a fixed rate and pushes state snapshots back. Sessions
never share mutable state. Snapshots are a pure function of the message
sequence and its alignment to ticks, so a scripted client that drives ticks
itself (``auto_tick: false``) gets a bit-identical stream on every run.

Client messages:
    {"type": "open", "game": "arrange"|"balance", "seed": int, "cd": bool,
     "auto_tick"?: bool, "tick_ms"?: int}
    {"type": "force", "thumb_adc": int, "palm_adc": int}
    {"type": "hand", "y_m": number, "x_m": number}
    {"type": "action", "name": "grab"|"release"|"submit"|"reset"|"restart"|"giveup",
     "cube"?: int, "target"?: str}
    {"type": "tick", "n"?: int}      # manual mode only

Server messages: {"type": "opened", ...}, {"type": "state", ...},
{"type": "error", "reason": str}.
"""

from __future__ import annotations

import asyncio
from dataclasses import dataclass, field, replace

from fastapi import FastAPI, WebSocket, WebSocketDisconnect

from .core import (
    DynamicsConfig,
    Gesture,
    HandState,
    ObjectState,
    Phase,
    force_release,
    hand_distance,
    lift_ratio,
    make_sample,
    step_dynamics,
)
from .games import (
    Game,
    GameAction,
    apply_action,
    is_legal,
    nearest_release_target,
    scale_tilt,
    zone_x,
    ZONE_X,
)
from .replay import objects_for_layout
from .sensor import ADC_MAX, CalibrationModel, Channel, adc_to_force, fit_calibration

DEFAULT_TICK_MS = 20
DEFAULT_STALENESS_MS = 200.0
MAX_SESSIONS = 64

_ACTION_NAMES = {
    "submit": GameAction.SUBMIT,
    "reset": GameAction.RESET,
    "restart": GameAction.RESTART,
    "giveup": GameAction.GIVE_UP,
}


def default_calibration() -> tuple[CalibrationModel, CalibrationModel]:
    """Plausible glove curves used when no fitted calibration is supplied.

    Full squeeze lands near 22 N, comfortably above the heaviest cube's
    21.6 N lift threshold.
    """
    points = [(adc, 2.0 * (adc * 5.0 / ADC_MAX) ** 1.5)
              for adc in (128, 256, 512, 768, 1023)]
    thumb = fit_calibration(points, deadband_adc=20, channel=Channel.THUMB)
    palm = fit_calibration(points, deadband_adc=20, channel=Channel.PALM)
    return thumb, palm


class SessionError(Exception):
    """Message rejected; carried back to the client as an error reply."""


@dataclass
class Session:
    """One live game: engine state plus the latest inputs."""

    game: Game
    seed: int
    cd_enabled: bool
    cfg: DynamicsConfig
    thumb_cal: CalibrationModel
    palm_cal: CalibrationModel
    tick_ms: int = DEFAULT_TICK_MS
    staleness_ms: float = DEFAULT_STALENESS_MS

    state: object = field(init=False)
    objects: list[ObjectState] = field(init=False)
    tick_count: int = 0
    hand: HandState = field(init=False)
    thumb_force: float = 0.0
    palm_force: float = 0.0
    last_force_ms: float | None = None
    grab_intent: int | None = None
    pending_target: str | None = None
    last_ratio: float | None = None
    last_gesture: Gesture = Gesture.NONE

    def __post_init__(self) -> None:
        from .games import new_game
        self.cfg = replace(self.cfg, cd_enabled=self.cd_enabled)
        self.state = new_game(self.game, self.seed)
        self.objects = objects_for_layout(self.state)
        self.hand = HandState(time_ms=0.0, height=0.30, horizontal_position=0.0)

    @property
    def now_ms(self) -> float:
        return self.tick_count * self.tick_ms

    # -- message handling ------------------------------------------------

    def handle_message(self, msg: dict) -> dict | None:
        """Apply one client message; returns an error reply or None."""
        try:
            if not isinstance(msg, dict):
                raise SessionError("message must be a JSON object")
            kind = msg.get("type")
            if kind == "force":
                self._handle_force(msg)
            elif kind == "hand":
                self._handle_hand(msg)
            elif kind == "action":
                self._handle_action(msg)
            else:
                raise SessionError(f"unknown message type {kind!r}")
        except SessionError as exc:
            return {"type": "error", "reason": str(exc)}
        return None

    def _handle_force(self, msg: dict) -> None:
        thumb, palm = msg.get("thumb_adc"), msg.get("palm_adc")
        for name, v in (("thumb_adc", thumb), ("palm_adc", palm)):
            if isinstance(v, bool) or not isinstance(v, int):
                raise SessionError(f"{name} must be an integer")
            if not (0 <= v <= ADC_MAX):
                raise SessionError(f"{name}={v} outside 0..{ADC_MAX}")
        self.thumb_force = adc_to_force(thumb, self.thumb_cal)
        self.palm_force = adc_to_force(palm, self.palm_cal)
        self.last_force_ms = self.now_ms

    def _handle_hand(self, msg: dict) -> None:
        y, x = msg.get("y_m"), msg.get("x_m")
        for name, v in (("y_m", y), ("x_m", x)):
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise SessionError(f"{name} must be a number")
        self.hand = HandState(time_ms=self.now_ms, height=float(y),
                              horizontal_position=float(x),
                              grab_target=self.grab_intent)

    def _handle_action(self, msg: dict) -> None:
        name = msg.get("name")
        if name == "grab":
            cube = msg.get("cube")
            if not isinstance(cube, int) or not (0 <= cube < len(self.objects)):
                raise SessionError("grab needs a valid cube id")
            if not is_legal(self.state, GameAction.grab(cube)):
                raise SessionError("grab not legal now")
            if hand_distance(self.objects[cube], self.hand) > self.cfg.grab_radius:
                raise SessionError("hand too far from cube")
            self.grab_intent = cube
            return
        if name == "release":
            self.grab_intent = None
            held = self.state.held_cube
            if held is None:
                raise SessionError("no cube held")
            target = msg.get("target")
            if target is not None and not isinstance(target, str):
                raise SessionError("release target must be a string")
            self.pending_target = target or self._nearest_target()
            self.objects[held] = force_release(self.objects[held])
            return
        action = _ACTION_NAMES.get(name)
        if action is None:
            raise SessionError(f"unknown action {name!r}")
        new_state = apply_action(self.state, action)
        if new_state is self.state:
            raise SessionError(f"action {name!r} not legal now")
        self.state = new_state
        if name in ("reset", "restart"):
            self.objects = objects_for_layout(self.state)
            self.grab_intent = None
            self.pending_target = None

    def _nearest_target(self) -> str | None:
        try:
            return nearest_release_target(self.state, self.hand.horizontal_position)
        except RuntimeError:
            return None

    # -- dynamics --------------------------------------------------------

    def _current_sample(self):
        stale = (self.last_force_ms is None
                 or self.now_ms - self.last_force_ms > self.staleness_ms)
        if stale:
            return make_sample(self.now_ms, 0.0, 0.0, self.cfg)
        return make_sample(self.now_ms, self.thumb_force, self.palm_force, self.cfg)

    def tick(self) -> dict:
        """Advance the session by one fixed step and return the snapshot."""
        self.tick_count += 1
        dt = self.tick_ms / 1000.0
        sample = self._current_sample()
        self.last_gesture = sample.gesture
        self.last_ratio = None

        if not self.state.gave_up:
            held = self.state.held_cube
            if held is not None:
                obj = step_dynamics(self.objects[held], self.hand, sample,
                                    dt, self.cfg)
                if obj.phase is Phase.FALLING and self.pending_target is None:
                    self.pending_target = self._nearest_target()
                if obj.phase is Phase.FREE:
                    self._land(held, obj)
                else:
                    self.objects[held] = obj
                if obj.phase in (Phase.HELD_RESTING, Phase.LIFTING):
                    self.last_ratio = self._visible_ratio(obj, sample)
            elif self.grab_intent is not None:
                cube = self.grab_intent
                obj = step_dynamics(self.objects[cube], self.hand, sample,
                                    dt, self.cfg)
                if obj.phase is Phase.HELD_RESTING:
                    grabbed = apply_action(self.state, GameAction.grab(cube))
                    if grabbed is not self.state:
                        self.state = grabbed
                        self.objects[cube] = obj
                        self.last_ratio = self._visible_ratio(obj, sample)
                    self.grab_intent = None

        return self.snapshot()

    def _visible_ratio(self, obj: ObjectState, sample) -> float | None:
        if self.cd_enabled:
            return lift_ratio(sample.effective_force, obj.expected_force, self.cfg)
        return 1.0 if obj.phase is Phase.LIFTING else None

    def _land(self, cube: int, obj: ObjectState) -> None:
        target = self.pending_target
        self.pending_target = None
        if target is not None and is_legal(self.state, GameAction.release(target)):
            self.state = apply_action(self.state, GameAction.release(target))
            self.objects[cube] = ObjectState.resting(
                obj.mass, horizontal_position=zone_x(self.state.game, target))
        else:
            self.objects[cube] = obj

    def snapshot(self) -> dict:
        snap = {
            "type": "state",
            "tick": self.tick_count,
            "screen": self.state.screen.value,
            "attempts": self.state.attempts,
            "gave_up": self.state.gave_up,
            "gesture": self.last_gesture.value,
            "cubes": [
                {
                    "id": i,
                    "x": obj.horizontal_position,
                    "display_y": obj.display_height,
                    "phase": obj.phase.value,
                    "location": self.state.locations[i],
                }
                for i, obj in enumerate(self.objects)
            ],
        }
        if self.last_ratio is not None:
            snap["ratio"] = self.last_ratio
        if self.game is Game.BALANCE_SCALE:
            snap["tilt"] = scale_tilt(self.state).value
        return snap


@dataclass
class ServiceConfig:
    dynamics: DynamicsConfig = field(default_factory=DynamicsConfig)
    thumb_cal: CalibrationModel | None = None
    palm_cal: CalibrationModel | None = None
    staleness_ms: float = DEFAULT_STALENESS_MS

    def calibrations(self) -> tuple[CalibrationModel, CalibrationModel]:
        if self.thumb_cal is not None and self.palm_cal is not None:
            return self.thumb_cal, self.palm_cal
        thumb, palm = default_calibration()
        return self.thumb_cal or thumb, self.palm_cal or palm


class SessionManager:
    """Owns all live sessions; one logical task mutates each."""

    def __init__(self, config: ServiceConfig | None = None,
                 max_sessions: int = MAX_SESSIONS):
        self.config = config or ServiceConfig()
        self.max_sessions = max_sessions
        self._sessions: dict[str, Session] = {}
        self._next_id = 0

    def open_session(self, game: Game, seed: int, cd_enabled: bool,
                     tick_ms: int = DEFAULT_TICK_MS) -> str:
        if len(self._sessions) >= self.max_sessions:
            raise SessionError(f"session limit {self.max_sessions} reached")
        thumb, palm = self.config.calibrations()
        session = Session(game=game, seed=seed, cd_enabled=cd_enabled,
                          cfg=self.config.dynamics, thumb_cal=thumb,
                          palm_cal=palm, tick_ms=tick_ms,
                          staleness_ms=self.config.staleness_ms)
        sid = f"s{self._next_id}"
        self._next_id += 1
        self._sessions[sid] = session
        return sid

    def get(self, session_id: str) -> Session:
        try:
            return self._sessions[session_id]
        except KeyError:
            raise SessionError(f"unknown session {session_id!r}") from None

    def handle_message(self, session_id: str, msg: dict) -> dict | None:
        return self.get(session_id).handle_message(msg)

    def tick(self, session_id: str) -> dict:
        return self.get(session_id).tick()

    def close(self, session_id: str) -> None:
        self._sessions.pop(session_id, None)


def _parse_open(msg: dict) -> tuple[Game, int, bool, bool, int]:
    if msg.get("type") != "open":
        raise SessionError("first message must be an open request")
    try:
        game = Game(msg.get("game"))
    except ValueError:
        raise SessionError(f"unknown game {msg.get('game')!r}") from None
    seed = msg.get("seed")
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise SessionError("seed must be an integer")
    cd = msg.get("cd")
    if not isinstance(cd, bool):
        raise SessionError("cd must be a boolean")
    auto = msg.get("auto_tick", True)
    if not isinstance(auto, bool):
        raise SessionError("auto_tick must be a boolean")
    tick_ms = msg.get("tick_ms", DEFAULT_TICK_MS)
    if isinstance(tick_ms, bool) or not isinstance(tick_ms, int) or tick_ms <= 0:
        raise SessionError("tick_ms must be a positive integer")
    return game, seed, cd, auto, tick_ms


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    app = FastAPI(title="weightsim session service")
    manager = SessionManager(config)
    app.state.manager = manager

    @app.websocket("/session")
    async def session_endpoint(ws: WebSocket) -> None:
        await ws.accept()
        sid: str | None = None
        ticker: asyncio.Task | None = None
        try:
            # Reject noise until a valid open arrives; the connection survives.
            while sid is None:
                msg = await ws.receive_json()
                try:
                    game, seed, cd, auto, tick_ms = _parse_open(msg)
                    sid = manager.open_session(game, seed, cd, tick_ms=tick_ms)
                except SessionError as exc:
                    await ws.send_json({"type": "error", "reason": str(exc)})
                    continue
            session = manager.get(sid)
            await ws.send_json({
                "type": "opened",
                "session": sid,
                "game": session.game.value,
                "seed": session.seed,
                "cd": session.cd_enabled,
                "tick_ms": session.tick_ms,
                "auto_tick": auto,
                "zones": ZONE_X[session.game],
            })

            if auto:
                ticker = asyncio.create_task(_auto_tick(ws, session))

            while True:
                msg = await ws.receive_json()
                if isinstance(msg, dict) and msg.get("type") == "tick":
                    if auto:
                        await ws.send_json({"type": "error",
                                            "reason": "session ticks automatically"})
                        continue
                    n = msg.get("n", 1)
                    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
                        await ws.send_json({"type": "error",
                                            "reason": "n must be a positive integer"})
                        continue
                    for _ in range(n):
                        await ws.send_json(session.tick())
                    continue
                reply = session.handle_message(msg if isinstance(msg, dict) else None)
                if reply is not None:
                    await ws.send_json(reply)
        except WebSocketDisconnect:
            pass
        finally:
            if ticker is not None:
                ticker.cancel()
            if sid is not None:
                manager.close(sid)

    return app


async def _auto_tick(ws: WebSocket, session: Session) -> None:
    dt = session.tick_ms / 1000.0
    try:
        while True:
            await ws.send_json(session.tick())
            await asyncio.sleep(dt)
    except Exception:
        return
