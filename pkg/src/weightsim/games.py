"""The two cube games, as seeded replayable state machines.

Game 1 ("arrange") asks the player to order four cubes lightest to heaviest
into four containers. Game 2 ("balance") asks them to split four cubes across
a two-pan scale so the sides weigh the same. All transitions are pure: an
action applied to a state returns a new state, and an illegal action for the
current screen returns the state unchanged.

Locations are strings: ``slot_1``..``slot_4`` (the table), ``container_1``..
``container_4`` (game 1 targets, container_1 leftmost), ``left``/``right``
(game 2 pans), and ``held``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from enum import Enum

GAME1_MASSES = (100, 700, 1800, 2200)  # grams, blue cubes
GAME2_MASSES = (100, 2100, 1100, 1100)  # grams, green cubes

SLOTS = tuple(f"slot_{i}" for i in range(1, 5))
CONTAINERS = tuple(f"container_{i}" for i in range(1, 5))
PANS = ("left", "right")
HELD = "held"


class Game(Enum):
    ARRANGE_CUBES = "arrange"
    BALANCE_SCALE = "balance"


class Screen(Enum):
    PLAYING = "playing"
    INCORRECT = "incorrect"
    SUCCESS = "success"


class Tilt(Enum):
    LEVEL = "level"
    LEFT_DOWN = "left_down"
    RIGHT_DOWN = "right_down"


class ActionKind(Enum):
    GRAB = "grab"
    RELEASE = "release"
    SUBMIT = "submit"
    RESET = "reset"
    RESTART = "restart"
    GIVE_UP = "giveup"


@dataclass(frozen=True)
class GameAction:
    kind: ActionKind
    cube: int | None = None  # GRAB
    target: str | None = None  # RELEASE

    @classmethod
    def grab(cls, cube: int) -> "GameAction":
        return cls(ActionKind.GRAB, cube=cube)

    @classmethod
    def release(cls, target: str) -> "GameAction":
        return cls(ActionKind.RELEASE, target=target)


GameAction.SUBMIT = GameAction(ActionKind.SUBMIT)
GameAction.RESET = GameAction(ActionKind.RESET)
GameAction.RESTART = GameAction(ActionKind.RESTART)
GameAction.GIVE_UP = GameAction(ActionKind.GIVE_UP)


@dataclass(frozen=True)
class CubeSpec:
    id: int
    mass: int  # grams
    color: str


@dataclass(frozen=True)
class AttemptRecord:
    placements: tuple[str, ...]  # location per cube id at submit time
    correct: bool


@dataclass(frozen=True)
class GameState:
    game: Game
    cubes: tuple[CubeSpec, ...]
    locations: tuple[str, ...]  # indexed by cube id
    screen: Screen = Screen.PLAYING
    attempts: int = 0
    gave_up: bool = False
    seed: int = 0
    shuffle_count: int = 0  # restarts consume successive draws from the seed
    initial_layout: tuple[str, ...] = ()
    attempt_log: tuple[AttemptRecord, ...] = ()
    last_tilt: Tilt | None = None  # game 2, set at submit

    @property
    def held_cube(self) -> int | None:
        for i, loc in enumerate(self.locations):
            if loc == HELD:
                return i
        return None

    def location_of(self, cube: int) -> str:
        return self.locations[cube]

    def cube_at(self, location: str) -> int | None:
        for i, loc in enumerate(self.locations):
            if loc == location:
                return i
        return None


def placeable_targets(game: Game) -> tuple[str, ...]:
    if game is Game.ARRANGE_CUBES:
        return SLOTS + CONTAINERS
    return SLOTS + PANS


def _fisher_yates(items: list[int], rng: random.Random) -> list[int]:
    arr = list(items)
    for i in range(len(arr) - 1, 0, -1):
        j = rng.randrange(i + 1)
        arr[i], arr[j] = arr[j], arr[i]
    return arr


def _layout_for_draw(seed: int, draw: int) -> tuple[str, ...]:
    # Replays the seed's shuffle stream so states stay plain values.
    rng = random.Random(seed)
    for _ in range(draw + 1):
        perm = _fisher_yates([0, 1, 2, 3], rng)
    locations = [""] * 4
    for slot_index, cube_id in enumerate(perm):
        locations[cube_id] = SLOTS[slot_index]
    return tuple(locations)


def new_game(game: Game, seed: int) -> GameState:
    masses = GAME1_MASSES if game is Game.ARRANGE_CUBES else GAME2_MASSES
    color = "blue" if game is Game.ARRANGE_CUBES else "green"
    cubes = tuple(CubeSpec(id=i, mass=m, color=color) for i, m in enumerate(masses))
    layout = _layout_for_draw(seed, 0)
    return GameState(game=game, cubes=cubes, locations=layout, seed=seed,
                     shuffle_count=0, initial_layout=layout)


def check_arrangement(state: GameState) -> bool:
    """True iff every container is filled and masses run ascending left to right."""
    if state.game is not Game.ARRANGE_CUBES:
        raise ValueError("check_arrangement applies to the arrange game")
    ranked = sorted(state.cubes, key=lambda c: c.mass)
    for i, container in enumerate(CONTAINERS):
        cube = state.cube_at(container)
        if cube is None or cube != ranked[i].id:
            return False
    return True


def _pan_masses(state: GameState) -> tuple[int, int]:
    left = sum(c.mass for c in state.cubes if state.locations[c.id] == "left")
    right = sum(c.mass for c in state.cubes if state.locations[c.id] == "right")
    return left, right


def check_balance(state: GameState) -> bool:
    """True iff all four cubes sit on the scale and the pan masses are equal."""
    if state.game is not Game.BALANCE_SCALE:
        raise ValueError("check_balance applies to the balance game")
    if any(loc not in PANS for loc in state.locations):
        return False
    left, right = _pan_masses(state)
    return left == right


def scale_tilt(state: GameState) -> Tilt:
    """Beam attitude shown to the player; stays level until a submit judges it."""
    if state.game is not Game.BALANCE_SCALE:
        raise ValueError("scale_tilt applies to the balance game")
    return state.last_tilt if state.last_tilt is not None else Tilt.LEVEL


def is_legal(state: GameState, action: GameAction) -> bool:
    if state.gave_up:
        return False
    kind = action.kind
    if kind is ActionKind.GIVE_UP:
        return True
    if kind is ActionKind.GRAB:
        return (state.screen is Screen.PLAYING
                and action.cube is not None
                and 0 <= action.cube < len(state.cubes)
                and state.held_cube is None
                and state.locations[action.cube] != HELD)
    if kind is ActionKind.RELEASE:
        if state.screen is not Screen.PLAYING or state.held_cube is None:
            return False
        target = action.target
        if target not in placeable_targets(state.game):
            return False
        if target in PANS:
            return True  # pans take any number of cubes
        return state.cube_at(target) is None
    if kind is ActionKind.SUBMIT:
        return state.screen is Screen.PLAYING
    if kind is ActionKind.RESET:
        return state.screen in (Screen.INCORRECT, Screen.PLAYING)
    if kind is ActionKind.RESTART:
        return state.screen in (Screen.SUCCESS, Screen.PLAYING)
    return False


def apply_action(state: GameState, action: GameAction) -> GameState:
    """Apply one action; illegal actions are rejected by returning the state unchanged."""
    if not is_legal(state, action):
        return state
    kind = action.kind

    if kind is ActionKind.GRAB:
        locations = list(state.locations)
        locations[action.cube] = HELD
        return replace(state, locations=tuple(locations))

    if kind is ActionKind.RELEASE:
        locations = list(state.locations)
        locations[state.held_cube] = action.target
        return replace(state, locations=tuple(locations))

    if kind is ActionKind.SUBMIT:
        if state.game is Game.ARRANGE_CUBES:
            correct = check_arrangement(state)
            tilt = None
        else:
            correct = check_balance(state)
            left, right = _pan_masses(state)
            if left > right:
                tilt = Tilt.LEFT_DOWN
            elif right > left:
                tilt = Tilt.RIGHT_DOWN
            else:
                tilt = Tilt.LEVEL
        record = AttemptRecord(placements=state.locations, correct=correct)
        return replace(state,
                       attempts=state.attempts + 1,
                       screen=Screen.SUCCESS if correct else Screen.INCORRECT,
                       attempt_log=state.attempt_log + (record,),
                       last_tilt=tilt)

    if kind is ActionKind.RESET:
        return replace(state, locations=state.initial_layout,
                       screen=Screen.PLAYING, last_tilt=None)

    if kind is ActionKind.RESTART:
        draw = state.shuffle_count + 1
        layout = _layout_for_draw(state.seed, draw)
        return replace(state, locations=layout, initial_layout=layout,
                       shuffle_count=draw, screen=Screen.PLAYING,
                       last_tilt=None)

    # GIVE_UP: freeze everything as it stands.
    return replace(state, gave_up=True)


@dataclass(frozen=True)
class AttemptReport:
    """Per-session record: the unit the cohort analysis aggregates."""

    game: Game
    seed: int
    cd_enabled: bool
    attempts: int
    gave_up: bool
    capped: bool
    cube_masses: tuple[int, ...]
    per_attempt: tuple[AttemptRecord, ...]

    @property
    def solved(self) -> bool:
        return any(rec.correct for rec in self.per_attempt)

    def placement_histogram(self) -> dict[str, dict[str, int]]:
        """target location x cube id counts over every submitted attempt."""
        targets = CONTAINERS if self.game is Game.ARRANGE_CUBES else PANS
        hist: dict[str, dict[str, int]] = {t: {} for t in targets}
        for rec in self.per_attempt:
            for cube_id, loc in enumerate(rec.placements):
                if loc in hist:
                    key = str(cube_id)
                    hist[loc][key] = hist[loc].get(key, 0) + 1
        return hist

    def to_dict(self) -> dict:
        return {
            "game": self.game.value,
            "seed": self.seed,
            "cd_enabled": self.cd_enabled,
            "attempts": self.attempts,
            "gave_up": self.gave_up,
            "capped": self.capped,
            "solved": self.solved,
            "cube_masses": {str(i): m for i, m in enumerate(self.cube_masses)},
            "per_attempt": [
                {
                    "placements": {str(i): loc for i, loc in enumerate(rec.placements)},
                    "correct": rec.correct,
                }
                for rec in self.per_attempt
            ],
            "placement_histogram": self.placement_histogram(),
        }


def build_report(state: GameState, cd_enabled: bool, capped: bool = False) -> AttemptReport:
    return AttemptReport(
        game=state.game,
        seed=state.seed,
        cd_enabled=cd_enabled,
        attempts=state.attempts,
        gave_up=state.gave_up,
        capped=capped,
        cube_masses=tuple(c.mass for c in state.cubes),
        per_attempt=state.attempt_log,
    )


# Side-view scene geometry shared by trace replay, the session service, and
# the browser client. Heights are in meters above the table top; every zone
# supports its cube at height zero.
ZONE_X = {
    Game.ARRANGE_CUBES: {
        "slot_1": 0.00, "slot_2": 0.30, "slot_3": 0.60, "slot_4": 0.90,
        "container_1": 1.50, "container_2": 1.80,
        "container_3": 2.10, "container_4": 2.40,
    },
    Game.BALANCE_SCALE: {
        "slot_1": 0.00, "slot_2": 0.30, "slot_3": 0.60, "slot_4": 0.90,
        "left": 1.60, "right": 2.20,
    },
}


def zone_x(game: Game, location: str) -> float:
    return ZONE_X[game][location]


def nearest_release_target(state: GameState, hand_x: float) -> str:
    """Closest zone by horizontal distance that can legally take the held cube."""
    candidates = sorted(
        placeable_targets(state.game),
        key=lambda loc: (abs(zone_x(state.game, loc) - hand_x), loc),
    )
    for target in candidates:
        if is_legal(state, GameAction.release(target)):
            return target
    raise RuntimeError("no legal release target")  # unreachable: slots >= cubes
