"""Synthetic participants with noisy weight perception.

Each agent perceives cube masses through Weber-style multiplicative noise
plus optional additive noise, then plays the games the way an idealized
participant would: sort the estimates for the arrange game, best-balance
the estimates for the scale game, and retry with fresh perceptions after
every incorrect submit. Turning the dynamic display ratio on gives the
agent an extra cue, modeled as a shrink of the multiplicative noise.

Cohort runs are deterministic functions of (noise parameters, base seed):
every agent gets its own seed derived by stable string hashing.
"""

from __future__ import annotations

import random
import statistics
from dataclasses import dataclass, field
from enum import Enum

from .games import (
    CONTAINERS,
    AttemptReport,
    Game,
    GameAction,
    GameState,
    Screen,
    apply_action,
    build_report,
    new_game,
)

DEFAULT_ATTEMPT_CAP = 1000


class Condition(Enum):
    CD_ON = "cd_on"
    CD_OFF = "cd_off"


@dataclass
class ParticipantModel:
    """Noise parameters plus this agent's private random stream."""

    weber_fraction: float = 0.0  # multiplicative noise, relative sd
    absolute_noise: float = 0.0  # additive noise, grams
    cue_gain: float = 0.0  # how much the ratio cue sharpens perception
    seed: int = 0
    _rng: random.Random = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.weber_fraction < 0 or self.absolute_noise < 0 or self.cue_gain < 0:
            raise ValueError("noise parameters must be >= 0")
        self._rng = random.Random(self.seed)

    def effective_weber(self, condition: Condition) -> float:
        if condition is Condition.CD_ON:
            return self.weber_fraction / (1.0 + self.cue_gain)
        return self.weber_fraction


@dataclass(frozen=True)
class PerceivedWeight:
    cube_id: int
    estimate: float  # grams, always > 0
    condition: Condition


def perceive_weight(mass: float, model: ParticipantModel,
                    condition: Condition, cube_id: int = 0) -> PerceivedWeight:
    """One noisy observation of a cube's mass; non-positive draws are redrawn."""
    if mass <= 0:
        raise ValueError(f"mass must be > 0 g, got {mass}")
    k_eff = model.effective_weber(condition)
    while True:
        estimate = (mass * (1.0 + model._rng.gauss(0.0, k_eff))
                    + model._rng.gauss(0.0, model.absolute_noise))
        if estimate > 0:
            return PerceivedWeight(cube_id=cube_id, estimate=estimate,
                                   condition=condition)


def _perceive_all(state: GameState, model: ParticipantModel,
                  condition: Condition) -> list[PerceivedWeight]:
    return [perceive_weight(cube.mass, model, condition, cube_id=cube.id)
            for cube in state.cubes]


def _place(state: GameState, cube: int, target: str) -> GameState:
    state = apply_action(state, GameAction.grab(cube))
    return apply_action(state, GameAction.release(target))


def play_game1(model: ParticipantModel, seed: int, condition: Condition,
               attempt_cap: int = DEFAULT_ATTEMPT_CAP) -> AttemptReport:
    """Arrange-the-cubes agent: sort fresh estimates, submit, reset on failure."""
    state = new_game(Game.ARRANGE_CUBES, seed)
    for _ in range(attempt_cap):
        estimates = _perceive_all(state, model, condition)
        order = sorted(estimates, key=lambda p: (p.estimate, p.cube_id))
        for container, perceived in zip(CONTAINERS, order):
            state = _place(state, perceived.cube_id, container)
        state = apply_action(state, GameAction.SUBMIT)
        if state.screen is Screen.SUCCESS:
            return build_report(state, condition is Condition.CD_ON)
        state = apply_action(state, GameAction.RESET)
    return build_report(state, condition is Condition.CD_ON, capped=True)


def best_balance_assignment(estimates: list[float]) -> tuple[str, ...]:
    """Pan assignment minimizing the perceived left/right mass gap.

    Brute force over all 2^n sides; ties resolve to the lowest bitmask so
    the choice is deterministic.
    """
    n = len(estimates)
    best_mask, best_gap = 0, None
    for mask in range(2 ** n):
        left = sum(e for i, e in enumerate(estimates) if mask >> i & 1)
        right = sum(e for i, e in enumerate(estimates) if not mask >> i & 1)
        gap = abs(left - right)
        if best_gap is None or gap < best_gap:
            best_mask, best_gap = mask, gap
    return tuple("left" if best_mask >> i & 1 else "right" for i in range(n))


def play_game2(model: ParticipantModel, seed: int, condition: Condition,
               attempt_cap: int = DEFAULT_ATTEMPT_CAP) -> AttemptReport:
    """Balance-the-scale agent: best-split fresh estimates, submit, retry."""
    state = new_game(Game.BALANCE_SCALE, seed)
    for _ in range(attempt_cap):
        estimates = _perceive_all(state, model, condition)
        sides = best_balance_assignment([p.estimate for p in estimates])
        for cube_id, side in enumerate(sides):
            state = _place(state, cube_id, side)
        state = apply_action(state, GameAction.SUBMIT)
        if state.screen is Screen.SUCCESS:
            return build_report(state, condition is Condition.CD_ON)
        state = apply_action(state, GameAction.RESET)
    return build_report(state, condition is Condition.CD_ON, capped=True)


def derive_seed(base_seed: int, *parts: object) -> int:
    """Stable per-agent seed from a base seed and a label path."""
    key = "|".join([str(base_seed), *(str(p) for p in parts)])
    return random.Random(key).getrandbits(63)


_PLAYERS = {Game.ARRANGE_CUBES: play_game1, Game.BALANCE_SCALE: play_game2}


@dataclass(frozen=True)
class AgentResult:
    game: Game
    condition: Condition
    agent_index: int
    report: AttemptReport


@dataclass(frozen=True)
class CohortReport:
    n_per_condition: int
    weber_fraction: float
    absolute_noise: float
    cue_gain: float
    base_seed: int
    attempt_cap: int
    results: tuple[AgentResult, ...]

    def attempts(self, game: Game, condition: Condition) -> list[int]:
        return [r.report.attempts for r in self.results
                if r.game is game and r.condition is condition]

    def _summary(self, game: Game, condition: Condition) -> dict:
        attempts = self.attempts(game, condition)
        histogram: dict[str, dict[str, int]] = {}
        capped = 0
        for r in self.results:
            if r.game is not game or r.condition is not condition:
                continue
            capped += r.report.capped
            for loc, row in r.report.placement_histogram().items():
                bucket = histogram.setdefault(loc, {})
                for cube, count in row.items():
                    bucket[cube] = bucket.get(cube, 0) + count
        return {
            "total_attempts": sum(attempts),
            "mean": statistics.fmean(attempts) if attempts else 0.0,
            "sd": statistics.pstdev(attempts) if attempts else 0.0,
            "n_capped": capped,
            "histogram": histogram,
        }

    def to_dict(self) -> dict:
        return {
            "config": {
                "n_per_condition": self.n_per_condition,
                "weber_fraction": self.weber_fraction,
                "absolute_noise": self.absolute_noise,
                "cue_gain": self.cue_gain,
                "base_seed": self.base_seed,
                "attempt_cap": self.attempt_cap,
            },
            "per_condition": {
                game.value: {
                    condition.value: self._summary(game, condition)
                    for condition in Condition
                }
                for game in Game
            },
            "per_agent": [
                {
                    "game": r.game.value,
                    "condition": r.condition.value,
                    "agent_index": r.agent_index,
                    "report": r.report.to_dict(),
                }
                for r in self.results
            ],
        }


def run_cohort(n_per_condition: int, model: ParticipantModel, base_seed: int,
               attempt_cap: int = DEFAULT_ATTEMPT_CAP) -> CohortReport:
    """Play both games under both conditions with n agents each.

    The template model supplies the noise parameters; each agent gets its own
    derived perception seed and game-layout seed, so reruns with the same
    base seed reproduce the report bit for bit.
    """
    if n_per_condition < 1:
        raise ValueError("n_per_condition must be >= 1")
    results = []
    for game in Game:
        play = _PLAYERS[game]
        for condition in Condition:
            for i in range(n_per_condition):
                agent = ParticipantModel(
                    weber_fraction=model.weber_fraction,
                    absolute_noise=model.absolute_noise,
                    cue_gain=model.cue_gain,
                    seed=derive_seed(base_seed, game.value, condition.value, i, "agent"),
                )
                game_seed = derive_seed(base_seed, game.value, condition.value, i, "game")
                report = play(agent, game_seed, condition, attempt_cap=attempt_cap)
                results.append(AgentResult(game=game, condition=condition,
                                           agent_index=i, report=report))
    results.sort(key=lambda r: (r.game.value, r.condition.value, r.agent_index))
    return CohortReport(
        n_per_condition=n_per_condition,
        weber_fraction=model.weber_fraction,
        absolute_noise=model.absolute_noise,
        cue_gain=model.cue_gain,
        base_seed=base_seed,
        attempt_cap=attempt_cap,
        results=tuple(results),
    )
