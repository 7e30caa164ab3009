"""Playing both cube games straight through the state machines.

Game 1 wants the cubes ordered lightest to heaviest across four containers;
game 2 wants the four cubes split so the scale balances. Layouts are seeded
shuffles, so every session here replays identically.
"""

import json

from weightsim.games import (
    CONTAINERS,
    Game,
    GameAction,
    apply_action,
    build_report,
    new_game,
    scale_tilt,
)

print(__doc__)


def place(state, cube, target):
    state = apply_action(state, GameAction.grab(cube))
    return apply_action(state, GameAction.release(target))


# --- Game 1: get it wrong once, reset, then solve it ---
state = new_game(Game.ARRANGE_CUBES, seed=2024)
print("game 1 layout:", dict(enumerate(state.locations)))
ranked = sorted(state.cubes, key=lambda c: c.mass)

for i, cube in enumerate(reversed(ranked)):  # heaviest first: wrong on purpose
    state = place(state, cube.id, CONTAINERS[i])
state = apply_action(state, GameAction.SUBMIT)
print(f"submit #1 -> {state.screen.value}")
state = apply_action(state, GameAction.RESET)

for i, cube in enumerate(ranked):
    state = place(state, cube.id, CONTAINERS[i])
state = apply_action(state, GameAction.SUBMIT)
print(f"submit #2 -> {state.screen.value} after {state.attempts} attempts")

report = build_report(state, cd_enabled=True)
print("report:", json.dumps(report.to_dict()["placement_histogram"], indent=2))

# --- Game 2: the 100 g + 2100 g pair balances the two 1100 g cubes ---
state = new_game(Game.BALANCE_SCALE, seed=5)
by_mass = sorted(range(4), key=lambda i: state.cubes[i].mass)
light, mid_a, mid_b, heavy = by_mass
state = place(state, light, "left")
state = place(state, heavy, "left")
state = place(state, mid_a, "right")
state = place(state, mid_b, "right")
print(f"\ngame 2 beam before submit: {scale_tilt(state).value}")
state = apply_action(state, GameAction.SUBMIT)
print(f"after submit: screen={state.screen.value}, beam={scale_tilt(state).value}")
