"""Lifting a virtual cube under different squeeze forces.

The display height of a held cube moves by R times the hand's motion, where
R is the ratio of exerted force to the cube's weight. A resting cube only
starts to lift once the squeeze meets its weight; from then on, squeezing
harder makes it race ahead of the hand, easing off makes it sag behind, and
easing off far enough for long enough drops it.
"""

from weightsim.core import (
    DynamicsConfig,
    HandState,
    ObjectState,
    expected_force,
    make_sample,
    step_dynamics,
)

CFG = DynamicsConfig()
MASS = 700.0  # grams


def spark(values, lo, hi, width=60):
    chars = " .:-=+*#%@"
    step = max(1, len(values) // width)
    out = []
    for v in values[::step]:
        idx = int((v - lo) / (hi - lo + 1e-12) * (len(chars) - 1))
        out.append(chars[max(0, min(idx, len(chars) - 1))])
    return "".join(out)


def run(squeeze_schedule, ticks=120):
    """squeeze_schedule: tick -> multiple of the cube's weight."""
    weight = expected_force(MASS)
    obj = ObjectState.resting(MASS)
    hand_y = 0.05
    display, physical = [], []
    for i in range(ticks):
        if i > 10:
            hand_y += 0.004  # steady 0.2 m/s rise
        force = squeeze_schedule(i) * weight
        hand = HandState(time_ms=i * 20.0, height=hand_y)
        obj = step_dynamics(obj, hand, make_sample(i * 20.0, force, 0.0, CFG),
                            0.02, CFG)
        display.append(obj.display_height)
        physical.append(max(hand_y - 0.05, 0.0))
    return obj, display, physical


SCENARIOS = [
    ("steady 1.0x weight (display tracks the hand)", lambda i: 1.0),
    ("steady 1.6x weight (display races ahead)", lambda i: 1.6),
    ("1.05x then easing to 0.6x (display sags behind)",
     lambda i: 1.05 if i < 60 else 0.6),
    ("1.05x then only 0.15x (grip fails, cube drops)",
     lambda i: 1.05 if i < 60 else 0.15),
]

print(__doc__)
print(f"cube: {MASS:.0f} g, weight {expected_force(MASS):.3f} N\n")
for label, schedule in SCENARIOS:
    obj, display, physical = run(schedule)
    print(f"{label}")
    print(f"  final phase {obj.phase.value}, display {display[-1]:.3f} m, "
          f"hand rise {physical[-1]:.3f} m")
    print(f"  hand    |{spark(physical, 0, 0.7)}|")
    print(f"  display |{spark(display, 0, 0.7)}|")
    print()
print("The last grip stays under a quarter of the weight for 150 ms, so the")
print("cube releases mid-air and falls back to the table under gravity.")
