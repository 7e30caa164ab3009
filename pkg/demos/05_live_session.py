"""A headless live session, tick by tick.

The session service wraps the same engine the replay harness uses: force and
hand messages update the latest inputs, and each 20 ms tick steps the held
cube and emits a snapshot. Here we drive a session straight through the
manager, no socket needed. For the real thing run ``weightsim serve`` and
open the browser client in frontend/.
"""

from weightsim.games import Game
from weightsim.sensor import force_to_adc
from weightsim.service import SessionManager, default_calibration

print(__doc__)

thumb_cal, _ = default_calibration()
manager = SessionManager()
sid = manager.open_session(Game.ARRANGE_CUBES, seed=3, cd_enabled=True)
print(f"opened session {sid}")

snap = manager.tick(sid)
cube = snap["cubes"][0]
print(f"cube 0 rests at x={cube['x']:.2f} in {cube['location']}")

manager.handle_message(sid, {"type": "hand", "y_m": 0.05, "x_m": cube["x"]})
manager.handle_message(sid, {"type": "action", "name": "grab", "cube": 0})
adc = force_to_adc(1.2, thumb_cal)
manager.handle_message(sid, {"type": "force", "thumb_adc": adc, "palm_adc": 0})

hand_y = 0.05
for step in range(12):
    hand_y += 0.02
    manager.handle_message(sid, {"type": "hand", "y_m": hand_y, "x_m": cube["x"]})
    manager.handle_message(sid, {"type": "force", "thumb_adc": adc, "palm_adc": 0})
    snap = manager.tick(sid)
    c = snap["cubes"][0]
    if step % 3 == 0:
        print(f"tick {snap['tick']:3d}: hand {hand_y:.2f} m, cube {c['phase']:12s} "
              f"display {c['display_y']:.3f} m, R={snap.get('ratio', 0):.2f}")

print("\nsqueezing 1.2 N on a 0.98 N cube: R is about 1.22, so the cube")
print("climbs roughly 22% faster than the hand. That overshoot is the")
print("visual cue that the cube is lighter than your grip assumed.")
