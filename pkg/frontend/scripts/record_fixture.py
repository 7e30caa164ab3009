"""Record the headless-equivalence fixture for the browser client tests.

Plays a perfect "arrange the cubes" session through the real WebSocket
endpoint using UI-level script operations, and stores the op list, the exact
wire messages they map to, and every server reply. The TypeScript suite
replays the same ops through the real input controller and must produce an
identical message stream; the recorded snapshots then pin the outcome the UI
renders (success screen, one attempt).

Regenerate with:  python3 frontend/scripts/record_fixture.py
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi.testclient import TestClient

from weightsim.games import Game, new_game, zone_x
from weightsim.service import create_app

SEED = 11
GRIP_ADC = 300  # ~3.5 N through the default calibration, plenty to hold
IDLE_ADC = 20

FIXTURE_PATH = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "game1_win.json"


def op_to_message(op: dict) -> dict:
    # Mirror of opToMessage in src/protocol.ts; keep the two in lockstep.
    kind = op["op"]
    if kind == "hand":
        return {"type": "hand", "y_m": op["y"], "x_m": op["x"]}
    if kind == "sliders":
        return {"type": "force", "thumb_adc": op["thumb"], "palm_adc": op["palm"]}
    if kind == "click":
        msg = {"type": "action", "name": op["name"]}
        if "cube" in op:
            msg["cube"] = op["cube"]
        if "target" in op:
            msg["target"] = op["target"]
        return msg
    if kind == "tick":
        return {"type": "tick", "n": op["n"]} if "n" in op else {"type": "tick"}
    raise ValueError(f"unknown op {kind!r}")


def game1_win_ops(seed: int) -> list[dict]:
    """Grab each cube in mass order and drop it in its matching container."""
    state = new_game(Game.ARRANGE_CUBES, seed)
    ops: list[dict] = []
    ranked = sorted(state.cubes, key=lambda c: c.mass)
    for rank, cube in enumerate(ranked, start=1):
        slot_x = zone_x(Game.ARRANGE_CUBES, state.locations[cube.id])
        ops.extend([
            {"op": "hand", "x": slot_x, "y": 0.05},
            {"op": "sliders", "thumb": GRIP_ADC, "palm": IDLE_ADC},
            {"op": "click", "name": "grab", "cube": cube.id},
            {"op": "tick"},
            {"op": "click", "name": "release", "target": f"container_{rank}"},
            {"op": "tick"},
        ])
    ops.extend([
        {"op": "click", "name": "submit"},
        {"op": "tick"},
    ])
    return ops


def record(seed: int = SEED) -> dict:
    ops = game1_win_ops(seed)
    messages = [op_to_message(op) for op in ops]
    server: list[dict] = []
    with TestClient(create_app()) as client:
        with client.websocket_connect("/session") as ws:
            ws.send_json({"type": "open", "game": "arrange", "seed": seed,
                          "cd": True, "auto_tick": False})
            server.append(ws.receive_json())
            assert server[0]["type"] == "opened", server[0]
            for msg in messages:
                ws.send_json(msg)
                if msg["type"] == "tick":
                    server.append(ws.receive_json())
    snapshots = [m for m in server if m.get("type") == "state"]
    return {
        "game": "arrange",
        "seed": seed,
        "cd": True,
        "ops": ops,
        "messages": messages,
        "server": server,
        "final_snapshot": snapshots[-1],
    }


def main() -> None:
    fixture = record()
    final = fixture["final_snapshot"]
    assert final["screen"] == "success" and final["attempts"] == 1, final
    FIXTURE_PATH.parent.mkdir(parents=True, exist_ok=True)
    FIXTURE_PATH.write_text(json.dumps(fixture, indent=2, sort_keys=True) + "\n")
    print(f"wrote {FIXTURE_PATH} ({len(fixture['messages'])} messages, "
          f"{len(fixture['server'])} server replies)")


if __name__ == "__main__":
    main()
