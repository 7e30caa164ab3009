"""Synthetic cohorts: does the ratio cue help discrimination?

Agents perceive each cube's mass with Weber-style multiplicative noise and
sort (game 1) or best-balance (game 2) their estimates. With the dynamic
ratio on, the probe-lift cue shrinks the noise, so game 1 should need fewer
attempts. That direction matches the reported human split; the magnitudes
here are properties of the synthetic model only.
"""

import statistics

from weightsim.agents import Condition, ParticipantModel, run_cohort
from weightsim.games import Game

print(__doc__)

N = 300
print(f"{N} agents per condition per game, base seed 42\n")
print(f"{'weber k':>8} | {'g1 cd_on':>9} {'g1 cd_off':>9} | "
      f"{'g2 cd_on':>9} {'g2 cd_off':>9}   (mean attempts)")
print("-" * 62)
for k in (0.05, 0.10, 0.15, 0.25):
    model = ParticipantModel(weber_fraction=k, cue_gain=1.0)
    report = run_cohort(N, model, base_seed=42)
    row = [f"{k:8.2f}"]
    cells = []
    for game in Game:
        for condition in (Condition.CD_ON, Condition.CD_OFF):
            cells.append(f"{statistics.fmean(report.attempts(game, condition)):9.2f}")
    print(f"{row[0]} | {cells[0]} {cells[1]} | {cells[2]} {cells[3]}")

print("\nGame 1 shows the cue advantage growing with noise. Whether game 2")
print("should show the opposite (as the human data hinted) is an open")
print("question the model deliberately does not bake in.")
