import itertools
import json
import random
import statistics

import pytest

from weightsim.agents import (
    Condition,
    ParticipantModel,
    best_balance_assignment,
    derive_seed,
    perceive_weight,
    play_game1,
    play_game2,
    run_cohort,
)
from weightsim.games import CONTAINERS, GAME1_MASSES, GAME2_MASSES, Game


def exact_model(seed=0):
    return ParticipantModel(weber_fraction=0.0, absolute_noise=0.0,
                            cue_gain=0.0, seed=seed)


class TestPerceiveWeight:
    def test_zero_noise_is_exact(self):
        model = exact_model()
        for condition in Condition:
            assert perceive_weight(700, model, condition).estimate == 700.0

    def test_rejects_nonpositive_mass(self):
        with pytest.raises(ValueError):
            perceive_weight(0, exact_model(), Condition.CD_ON)

    def test_estimates_always_positive(self):
        model = ParticipantModel(weber_fraction=10.0, seed=5)
        for _ in range(2000):
            p = perceive_weight(100, model, Condition.CD_OFF)
            assert p.estimate > 0

    def test_cue_shrinks_spread_monte_carlo(self):
        # Sample sd at 1000 g should track mass * k_eff: 75 g with the cue
        # (k_eff = 0.15/2), 150 g without, both within 5 percent.
        n = 10_000
        on = ParticipantModel(weber_fraction=0.15, cue_gain=1.0, seed=11)
        draws = [perceive_weight(1000, on, Condition.CD_ON).estimate
                 for _ in range(n)]
        assert statistics.stdev(draws) == pytest.approx(75.0, rel=0.05)

        off = ParticipantModel(weber_fraction=0.15, cue_gain=1.0, seed=11)
        draws = [perceive_weight(1000, off, Condition.CD_OFF).estimate
                 for _ in range(n)]
        assert statistics.stdev(draws) == pytest.approx(150.0, rel=0.05)

    def test_additive_noise_spread(self):
        model = ParticipantModel(absolute_noise=50.0, seed=3)
        draws = [perceive_weight(1000, model, Condition.CD_OFF).estimate
                 for _ in range(10_000)]
        assert statistics.stdev(draws) == pytest.approx(50.0, rel=0.05)

    def test_rejects_negative_parameters(self):
        with pytest.raises(ValueError):
            ParticipantModel(weber_fraction=-0.1)


class TestPlayGame1:
    def test_zero_noise_single_attempt(self):
        report = play_game1(exact_model(), seed=42, condition=Condition.CD_OFF)
        assert report.attempts == 1
        assert report.solved and not report.capped
        placements = report.per_attempt[0].placements
        order = [GAME1_MASSES[i] for i in sorted(
            range(4), key=lambda c: CONTAINERS.index(placements[c]))]
        assert order == sorted(GAME1_MASSES)

    def test_attempt_cap_flags_report(self):
        model = ParticipantModel(weber_fraction=10.0, seed=1)
        report = play_game1(model, seed=1, condition=Condition.CD_OFF,
                            attempt_cap=1)
        if not report.solved:
            assert report.capped
            assert report.attempts == 1

    def test_reports_are_deterministic(self):
        def run():
            model = ParticipantModel(weber_fraction=0.3, cue_gain=1.0, seed=77)
            return play_game1(model, seed=5, condition=Condition.CD_ON).to_dict()

        assert json.dumps(run(), sort_keys=True) == json.dumps(run(), sort_keys=True)


def oracle_game1_rate(k: float, n_attempts: int, seed: int) -> float:
    """Independent estimate of the per-attempt success probability.

    Draws fresh perceptions with the same noise law and scores an attempt by
    checking the rank order against every permutation explicitly.
    """
    rng = random.Random(seed)
    wins = 0
    for _ in range(n_attempts):
        est = []
        for m in GAME1_MASSES:
            while True:
                e = m * (1.0 + rng.gauss(0.0, k)) + rng.gauss(0.0, 0.0)
                if e > 0:
                    break
            est.append(e)
        best = None
        for perm in itertools.permutations(range(4)):
            if all(est[perm[i]] <= est[perm[i + 1]] for i in range(3)):
                best = perm
                break
        wins += [GAME1_MASSES[i] for i in best] == sorted(GAME1_MASSES)
    return wins / n_attempts


def oracle_game2_rate(k: float, n_attempts: int, seed: int) -> float:
    """Independent success probability for the balance agent's decision rule."""
    rng = random.Random(seed)
    wins = 0
    for _ in range(n_attempts):
        est = []
        for m in GAME2_MASSES:
            while True:
                e = m * (1.0 + rng.gauss(0.0, k))
                if e > 0:
                    break
            est.append(e)
        best_sides, best_gap = None, None
        for sides in itertools.product(("left", "right"), repeat=4):
            left = sum(e for e, s in zip(est, sides) if s == "left")
            right = sum(e for e, s in zip(est, sides) if s == "right")
            gap = abs(left - right)
            if best_gap is None or gap < best_gap:
                best_sides, best_gap = sides, gap
        left_mass = sum(m for m, s in zip(GAME2_MASSES, best_sides) if s == "left")
        wins += left_mass * 2 == sum(GAME2_MASSES)
    return wins / n_attempts


def implementation_rate(play, k: float, n_games: int, condition=Condition.CD_OFF):
    games = 0
    attempts = 0
    for i in range(n_games):
        model = ParticipantModel(weber_fraction=k, seed=1000 + i)
        report = play(model, seed=2000 + i, condition=condition,
                      attempt_cap=100_000)
        games += 1
        attempts += report.attempts
    return games / attempts


class TestExtremeNoiseAgreement:
    # The agents' per-attempt success rates must match an independently
    # coded simulation of the same perception law and decision rules.

    def test_game1_matches_oracle(self):
        oracle = oracle_game1_rate(10.0, 40_000, seed=1)
        impl = implementation_rate(play_game1, 10.0, 1500)
        assert impl == pytest.approx(oracle, abs=0.03)

    def test_game2_matches_oracle(self):
        oracle = oracle_game2_rate(10.0, 40_000, seed=2)
        impl = implementation_rate(play_game2, 10.0, 800)
        assert impl == pytest.approx(oracle, abs=0.03)

    def test_game2_extreme_noise_mean_attempts(self):
        # Frozen from the oracle above: success rate ~0.132 -> mean ~7.6.
        oracle = oracle_game2_rate(10.0, 40_000, seed=3)
        assert 1 / oracle == pytest.approx(7.6, rel=0.15)


class TestPlayGame2:
    def test_zero_noise_single_attempt(self):
        report = play_game2(exact_model(), seed=9, condition=Condition.CD_OFF)
        assert report.attempts == 1
        assert report.solved
        placements = report.per_attempt[0].placements
        left = sum(GAME2_MASSES[i] for i in range(4)
                   if placements[i] == "left")
        assert left * 2 == sum(GAME2_MASSES)

    def test_best_balance_assignment_matches_enumeration(self):
        rng = random.Random(4)
        for _ in range(200):
            est = [rng.uniform(1, 3000) for _ in range(4)]
            sides = best_balance_assignment(est)
            left = sum(e for e, s in zip(est, sides) if s == "left")
            right = sum(e for e, s in zip(est, sides) if s == "right")
            for alt in itertools.product(("left", "right"), repeat=4):
                alt_left = sum(e for e, s in zip(est, alt) if s == "left")
                alt_right = sum(e for e, s in zip(est, alt) if s == "right")
                assert abs(left - right) <= abs(alt_left - alt_right) + 1e-9

    def test_absolute_noise_confuses_mediums(self):
        # sigma_abs = 800 g swamps the 1000 g gaps; solving takes retries.
        n = 60
        total = 0
        for i in range(n):
            model = ParticipantModel(absolute_noise=800.0, seed=i)
            report = play_game2(model, seed=i, condition=Condition.CD_OFF)
            total += report.attempts
        assert total / n > 1.5


class TestCohort:
    def test_zero_noise_totals(self):
        report = run_cohort(6, exact_model(), base_seed=3)
        for game in Game:
            for condition in Condition:
                attempts = report.attempts(game, condition)
                assert attempts == [1] * 6
        d = report.to_dict()
        for game in Game:
            for condition in Condition:
                block = d["per_condition"][game.value][condition.value]
                assert block["total_attempts"] == 6
                assert block["mean"] == 1.0
                assert block["sd"] == 0.0

    def test_byte_identical_reruns(self):
        model = ParticipantModel(weber_fraction=0.2, cue_gain=0.5)
        a = run_cohort(3, model, base_seed=17).to_dict()
        b = run_cohort(3, model, base_seed=17).to_dict()
        assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)

    def test_histogram_sums_to_total_placements(self):
        model = ParticipantModel(weber_fraction=0.4, seed=0)
        report = run_cohort(4, model, base_seed=5)
        d = report.to_dict()
        for game in Game:
            for condition in Condition:
                block = d["per_condition"][game.value][condition.value]
                hist_total = sum(c for row in block["histogram"].values()
                                 for c in row.values())
                placed = 0
                for agent in d["per_agent"]:
                    if agent["game"] != game.value or agent["condition"] != condition.value:
                        continue
                    for rec in agent["report"]["per_attempt"]:
                        placed += sum(1 for loc in rec["placements"].values()
                                      if loc in block["histogram"])
                assert hist_total == placed

    def test_rejects_empty_cohort(self):
        with pytest.raises(ValueError):
            run_cohort(0, exact_model(), base_seed=1)

    def test_derive_seed_is_stable_and_distinct(self):
        a = derive_seed(1, "arrange", "cd_on", 0, "agent")
        b = derive_seed(1, "arrange", "cd_on", 0, "agent")
        c = derive_seed(1, "arrange", "cd_on", 1, "agent")
        assert a == b != c


class TestMonotonicity:
    def test_mean_attempts_nondecreasing_in_k(self):
        means = []
        for k in (0.05, 0.3):
            model = ParticipantModel(weber_fraction=k, cue_gain=0.0)
            report = run_cohort(1000, model, base_seed=8)
            attempts = report.attempts(Game.ARRANGE_CUBES, Condition.CD_ON)
            mean = statistics.fmean(attempts)
            se = statistics.pstdev(attempts) / len(attempts) ** 0.5
            means.append((mean, se))
        assert means[1][0] >= means[0][0] - (means[0][1] + means[1][1])

    def test_mean_attempts_nonincreasing_in_cue_gain(self):
        means = []
        for cue in (0.0, 2.0):
            model = ParticipantModel(weber_fraction=0.3, cue_gain=cue)
            report = run_cohort(1000, model, base_seed=9)
            attempts = report.attempts(Game.ARRANGE_CUBES, Condition.CD_ON)
            mean = statistics.fmean(attempts)
            se = statistics.pstdev(attempts) / len(attempts) ** 0.5
            means.append((mean, se))
        assert means[1][0] <= means[0][0] + (means[0][1] + means[1][1])
