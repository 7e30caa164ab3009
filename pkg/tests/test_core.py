import math
from dataclasses import replace

import pytest
from hypothesis import given, strategies as st

from weightsim.core import (
    DisplayRule,
    DynamicsConfig,
    ForceComparison,
    Gesture,
    HandState,
    ObjectState,
    Phase,
    cd_ratio,
    expected_force,
    force_release,
    make_sample,
    resolve_gesture,
    step_dynamics,
    lift_rule_transition,
    work_done,
)

CFG = DynamicsConfig()
G = 9.80665


def sample(force: float, t=0.0) -> object:
    # Route a desired effective force through the thumb channel.
    return make_sample(t, force, 0.0, CFG)


def lifting_object(mass=1000.0, hand_height=0.5) -> ObjectState:
    return ObjectState(
        mass=mass,
        expected_force=expected_force(mass),
        phase=Phase.LIFTING,
        physical_height=hand_height,
        display_height=0.0,
        grab_height=hand_height,
        support_height=0.0,
    )


class TestExpectedForce:
    def test_known_masses(self):
        assert expected_force(100) == pytest.approx(0.1 * G, abs=0)
        assert expected_force(100) == pytest.approx(0.980665, abs=1e-12)
        assert expected_force(2200) == pytest.approx(2.2 * G, rel=1e-12)
        assert expected_force(2200) == pytest.approx(21.574630, abs=1e-6)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            expected_force(0)
        with pytest.raises(ValueError):
            expected_force(-5)

    @given(st.floats(min_value=0.001, max_value=1e6),
           st.floats(min_value=0.001, max_value=1e6))
    def test_strictly_monotone(self, m1, m2):
        if m1 == m2:
            return
        lo, hi = sorted([m1, m2])
        assert expected_force(lo) < expected_force(hi)


class TestWorkDone:
    def test_unit_case(self):
        assert work_done(1.0, 1.0) == 1.0

    def test_zero_displacement(self):
        assert work_done(123.4, 0.0) == 0.0

    def test_product(self):
        assert work_done(21.574630, 0.5) == pytest.approx(10.787315, abs=1e-9)

    def test_negative_for_downward(self):
        assert work_done(2.0, -0.25) == -0.5


class TestCdRatio:
    def test_equal_forces(self):
        f = expected_force(100)
        assert cd_ratio(f, f) == 1.0

    def test_direct_ratio(self):
        assert cd_ratio(2.0, 1.0) == 2.0

    def test_clamped_at_cap(self):
        assert cd_ratio(100.0, 1.0, ratio_cap=4.0) == 4.0

    def test_guards_division(self):
        with pytest.raises(ValueError):
            cd_ratio(1.0, 0.0)
        with pytest.raises(ValueError):
            cd_ratio(1.0, -1.0)

    @given(st.floats(min_value=0.01, max_value=10),
           st.floats(min_value=0.01, max_value=10),
           st.floats(min_value=0.01, max_value=100))
    def test_scale_invariance(self, f, fe, alpha):
        # Common rescaling leaves the ratio alone while below the cap.
        if f / fe >= 4.0 or (alpha * f) / (alpha * fe) >= 4.0:
            return
        assert cd_ratio(alpha * f, alpha * fe) == pytest.approx(
            cd_ratio(f, fe), rel=1e-12)


class TestResolveGesture:
    def test_idle_hand(self):
        assert resolve_gesture(0.0, 0.0, CFG) == (Gesture.NONE, 0.0)

    def test_palm_dominates(self):
        assert resolve_gesture(0.3, 2.0, CFG) == (Gesture.GRIP, 2.0)

    def test_pinch_when_palm_below_threshold(self):
        assert resolve_gesture(0.3, 0.1, CFG) == (Gesture.PINCH, 0.3)

    def test_thresholds_are_inclusive(self):
        assert resolve_gesture(CFG.pinch_threshold, 0.0, CFG)[0] is Gesture.PINCH
        assert resolve_gesture(0.0, CFG.grip_threshold, CFG)[0] is Gesture.GRIP

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            resolve_gesture(-0.1, 0.0, CFG)

    def test_gains_scale_effective_force(self):
        cfg = replace(CFG, pinch_gain=2.0, grip_gain=0.5)
        assert resolve_gesture(0.3, 0.1, cfg) == (Gesture.PINCH, 0.6)
        assert resolve_gesture(0.3, 2.0, cfg) == (Gesture.GRIP, 1.0)


class TestLiftRuleTable:
    def test_exhaustive(self):
        expected = {
            (Phase.HELD_RESTING, ForceComparison.LESS):
                (Phase.HELD_RESTING, DisplayRule.STAY_STATIC),
            (Phase.HELD_RESTING, ForceComparison.EQUAL):
                (Phase.LIFTING, DisplayRule.BEGIN_LIFT),
            (Phase.HELD_RESTING, ForceComparison.GREATER):
                (Phase.LIFTING, DisplayRule.BEGIN_LIFT),
            (Phase.LIFTING, ForceComparison.EQUAL):
                (Phase.LIFTING, DisplayRule.DISPLAY_EQUALS_PHYSICAL),
            (Phase.LIFTING, ForceComparison.GREATER):
                (Phase.LIFTING, DisplayRule.DISPLAY_ABOVE_PHYSICAL),
            (Phase.LIFTING, ForceComparison.LESS):
                (Phase.LIFTING, DisplayRule.DISPLAY_BELOW_PHYSICAL),
        }
        for (phase, cmp_), want in expected.items():
            assert lift_rule_transition(phase, cmp_) == want

    def test_uncovered_phases_rejected(self):
        for phase in (Phase.FREE, Phase.FALLING):
            for cmp_ in ForceComparison:
                with pytest.raises(ValueError):
                    lift_rule_transition(phase, cmp_)


def run_lift(obj, ratio, rise, steps, cfg=CFG, dt=0.02):
    """Drive a held object with constant ratio while the hand rises evenly."""
    force = ratio * obj.expected_force
    h0 = obj.physical_height
    hand = None
    for i in range(1, steps + 1):
        hand = HandState(time_ms=i * dt * 1000, height=h0 + rise * i / steps)
        obj = step_dynamics(obj, hand, sample(force), dt, cfg)
    return obj


class TestStepDynamics:
    def test_ratio_one_tracks_hand(self):
        obj = run_lift(lifting_object(), ratio=1.0, rise=0.20, steps=100)
        assert obj.phase is Phase.LIFTING
        assert obj.display_height == pytest.approx(0.20, abs=1e-9)

    def test_ratio_scales_displacement(self):
        obj = run_lift(lifting_object(), ratio=1.5, rise=0.20, steps=100)
        assert obj.display_height == pytest.approx(0.30, abs=1e-9)

    def test_sag_below_one(self):
        obj = run_lift(lifting_object(), ratio=0.5, rise=0.20, steps=100)
        assert obj.phase is Phase.LIFTING
        assert obj.display_height == pytest.approx(0.10, abs=1e-9)

    def test_sustained_low_ratio_releases(self):
        # 0.1 < release_ratio for 200 ms >= the 150 ms dwell.
        obj = lifting_object()
        obj = replace(obj, display_height=1.0)
        hand = HandState(time_ms=0, height=obj.physical_height)
        force = 0.1 * obj.expected_force
        for i in range(10):
            obj = step_dynamics(obj, hand, sample(force), 0.02, CFG)
        assert obj.phase is Phase.FALLING

    def test_falling_descends_at_gravity(self):
        obj = lifting_object()
        obj = replace(obj, phase=Phase.FALLING, display_height=1.0)
        hand = HandState(time_ms=0, height=0.5)
        # Independent explicit-Euler reference for the same three steps.
        expected_h, v = 1.0, 0.0
        for _ in range(3):
            v += G * 0.02
            expected_h -= v * 0.02
        for _ in range(3):
            obj = step_dynamics(obj, hand, sample(0.0), 0.02, CFG)
        assert obj.display_height == pytest.approx(expected_h, abs=1e-12)
        assert obj.fall_speed == pytest.approx(v, abs=1e-12)

    def test_falling_lands_on_support_then_free(self):
        obj = lifting_object()
        obj = replace(obj, phase=Phase.FALLING, display_height=0.05)
        hand = HandState(time_ms=0, height=0.5)
        for _ in range(100):
            obj = step_dynamics(obj, hand, sample(0.0), 0.02, CFG)
            assert obj.display_height >= obj.support_height
            if obj.phase is Phase.FREE:
                break
        assert obj.phase is Phase.FREE
        assert obj.display_height == obj.support_height

    def test_grab_requires_force_and_proximity(self):
        obj = ObjectState.resting(100.0)
        near = HandState(time_ms=0, height=0.05, horizontal_position=0.0)
        far = HandState(time_ms=0, height=0.5, horizontal_position=0.0)
        assert step_dynamics(obj, near, sample(0.0), 0.02, CFG).phase is Phase.FREE
        assert step_dynamics(obj, far, sample(1.0), 0.02, CFG).phase is Phase.FREE
        grabbed = step_dynamics(obj, near, sample(1.0), 0.02, CFG)
        assert grabbed.phase is Phase.HELD_RESTING
        assert grabbed.physical_height == near.height
        assert grabbed.display_height == obj.support_height

    def test_resting_stays_until_force_meets_weight(self):
        obj = ObjectState.resting(1000.0)
        hand = HandState(time_ms=0, height=0.05)
        obj = step_dynamics(obj, hand, sample(5.0), 0.02, CFG)
        assert obj.phase is Phase.HELD_RESTING
        obj2 = step_dynamics(obj, hand, sample(5.0), 0.02, CFG)
        assert obj2.phase is Phase.HELD_RESTING  # 5 N < 9.8 N stays static
        assert obj2.display_height == obj2.support_height
        obj3 = step_dynamics(obj, hand, sample(obj.expected_force), 0.02, CFG)
        assert obj3.phase is Phase.LIFTING

    def test_zero_force_drops_immediately(self):
        obj = lifting_object()
        obj = replace(obj, display_height=0.4)
        hand = HandState(time_ms=0, height=0.9)
        obj = step_dynamics(obj, hand, sample(0.0), 0.02, CFG)
        assert obj.phase is Phase.FALLING

    def test_force_release_helper(self):
        obj = lifting_object()
        assert force_release(obj).phase is Phase.FALLING
        free = ObjectState.resting(100.0)
        assert force_release(free) is free

    def test_rejects_nonpositive_dt(self):
        obj = ObjectState.resting(100.0)
        hand = HandState(time_ms=0, height=0.0)
        with pytest.raises(ValueError):
            step_dynamics(obj, hand, sample(0.0), 0.0, CFG)

    def test_binary_fallback_lifts_one_to_one(self):
        cfg = replace(CFG, cd_enabled=False)
        obj = lifting_object(mass=1000.0)
        fe = obj.expected_force
        lifted = run_lift(obj, ratio=1.0, rise=0.20, steps=50, cfg=cfg)
        assert lifted.display_height == pytest.approx(0.20, abs=1e-9)
        # Force above the weight still moves 1:1 with the ratio disabled.
        hand = HandState(time_ms=0, height=obj.physical_height + 0.1)
        above = step_dynamics(obj, hand, sample(3.0 * fe), 0.02, cfg)
        assert above.display_height == pytest.approx(0.1, abs=1e-12)

    def test_binary_fallback_never_lifts_below_weight(self):
        cfg = replace(CFG, cd_enabled=False)
        obj = ObjectState.resting(1000.0)
        hand = HandState(time_ms=0, height=0.05)
        obj = step_dynamics(obj, hand, sample(1.0), 0.02, cfg)
        assert obj.phase is Phase.HELD_RESTING
        for i in range(6):  # under the dwell, still resting
            hand = HandState(time_ms=i * 20, height=0.05 + 0.01 * i)
            obj = step_dynamics(obj, hand, sample(obj.expected_force * 0.99),
                                0.02, cfg)
            if obj.phase is not Phase.HELD_RESTING:
                break
            assert obj.display_height == obj.support_height

    def test_ordering_law_sign(self):
        for ratio, sign in ((0.5, -1), (1.5, 1), (2.0, 1)):
            obj = lifting_object()
            hand = HandState(time_ms=0, height=obj.physical_height + 0.01)
            stepped = step_dynamics(obj, hand, sample(ratio * obj.expected_force),
                                    0.02, CFG)
            d_display = stepped.display_height - obj.display_height
            d_hand = hand.height - obj.physical_height
            assert math.copysign(1, d_display - d_hand) == sign

    def test_determinism_bit_identical(self):
        def run():
            obj = ObjectState.resting(700.0)
            for i in range(200):
                hand = HandState(time_ms=i * 20.0,
                                 height=0.05 + 0.001 * (i % 37),
                                 horizontal_position=0.002 * (i % 11))
                force = (i % 9) * 1.3
                obj = step_dynamics(obj, hand, sample(force), 0.02, CFG)
            return obj

        assert run() == run()

    @given(st.lists(st.tuples(st.floats(min_value=0, max_value=30),
                              st.floats(min_value=-0.5, max_value=1.5)),
                    min_size=1, max_size=200))
    def test_floor_law(self, steps):
        obj = ObjectState.resting(700.0)
        for i, (force, height) in enumerate(steps):
            hand = HandState(time_ms=i * 20.0, height=height)
            obj = step_dynamics(obj, hand, sample(force), 0.02, CFG)
            assert obj.display_height >= obj.support_height


class TestDynamicsConfig:
    def test_rejects_nonpositive_fields(self):
        with pytest.raises(ValueError):
            DynamicsConfig(gravity=0)
        with pytest.raises(ValueError):
            DynamicsConfig(grab_radius=-1)

    def test_release_ratio_bounds(self):
        with pytest.raises(ValueError):
            DynamicsConfig(release_ratio=1.5)
        with pytest.raises(ValueError):
            DynamicsConfig(ratio_cap=0.5)
