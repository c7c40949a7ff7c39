from fractions import Fraction

import pytest

from finitesum.amsvrg import ScheduleParams, alpha, stage_length, tau
from finitesum.oracles import (
    exact_alpha,
    exact_tau,
    schedule_float_error,
    telescoping_residual,
    theorem_coefficient,
)
from finitesum.sampling import BatchSchedule


class TestAlpha:
    def test_unit_smoothness(self):
        assert alpha(ScheduleParams(eta=1.0), 0) == 0.5

    def test_hand_value(self):
        # L_used = 2 -> alpha_4 = 5/8
        assert alpha(ScheduleParams(eta=0.5), 3) == 0.625

    def test_strictly_increasing(self):
        params = ScheduleParams(eta=0.37)
        vals = [alpha(params, k) for k in range(200)]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_matches_exact_rational(self):
        for eta in (10.0, 1.0, 0.1, 0.37):
            assert schedule_float_error(eta, 2000) <= 1e-14


class TestTau:
    def test_tau_zero_is_exactly_one(self):
        for eta in (10.0, 1.0, 0.1, 0.025, 3.7):
            assert tau(ScheduleParams(eta=eta), 0) == 1.0

    def test_hand_value(self):
        # 1/tau_3 = L alpha_4 + 1/2 = 5/4 + 1/2 = 7/4
        assert tau(ScheduleParams(eta=0.5), 3) == pytest.approx(4 / 7, rel=1e-15)

    def test_decreasing_to_zero(self):
        params = ScheduleParams(eta=1.0)
        vals = [tau(params, k) for k in range(500)]
        assert all(b < a for a, b in zip(vals, vals[1:]))
        assert vals[-1] < 0.01
        assert all(0 < v <= 1 for v in vals)

    def test_consistent_with_alpha_relation(self):
        for eta in (1.0, 0.2):
            params = ScheduleParams(eta=eta)
            for k in range(50):
                lhs = 1.0 / tau(params, k)
                rhs = params.L_used * alpha(params, k) + 0.5
                assert lhs == pytest.approx(rhs, rel=1e-12)


class TestTelescopingIdentity:
    def test_residual_is_exactly_zero(self):
        # checked in exact rational arithmetic, where it must vanish
        for L in (Fraction(1, 10), Fraction(1), Fraction(10), Fraction(7, 3)):
            for k in (1, 2, 3, 10, 100, 5000, 10**4):
                assert telescoping_residual(L, k) == 0

    def test_float_schedule_tracks_exact_values(self):
        L = Fraction(1, 10)
        params = ScheduleParams(eta=float(1 / L))
        for k in (0, 1, 10, 9999):
            a = exact_alpha(L, k)
            t = exact_tau(L, k)
            assert alpha(params, k) == pytest.approx(float(a), rel=1e-15)
            assert tau(params, k) == pytest.approx(float(t), rel=1e-15)


class TestStageCoefficient:
    def test_nonnegative_under_batch_rule(self):
        for p in (0.1, 0.25, 0.5):
            sched = BatchSchedule(1000, p)
            for k in range(0, 500):
                c = theorem_coefficient(1000, p, k, 1, b=sched.batch_size(k))
                assert c >= 0

    def test_single_component_problem(self):
        sched = BatchSchedule(1, 0.5)
        assert theorem_coefficient(1, 0.5, 3, 1, b=sched.batch_size(3)) >= 0


class TestStageLength:
    def test_hand_values(self):
        assert stage_length(1.0, 1.0, 1.0, 0.25) == 8
        assert stage_length(4.0, 1.0, 1.0, 1.0) == 8

    def test_monotone_decreasing_in_gap(self):
        lengths = [stage_length(1.0, 1.0, gap, 0.25) for gap in (0.01, 0.1, 1.0, 10.0)]
        assert all(b <= a for a, b in zip(lengths, lengths[1:]))

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            stage_length(1.0, 1.0, 0.0, 0.25)
