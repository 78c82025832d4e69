import io
import math

import numpy as np
import pytest

from spinosc.errors import SpinOscError
from spinosc.inverse import (
    A2_TRUE,
    B22_TRUE,
    EULER_GAMMA,
    SpacingDatum,
    convergence_study,
    recover_a2,
    recover_b22_accel,
    recover_b22_simple,
    spacing_for_level,
    t_min,
)

HALF_POW_32 = 0.5**1.5


def synthetic_datum(n, b22, constant):
    """Spacing datum manufactured to satisfy t_min = 2 pi / (B (|ln h| + c))."""
    hbar = 2.0 / (n + 1)
    value = 2.0 * math.pi / (b22 * (abs(math.log(hbar)) + constant))
    return SpacingDatum(n, hbar, value, True)


class TestTmin:
    def test_n1_hand_value(self):
        sigma = np.array([-HALF_POW_32, HALF_POW_32])
        datum = t_min(sigma, 1.0)
        assert abs(datum.t_min - 0.7071067811865476) < 1e-15
        assert datum.straddles_zero

    def test_requires_two_eigenvalues(self):
        with pytest.raises(SpinOscError):
            t_min(np.array([0.0]), 0.5)

    @pytest.mark.parametrize("n", [3, 5, 9, 13, 33])
    def test_odd_n_gap_straddles_zero(self, n):
        datum = spacing_for_level(n)
        assert datum.straddles_zero
        assert datum.t_min > 0

    def test_positive_for_all_levels(self):
        for n in (2, 3, 4, 7, 16):
            assert spacing_for_level(n).t_min > 0


class TestSyntheticInversion:
    def test_accel_exact_for_any_pair(self):
        for b22, c in ((2.0, 3.0), (0.7, -1.2), (5.5, 10.0)):
            d1 = synthetic_datum(9, b22, c)
            d2 = synthetic_datum(129, b22, c)
            assert abs(recover_b22_accel(d1, d2) - b22) < 1e-12

    def test_a2_exact_from_synthetic(self):
        target_a2 = 5.0 * math.log(2.0)
        c = target_a2 + math.log(2.0) + EULER_GAMMA
        datum = synthetic_datum(513, 2.0, c)
        assert abs(recover_a2(datum, 2.0) - target_a2) < 1e-12

    def test_simple_exact_when_constant_absent(self):
        hbar = 2.0 / 514.0
        datum = SpacingDatum(513, hbar, 2.0 * math.pi / (2.0 * abs(math.log(hbar))), True)
        assert abs(recover_b22_simple(datum) - 2.0) < 1e-12

    def test_degenerate_pair_is_finite_consistency_check(self):
        d1 = synthetic_datum(9, 2.0, 3.0)
        d2 = SpacingDatum(19, 0.1, d1.t_min, True)
        assert math.isfinite(recover_b22_accel(d1, d2))


class TestGuards:
    def test_simple_needs_small_hbar(self):
        with pytest.raises(SpinOscError):
            recover_b22_simple(SpacingDatum(1, 1.0, 0.7, True))

    def test_accel_needs_distinct_hbar(self):
        d = synthetic_datum(9, 2.0, 3.0)
        with pytest.raises(SpinOscError):
            recover_b22_accel(d, d)

    def test_a2_needs_nonzero_b22(self):
        with pytest.raises(SpinOscError):
            recover_a2(synthetic_datum(9, 2.0, 3.0), 0.0)

    def test_study_range_guard(self):
        with pytest.raises(SpinOscError):
            convergence_study(0, 3)
        with pytest.raises(SpinOscError):
            convergence_study(3, 13)


class TestRealRecovery:
    def test_simple_estimator_decreases_toward_two(self):
        series = convergence_study(1, 5)
        simples = [r.b22_simple for r in series.rows]
        assert simples == sorted(simples, reverse=True)
        assert all(s > B22_TRUE for s in simples)

    def test_accelerated_beats_simple(self):
        series = convergence_study(1, 5)
        for row in series.rows:
            assert abs(row.err_b22) < abs(row.b22_simple - B22_TRUE)

    def test_accelerated_error_decreases_along_tail(self):
        errors = [abs(r.err_b22) for r in convergence_study(1, 5).rows]
        assert all(a > b for a, b in zip(errors, errors[1:]))

    def test_exact_ratio_pairing_also_works(self):
        d1 = spacing_for_level(9)
        d2 = spacing_for_level(19)  # hbar exactly halved
        assert abs(d1.hbar - 2.0 * d2.hbar) < 1e-15
        accel = recover_b22_accel(d1, d2)
        assert abs(accel - B22_TRUE) < abs(recover_b22_simple(d1) - B22_TRUE)

    def test_true_vs_recovered_b22_consistency(self):
        with_true = convergence_study(4, 4, use_true_b22=True).rows[0]
        with_recovered = convergence_study(4, 4, use_true_b22=False).rows[0]
        # the a2 difference is bounded by the B22 error propagated through
        # 2 pi / (B * t_min)
        propagated = abs(
            2.0 * math.pi / (with_recovered.b22_accel * with_true.t_min)
            - 2.0 * math.pi / (B22_TRUE * with_true.t_min)
        )
        assert abs(with_true.a2 - with_recovered.a2) <= propagated * (1.0 + 1e-12)

    def test_deterministic(self):
        assert convergence_study(1, 3) == convergence_study(1, 3)


class TestSeriesCsv:
    def test_format_and_blind_mode(self):
        series = convergence_study(1, 2)
        buf = io.StringIO()
        series.write_csv(buf)
        lines = buf.getvalue().splitlines()
        assert lines[0].startswith("k,n,hbar,t_min,b22_simple,b22_accel,a2")
        assert len(lines) == 3
        assert len(lines[1].split(",")) == 10

        blind = io.StringIO()
        series.write_csv(blind, blind=True)
        row = blind.getvalue().splitlines()[1].split(",")
        assert row[-1] == "" and row[-2] == ""

    def test_error_columns_reference_ground_truth(self):
        series = convergence_study(2, 2, use_true_b22=True)
        row = series.rows[0]
        assert abs(row.err_a2 - (row.a2 - A2_TRUE)) < 1e-15
        assert abs(row.err_b22 - (row.b22_accel - B22_TRUE)) < 1e-15
