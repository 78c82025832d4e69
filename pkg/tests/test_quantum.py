import io
import math
from fractions import Fraction

import numpy as np
import pytest

from oracles import charpoly_eigenvalues, charpoly_sign_logabs
from spinosc import _sturm_py, eigensolve
from spinosc.errors import SpectrumError, SpinOscError
from spinosc.quantum import (
    BandMatrix,
    QuantumParams,
    build_h_matrix,
    eigenspace_dim,
    j_eigenvalues,
    joint_spectrum,
    level_index,
    sigma_n,
    tridiag_eigenvalues,
)

HALF_POW_32 = 0.5**1.5  # (1/2)^{3/2}


class TestQuantumParams:
    def test_hbar_relation_exact(self):
        for n in (0, 1, 2, 13, 1025):
            params = QuantumParams(n)
            assert params.hbar_exact * (n + 1) == 2

    def test_rejects_negative(self):
        with pytest.raises(SpinOscError):
            QuantumParams(-1)


class TestJEigenvalues:
    def test_n1_ladder(self):
        assert np.array_equal(j_eigenvalues(QuantumParams(1), 4), [0.0, 1.0, 2.0, 3.0])

    def test_n13_first_value(self):
        assert j_eigenvalues(QuantumParams(13), 1)[0] == float(Fraction(-6, 7))

    def test_one_always_in_spectrum(self):
        for n in (1, 2, 13, 128):
            params = QuantumParams(n)
            values = j_eigenvalues(params, n + 1)
            assert values[-1] == 1.0
            assert level_index(params, 1.0) == n

    def test_ascending(self):
        values = j_eigenvalues(QuantumParams(6), 20)
        assert np.all(np.diff(values) > 0)


class TestEigenspaceDim:
    def test_at_one(self):
        for n in (1, 5, 13):
            assert eigenspace_dim(QuantumParams(n), 1.0) == n + 1

    def test_lowest(self):
        params = QuantumParams(9)
        lowest = j_eigenvalues(params, 1)[0]
        assert eigenspace_dim(params, lowest) == 1

    def test_linear_growth_then_plateau(self):
        params = QuantumParams(7)
        dims = [eigenspace_dim(params, lam) for lam in j_eigenvalues(params, 12)]
        assert dims == [1, 2, 3, 4, 5, 6, 7, 8, 8, 8, 8, 8]

    def test_rejects_non_eigenvalue(self):
        with pytest.raises(SpectrumError):
            eigenspace_dim(QuantumParams(4), 1.0 + 0.3 * QuantumParams(4).hbar)


class TestBuildMatrix:
    def test_n1_lambda1(self):
        m = build_h_matrix(QuantumParams(1), 1.0)
        assert m.size == 2
        assert np.allclose(m.offdiag, [1.0])
        assert m.scale == HALF_POW_32
        assert m.ell0 == 1

    def test_n2_lambda1(self):
        m = build_h_matrix(QuantumParams(2), 1.0)
        assert np.allclose(m.offdiag, [2.0, math.sqrt(2.0)])

    def test_bottom_of_ladder_is_trivial(self):
        params = QuantumParams(6)
        m = build_h_matrix(params, j_eigenvalues(params, 1)[0])
        assert m.size == 1
        assert len(m.offdiag) == 0

    def test_offdiag_positive_and_symmetric_dense(self):
        m = build_h_matrix(QuantumParams(9), 1.0)
        assert np.all(m.offdiag > 0)
        dense = m.dense()
        assert np.array_equal(dense, dense.T)
        assert np.all(np.diag(dense) == 0.0)


class TestEigensolver:
    def test_n1_closed_form(self):
        values = tridiag_eigenvalues(build_h_matrix(QuantumParams(1), 1.0))
        assert abs(values[0] + HALF_POW_32) < 1e-14
        assert abs(values[1] - HALF_POW_32) < 1e-14

    def test_trivial_matrix(self):
        m = BandMatrix(np.zeros(0), 1.0, 0)
        assert np.array_equal(tridiag_eigenvalues(m), [0.0])

    @pytest.mark.parametrize("n", range(1, 9))
    def test_matches_characteristic_polynomial_oracle(self, n):
        m = build_h_matrix(QuantumParams(n), 1.0)
        mine = tridiag_eigenvalues(m, tol=1e-15)
        oracle = charpoly_eigenvalues(m.scaled_offdiag(), tol=1e-13)
        assert np.max(np.abs(mine - oracle)) < 1e-10

    def test_deterministic(self):
        m = build_h_matrix(QuantumParams(55), 1.0)
        a = tridiag_eigenvalues(m)
        b = tridiag_eigenvalues(m)
        assert np.array_equal(a, b)

    def test_tolerance_scales_interval(self):
        m = build_h_matrix(QuantumParams(13), 1.0)
        coarse = tridiag_eigenvalues(m, tol=1e-4)
        fine = tridiag_eigenvalues(m, tol=1e-15)
        assert np.max(np.abs(coarse - fine)) < 2e-4 * m.norm_bound()


class TestBackends:
    def test_python_kernel_counts(self):
        m = build_h_matrix(QuantumParams(12), 1.0)
        c2 = m.scaled_offdiag() ** 2
        shifts = np.linspace(-1, 1, 101)
        counts = _sturm_py.sturm_counts(c2, shifts)
        assert counts[0] == 0 and counts[-1] == 13
        assert np.all(np.diff(counts) >= 0)

    @pytest.mark.skipif(eigensolve.BACKEND != "compiled", reason="extension not built")
    def test_kernels_bit_identical(self):
        from spinosc import _sturm

        rng = np.random.default_rng(11)
        for size in (2, 9, 64, 257):
            c2 = rng.uniform(0.0, 1.0, size - 1) ** 2
            shifts = rng.uniform(-2.0, 2.0, 137)
            a = _sturm.sturm_counts(np.ascontiguousarray(c2), np.ascontiguousarray(shifts))
            b = _sturm_py.sturm_counts(c2, shifts)
            assert np.array_equal(a, b)


class TestSigmaN:
    def test_n1(self):
        values = sigma_n(QuantumParams(1))
        assert np.allclose(values, [-HALF_POW_32, HALF_POW_32], atol=1e-14)

    @pytest.mark.parametrize("n", [3, 5, 9, 13, 27])
    def test_zero_excluded_for_odd_n(self, n):
        m = build_h_matrix(QuantumParams(n), 1.0)
        values = sigma_n(QuantumParams(n))
        assert np.min(np.abs(values)) > 1e-8 * m.norm_bound()

    @pytest.mark.parametrize("n", [2, 4, 10])
    def test_zero_included_for_even_n(self, n):
        m = build_h_matrix(QuantumParams(n), 1.0)
        values = sigma_n(QuantumParams(n))
        assert np.min(np.abs(values)) < 1e-12 * m.norm_bound()

    @pytest.mark.parametrize("n", [13, 111, 1025])
    def test_symmetric_spectrum(self, n):
        m = build_h_matrix(QuantumParams(n), 1.0)
        values = sigma_n(QuantumParams(n))
        assert len(values) == n + 1
        assert np.max(np.abs(values + values[::-1])) < 1e-10 * m.norm_bound()

    @pytest.mark.parametrize("n", [3, 7, 15, 101])
    def test_charpoly_at_zero_log_space(self, n):
        # |P(0)| = (c_1 c_3 ... c_n)^2 with sign (-1)^{(n+1)/2}: zero is never
        # an eigenvalue for odd n
        c = build_h_matrix(QuantumParams(n), 1.0).scaled_offdiag()
        sign, logabs = charpoly_sign_logabs(c, 0.0)
        assert sign == (-1) ** ((n + 1) // 2)
        expected = 2.0 * np.sum(np.log(c[::2]))
        assert abs(logabs - expected) < 1e-9 * max(1.0, abs(expected))

    def test_classical_range_bound_and_monotone_saturation(self):
        h_max = 0.769800358919501  # max |H| on the boundary of {J = 1}
        tops = []
        for n in (13, 27, 55, 111):
            values = sigma_n(QuantumParams(n))
            top = np.max(np.abs(values))
            assert top < h_max
            tops.append(top)
        assert tops == sorted(tops)


class TestJointSpectrum:
    def test_n13_column_at_one(self):
        params = QuantumParams(13)
        js = joint_spectrum(params, float(Fraction(-6, 7)), 3.0)
        col = next(c for c in js.columns if c.lam == 1.0)
        assert len(col.nus) == 14

    def test_n1_two_columns(self):
        js = joint_spectrum(QuantumParams(1), 0.0, 1.0)
        assert [c.lam for c in js.columns] == [0.0, 1.0]
        assert np.array_equal(js.columns[0].nus, [0.0])
        assert len(js.columns[1].nus) == 2

    def test_all_columns_symmetric(self):
        params = QuantumParams(13)
        js = joint_spectrum(params, float(Fraction(-6, 7)), 3.0)
        for col in js.columns:
            nus = col.nus
            assert np.max(np.abs(nus + nus[::-1])) < 1e-12

    def test_empty_range(self):
        js = joint_spectrum(QuantumParams(3), 2.05, 2.2)
        assert js.columns == ()

    def test_invalid_range(self):
        with pytest.raises(SpinOscError):
            joint_spectrum(QuantumParams(3), 1.0, 0.0)

    def test_column_dimensions_match_formula(self):
        params = QuantumParams(8)
        js = joint_spectrum(params, float(j_eigenvalues(params, 1)[0]), 2.0)
        for col in js.columns:
            assert len(col.nus) == eigenspace_dim(params, col.lam)

    def test_threaded_output_identical(self, monkeypatch):
        def same(a, b):
            return len(a.columns) == len(b.columns) and all(
                x.lam == y.lam and np.array_equal(x.nus, y.nus)
                for x, y in zip(a.columns, b.columns)
            )

        params = QuantumParams(11)
        lo = float(j_eigenvalues(params, 1)[0])
        serial = joint_spectrum(params, lo, 3.0, max_workers=1)
        threaded = joint_spectrum(params, lo, 3.0, max_workers=4)
        assert same(serial, threaded)
        monkeypatch.setenv("SEMITORIC_THREADS", "3")
        from_env = joint_spectrum(params, lo, 3.0)
        assert same(serial, from_env)

    def test_csv_format(self):
        js = joint_spectrum(QuantumParams(1), 0.0, 1.0)
        buf = io.StringIO()
        js.write_csv(buf)
        lines = buf.getvalue().splitlines()
        assert lines[0] == "lambda,nu"
        assert len(lines) == 4
        lams = [float(line.split(",")[0]) for line in lines[1:]]
        assert lams == sorted(lams)
