import numpy as np
import pytest

import trispec as ts

V0_RATIOS = np.array(
    [1.0, 0.587624, 0.426178, 0.329975, 0.260701, 0.204394, 0.153593, 0.101142]
)


class TestSequences:
    def test_square_model_speed_measure_is_flat(self, square7):
        np.testing.assert_allclose(ts.speed_measure(square7), np.ones(8))

    def test_speed_measure_recursion(self, random_systems):
        for q in random_systems[:20]:
            mu = ts.speed_measure(q)
            assert mu[0] == 1.0
            for n in range(1, q.dimension):
                assert mu[n] == pytest.approx(mu[n - 1] * q.b[n - 1] / q.a[n - 1])

    def test_square_model_h(self, square7):
        r, h = ts.h_sequence(square7)
        np.testing.assert_allclose(r, np.ones(7))
        np.testing.assert_allclose(h[:8], np.ones(8))
        # boundary value c_N h_N + a_N (h_N - h_{N-1})
        assert h[8] == pytest.approx(64.0)

    def test_h_boundary_identity(self, random_systems):
        for q in random_systems[:20]:
            n = q.dimension - 1
            _, h = ts.h_sequence(q)
            if n == 0:
                assert h[1] == pytest.approx(q.c[0])
            else:
                expected = q.c[n] * h[n] + q.a[n - 1] * (h[n] - h[n - 1])
                assert h[n + 1] == pytest.approx(expected, rel=1e-10)

    def test_one_state_h(self):
        q = ts.build_system([], [], [5.0])
        r, h = ts.h_sequence(q)
        assert r.size == 0
        np.testing.assert_allclose(h, [1.0, 5.0])

    def test_square_model_phi(self, square7, guess7):
        phi = guess7.bundle.phi
        partial = np.cumsum(1.0 / np.arange(1, 8, dtype=float) ** 2)
        expected0 = partial[-1] + 1.0 / 64.0
        assert phi[0] == pytest.approx(expected0)
        assert phi[0] == pytest.approx(1.527422, abs=1e-6)
        assert phi[7] == pytest.approx(1.0 / 64.0)

    def test_phi_positive_decreasing(self, random_systems):
        for q in random_systems:
            g = ts.efficient_initials(q)
            phi = g.bundle.phi
            assert np.all(phi > 0)
            assert np.all(np.diff(phi) <= 1e-12 * np.abs(phi[:-1]))

    def test_r_at_least_one(self, random_systems):
        for q in random_systems:
            r, _ = ts.h_sequence(q)
            assert np.all(r >= 1.0 - 1e-9)


class TestRayleighQuotient:
    def test_uniform_vector_square7(self, square7):
        # with flat mu the quotient of the constant vector is sum(c)/(N+1)
        assert ts.rayleigh_quotient(square7, np.ones(8)) == pytest.approx(8.0)

    def test_matches_dense_quadratic_form(self, random_systems):
        rng = np.random.default_rng(11)
        for q in random_systems[:20]:
            v = rng.standard_normal(q.dimension)
            mu = ts.speed_measure(q)
            num = float(mu * v @ (-q.dense() @ v))
            den = float(mu @ (v * v))
            assert ts.rayleigh_quotient(q, v) == pytest.approx(num / den, rel=1e-12)

    def test_zero_vector_rejected(self, square7):
        with pytest.raises(ts.InvalidSystemError):
            ts.rayleigh_quotient(square7, np.zeros(8))


class TestEfficientInitials:
    def test_v0_ratios(self, guess7):
        ratios = guess7.v0_raw / guess7.v0_raw[0]
        np.testing.assert_allclose(ratios, V0_RATIOS, atol=1e-6)

    def test_v0_is_mu_normalized(self, square7, guess7):
        mu = ts.speed_measure(square7)
        assert float(mu @ (guess7.v0 * guess7.v0)) == pytest.approx(1.0)

    def test_delta1(self, guess7):
        assert guess7.delta1 == pytest.approx(2.057678492399236, rel=1e-12)
        assert guess7.delta1_argmax == 0

    def test_shift_menu(self, guess7):
        assert guess7.z0_inverse_delta == pytest.approx(1.0 / guess7.delta1)
        assert guess7.z0_automatic == pytest.approx(0.78458007881723, rel=1e-10)
        assert guess7.z0_table4 == pytest.approx(0.5233090097388572, rel=1e-10)

    def test_automatic_shift_is_v0_quotient(self, square7, guess7):
        quotient = ts.rayleigh_quotient(square7, guess7.v0)
        assert guess7.z0_automatic == pytest.approx(quotient, rel=1e-12)

    def test_table4_shift_formula(self, guess7):
        expected = 7.0 / (8.0 * guess7.delta1) + guess7.z0_automatic / 8.0
        assert guess7.z0_table4 == pytest.approx(expected, rel=1e-12)

    def test_one_state_exact(self):
        q = ts.build_system([], [], [5.0])
        g = ts.efficient_initials(q)
        np.testing.assert_allclose(g.v0_raw / g.v0_raw[0], [1.0])
        assert g.delta1 == pytest.approx(1.0 / 5.0)
        assert g.z0_inverse_delta == pytest.approx(5.0)

    def test_no_killing_raises(self):
        q = ts.build_system([1.0, 4.0], [1.0, 4.0], [0.0, 0.0, 0.0])
        with pytest.raises(ts.ZeroSpectralGapError):
            ts.efficient_initials(q)

    def test_delta1_brackets_lambda0(self, random_systems):
        # the factor-2 bracket behind the shift menu
        for q in random_systems[:40]:
            g = ts.efficient_initials(q)
            lam0 = float(ts.spectrum(q, 1).eigenvalues[0])
            assert 1.0 - 1e-12 <= lam0 * g.delta1 <= 2.0 + 1e-12
