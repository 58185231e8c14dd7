"""Mode dilation: thermal amplitudes, Hawking temperature, 5-qubit state."""

import math

import numpy as np
import pytest

from gtnsim import (
    DomainError,
    InitialStateParams,
    SpacetimeParams,
    dilate_state,
    hawking_temperature,
    kruskal_mode_pair,
    partial_trace,
    thermal_amplitudes,
)

# high-precision values frozen from mpmath (30 digits): 1/sqrt(1+e^-1), 1/sqrt(1+e)
C_AT_UNIT_RATIO = 0.85501963640024366
S_AT_UNIT_RATIO = 0.51859562413309575
ALPHA_GHZ = math.sqrt(0.5)


class TestHawkingTemperature:
    def test_inverse_relation(self):
        assert hawking_temperature(1.0 / (8.0 * math.pi)) == pytest.approx(1.0, abs=1e-15)

    def test_large_mass_limit(self):
        assert hawking_temperature(1e12) < 1e-12

    def test_unit_mass(self):
        assert hawking_temperature(1.0) == pytest.approx(0.039788735772973834, abs=1e-15)

    def test_nonpositive_mass_rejected(self):
        with pytest.raises(DomainError):
            hawking_temperature(0.0)
        with pytest.raises(DomainError):
            hawking_temperature(-1.0)

    def test_params_mass_consistency(self):
        SpacetimeParams.from_mass(omega_k=1.0, mass=2.0)
        with pytest.raises(DomainError):
            SpacetimeParams(omega_k=1.0, T=0.5, mass=1.0)


class TestThermalAmplitudes:
    def test_cold_limit(self):
        assert thermal_amplitudes(1.0, 0.0) == (1.0, 0.0)
        assert thermal_amplitudes(1.0, 1e-9) == (1.0, 0.0)

    def test_hot_limit(self):
        c, s = thermal_amplitudes(1.0, 1e9)
        assert c == pytest.approx(1 / math.sqrt(2), abs=1e-9)
        assert s == pytest.approx(1 / math.sqrt(2), abs=1e-9)

    def test_unit_ratio(self):
        c, s = thermal_amplitudes(1.0, 1.0)
        assert c == pytest.approx(C_AT_UNIT_RATIO, abs=1e-15)
        assert s == pytest.approx(S_AT_UNIT_RATIO, abs=1e-15)

    def test_normalization(self, rng):
        for _ in range(50):
            omega = rng.uniform(0.1, 5.0)
            temp = rng.uniform(0.0, 50.0)
            c, s = thermal_amplitudes(omega, temp)
            assert abs(c * c + s * s - 1.0) < 1e-14

    def test_depends_on_ratio_only(self, rng):
        for _ in range(20):
            omega = rng.uniform(0.1, 5.0)
            temp = rng.uniform(0.01, 20.0)
            lam = rng.uniform(0.1, 10.0)
            a = thermal_amplitudes(omega, temp)
            b = thermal_amplitudes(lam * omega, lam * temp)
            assert a[0] == pytest.approx(b[0], abs=1e-13)
            assert a[1] == pytest.approx(b[1], abs=1e-13)


class TestKruskalPair:
    def test_cold_vacuum(self):
        st = SpacetimeParams(omega_k=1.0, T=0.0)
        np.testing.assert_array_equal(
            kruskal_mode_pair(st, excited=False).amplitudes, [1, 0, 0, 0]
        )

    def test_excited_is_one_particle_outside(self):
        st = SpacetimeParams(omega_k=1.0, T=3.0)
        np.testing.assert_array_equal(
            kruskal_mode_pair(st, excited=True).amplitudes, [0, 0, 1, 0]
        )

    def test_hot_vacuum_symmetric(self):
        st = SpacetimeParams(omega_k=1.0, T=1e9)
        amps = kruskal_mode_pair(st, excited=False).amplitudes
        assert amps[0] == pytest.approx(1 / math.sqrt(2), abs=1e-9)
        assert amps[3] == pytest.approx(1 / math.sqrt(2), abs=1e-9)


class TestDilatedState:
    def test_cold_limit_is_two_branch_state(self):
        psi = dilate_state(InitialStateParams(ALPHA_GHZ), SpacetimeParams(1.0, 0.0))
        expected = np.zeros(32)
        expected[0b00000] = ALPHA_GHZ
        expected[0b11010] = ALPHA_GHZ
        np.testing.assert_allclose(psi.amplitudes, expected, atol=1e-15)

    def test_alpha_one_is_product_on_alice(self):
        psi = dilate_state(InitialStateParams(1.0), SpacetimeParams(1.0, 0.7))
        rho_a = partial_trace(psi.density(), {"A"})
        np.testing.assert_allclose(rho_a.entries, [[1, 0], [0, 0]], atol=1e-14)

    def test_unit_ratio_coefficient(self):
        psi = dilate_state(InitialStateParams(ALPHA_GHZ), SpacetimeParams(1.0, 1.0))
        # weight of |01111>: alpha * s^2, frozen from mpmath
        assert psi.amplitudes[0b01111].real == pytest.approx(0.19017030279267222, abs=1e-15)

    def test_term_coefficients_match_printed_forms(self, rng):
        # the four ladder coefficients equal their (e^x-based) closed forms
        for _ in range(25):
            omega = rng.uniform(0.2, 3.0)
            temp = rng.uniform(0.05, 30.0)
            alpha = rng.uniform(0.0, 1.0)
            x = omega / temp
            psi = dilate_state(InitialStateParams(alpha), SpacetimeParams(omega, temp))
            amp = psi.amplitudes
            if x < 700.0:  # literal forms overflow past this
                assert amp[0b00000].real == pytest.approx(
                    alpha / (math.exp(-x) + 1.0), abs=1e-13
                )
                assert amp[0b01111].real == pytest.approx(
                    alpha / (math.exp(x) + 1.0), abs=1e-13
                )
                cross = alpha / math.sqrt(math.exp(x) + math.exp(-x) + 2.0)
                assert amp[0b00011].real == pytest.approx(cross, abs=1e-13)
                assert amp[0b01100].real == pytest.approx(cross, abs=1e-13)
            beta = math.sqrt(1.0 - alpha * alpha)
            assert amp[0b11010].real == pytest.approx(beta, abs=1e-13)
            assert np.sum(np.abs(amp) ** 2) == pytest.approx(1.0, abs=1e-12)

    def test_depends_on_ratio_only(self, rng):
        for _ in range(10):
            lam = rng.uniform(0.2, 5.0)
            a = dilate_state(InitialStateParams(0.3), SpacetimeParams(1.0, 0.8))
            b = dilate_state(InitialStateParams(0.3), SpacetimeParams(lam, 0.8 * lam))
            np.testing.assert_allclose(a.amplitudes, b.amplitudes, atol=1e-13)

    def test_cold_reduction_is_ghz_like(self, rng):
        alpha = rng.uniform(0.1, 0.95)
        psi = dilate_state(InitialStateParams(alpha), SpacetimeParams(1.0, 0.0))
        rho = partial_trace(psi.density(), {"A", "B1", "C1"})
        expected = np.zeros((8, 8))
        expected[0, 0] = alpha**2
        expected[7, 7] = 1 - alpha**2
        expected[0, 7] = expected[7, 0] = alpha * math.sqrt(1 - alpha**2)
        np.testing.assert_allclose(rho.entries, expected, atol=1e-12)

    def test_alpha_range_enforced(self):
        with pytest.raises(DomainError):
            InitialStateParams(1.2)
        with pytest.raises(DomainError):
            InitialStateParams(-0.1)
