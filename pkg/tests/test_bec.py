import math

import pytest
from hypothesis import given, strategies as st

from szilard import bec
from szilard.units import CONSTANTS

HBAR, K_B = CONSTANTS.hbar, CONSTANTS.k_B
M_POLARITON = 1e-5 * CONSTANTS.m_electron
L_TRAP = 100e-6
OMEGA = HBAR / (M_POLARITON * L_TRAP**2)


class TestTrap:
    def test_polariton_frequency(self):
        assert bec.trap_frequency(L_TRAP, M_POLARITON) == pytest.approx(1.16e9, rel=5e-3)

    @given(omega=st.floats(1.0, 1e12), mass=st.floats(1e-36, 1e-24))
    def test_round_trip(self, omega, mass):
        assert bec.trap_frequency(bec.trap_length(omega, mass), mass) == pytest.approx(omega, rel=1e-12)

    def test_atomic_trap(self):
        m_rb87 = 86.909180531 * 1.66053906660e-27
        length = bec.trap_length(2 * math.pi * 360, m_rb87)
        assert math.isfinite(length) and 1e-7 < length < 1e-5

    def test_mass_scaling(self):
        assert bec.trap_length(OMEGA, 2 * M_POLARITON) == pytest.approx(L_TRAP / math.sqrt(2), rel=1e-12)

    @pytest.mark.parametrize("args", [(0, 1e-30), (1e9, -1.0)])
    def test_domain(self, args):
        with pytest.raises(ValueError):
            bec.trap_length(*args)
        with pytest.raises(ValueError):
            bec.trap_frequency(*args)


class TestParams:
    def test_derives_missing(self):
        p = bec.BecParams(M_POLARITON, 10.0, 1000, trap_length=L_TRAP)
        assert p.axial_frequency == pytest.approx(OMEGA, rel=1e-12)
        q = bec.BecParams(M_POLARITON, 10.0, 1000, axial_frequency=OMEGA)
        assert q.trap_length == pytest.approx(L_TRAP, rel=1e-12)

    def test_inconsistent(self):
        with pytest.raises(ValueError):
            bec.BecParams(M_POLARITON, 10.0, 1000, trap_length=L_TRAP, axial_frequency=2 * OMEGA)

    def test_requires_one(self):
        with pytest.raises(ValueError):
            bec.BecParams(M_POLARITON, 10.0, 1000)


class TestTransition:
    @pytest.mark.parametrize("N", [2, 10, 100, 1000, 10**4, 10**6])
    def test_inverse(self, N):
        t_c = bec.transition_temperature(N, OMEGA)
        assert bec.particles_at_transition(t_c, OMEGA) == pytest.approx(N, rel=1e-8)

    def test_frequency_scaling(self):
        assert bec.transition_temperature(1000, 2 * OMEGA) == pytest.approx(
            2 * bec.transition_temperature(1000, OMEGA), rel=1e-10
        )

    def test_polariton_value(self):
        # x ln 2x = 1000 has x close to 171.3; T_c = x hbar omega / k_B
        t_c = bec.transition_temperature(1000, OMEGA)
        x = t_c * K_B / (HBAR * OMEGA)
        assert x * math.log(2 * x) == pytest.approx(1000, rel=1e-10)
        assert 1.0 < t_c < 2.0

    def test_too_few(self):
        with pytest.raises(ValueError):
            bec.transition_temperature(1, OMEGA)

    def test_rhs(self):
        t_c = 100 * HBAR * OMEGA / K_B
        assert bec.particles_at_transition(t_c, OMEGA) == pytest.approx(100 * math.log(200), rel=1e-12)
        assert bec.particles_at_transition(t_c, OMEGA) == pytest.approx(530, abs=0.5)

    @pytest.mark.parametrize("x", [0.5, 0.99])
    def test_rhs_domain(self, x):
        with pytest.raises(ValueError):
            bec.particles_at_transition(x * HBAR * OMEGA / K_B, OMEGA)


class TestWavelength:
    def test_quarter_temperature(self):
        assert bec.de_broglie_wavelength(M_POLARITON, 2.5) == pytest.approx(
            2 * bec.de_broglie_wavelength(M_POLARITON, 10), rel=1e-12
        )

    def test_polariton_scale(self):
        lam10 = bec.de_broglie_wavelength(M_POLARITON, 10)
        lam1 = bec.de_broglie_wavelength(M_POLARITON, 1)
        assert lam10 == pytest.approx(5e-6, rel=0.6)
        assert lam1 == pytest.approx(17e-6, rel=0.6)

    @given(T=st.floats(1e-3, 1e3))
    def test_sqrt_t_invariant(self, T):
        ref = bec.de_broglie_wavelength(M_POLARITON, 1.0)
        assert bec.de_broglie_wavelength(M_POLARITON, T) * math.sqrt(T) == pytest.approx(ref, rel=1e-12)


class TestSpacing:
    def test_linear(self):
        p = bec.BecParams(M_POLARITON, 10.0, 1000, trap_length=L_TRAP)
        assert bec.interparticle_spacing(p).linear == pytest.approx(1e-7, rel=1e-12)
        one = bec.BecParams(M_POLARITON, 10.0, 1, trap_length=L_TRAP)
        assert bec.interparticle_spacing(one).linear == L_TRAP

    def test_density(self):
        p = bec.BecParams(M_POLARITON, 10.0, 1000, trap_length=L_TRAP)
        assert bec.interparticle_spacing(p, density=1e18).from_density == pytest.approx(1e-6, rel=1e-12)


class TestFeasibility:
    def test_cases(self):
        assert bec.condensation_feasible(1e-7, 1e-7) == (1.0, True)
        ratio, ok = bec.condensation_feasible(bec.de_broglie_wavelength(M_POLARITON, 10), 1e-7)
        assert ok and ratio > 10
        assert bec.condensation_feasible(1e-8, 1e-7)[1] is False


class TestFluctuation:
    def test_linear_in_t(self):
        a, _ = bec.number_fluctuation(1.0, OMEGA)
        b, _ = bec.number_fluctuation(3.0, OMEGA)
        assert b == pytest.approx(3 * a, rel=1e-14)

    def test_unit_ratio(self):
        T = HBAR * OMEGA / K_B
        assert bec.number_fluctuation(T, OMEGA)[0] == pytest.approx(math.pi / math.sqrt(6), rel=1e-14)
        assert bec.number_fluctuation(T, OMEGA)[0] == pytest.approx(1.2825, abs=1e-4)

    def test_validity_flag(self):
        bound = HBAR * OMEGA / K_B * 1000 / math.log(1000)
        assert bec.number_fluctuation(0.01 * bound, OMEGA, 1000)[1] is True
        assert bec.number_fluctuation(2 * bound, OMEGA, 1000)[1] is False
        assert bec.number_fluctuation(0.5 * bound, OMEGA, 1000, margin=1.0)[1] is True
        assert bec.number_fluctuation(1.0, OMEGA)[1] is None


class TestGamma:
    def test_scaling(self):
        assert bec.gamma_parameter(OMEGA, 10.0) == pytest.approx(bec.gamma_parameter(OMEGA, 1.0) / 10, rel=1e-14)

    def test_polariton_value(self):
        g1 = bec.gamma_parameter(OMEGA, 1.0)
        assert g1 == pytest.approx(HBAR * OMEGA / K_B, rel=1e-14)
        assert g1 == pytest.approx(0.0088, abs=1e-4)
