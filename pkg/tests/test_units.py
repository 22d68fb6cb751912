import math

import pytest
from hypothesis import given, strategies as st

from szilard.units import CONSTANTS, Energy, convert_work, thermal_energy


def test_constants_positive_and_pinned():
    assert CONSTANTS.k_B == 1.380649e-23
    assert CONSTANTS.hbar == 1.054571817e-34
    assert CONSTANTS.m_electron == 9.1093837015e-31
    assert all(v > 0 for v in vars(CONSTANTS).values())


def test_thermal_energy_values():
    assert thermal_energy(0).joules == 0
    # k_B * T / e in meV, computed by hand from the pinned constants
    assert thermal_energy(8).meV == pytest.approx(8 * 1.380649e-23 / 1.602176634e-22, rel=1e-12)
    assert thermal_energy(8).meV == pytest.approx(0.689, abs=5e-4)
    assert thermal_energy(10).meV == pytest.approx(0.862, abs=5e-4)


def test_thermal_energy_rejects_negative():
    with pytest.raises(ValueError):
        thermal_energy(-1)


def test_convert_work():
    assert convert_work(math.log(2), 1).joules == pytest.approx(math.log(2) * CONSTANTS.k_B, rel=1e-15)
    assert convert_work(1.0, 10).meV == pytest.approx(0.862, abs=5e-4)
    assert convert_work(0, 3.3).joules == 0
    for bad_T in (0, -2):
        with pytest.raises(ValueError):
            convert_work(1.0, bad_T)


@given(
    w=st.floats(-1e3, 1e3),
    a=st.floats(0.1, 10),
    T=st.floats(1e-3, 1e3),
)
def test_convert_work_linear(w, a, T):
    assert convert_work(a * w, T).joules == pytest.approx(a * convert_work(w, T).joules, rel=1e-12, abs=1e-300)
    assert convert_work(w, a * T).joules == pytest.approx(a * convert_work(w, T).joules, rel=1e-12, abs=1e-300)


@given(T=st.floats(1e-6, 1e6))
def test_thermal_energy_matches_unit_work(T):
    assert thermal_energy(T).joules / convert_work(1, T).joules == pytest.approx(1, rel=1e-15)


@given(x=st.floats(-1e3, 1e3), T=st.floats(1e-3, 1e3))
def test_round_trips(x, T):
    assert Energy.from_meV(x).meV == pytest.approx(x, rel=1e-12, abs=1e-300)
    assert Energy.from_eV(x).eV == pytest.approx(x, rel=1e-12, abs=1e-300)
    assert Energy.from_kT(x, T).in_kT(T) == pytest.approx(x, rel=1e-12, abs=1e-300)
