"""Physical constants and energy conversions.

Engine quantities are dimensionless (units of k_B*T); BEC estimates are SI.
Joules are the canonical energy unit, meV/eV are display views.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA 2018 values, pinned so results never drift with library updates."""

    k_B: float = 1.380649e-23  # J/K
    hbar: float = 1.054571817e-34  # J s
    m_electron: float = 9.1093837015e-31  # kg
    e: float = 1.602176634e-19  # C, used for eV conversion


CONSTANTS = PhysicalConstants()


@dataclass(frozen=True)
class Energy:
    """An energy stored in joules."""

    joules: float

    @classmethod
    def from_eV(cls, value: float) -> Energy:
        return cls(value * CONSTANTS.e)

    @classmethod
    def from_meV(cls, value: float) -> Energy:
        return cls(value * CONSTANTS.e * 1e-3)

    @classmethod
    def from_kT(cls, value: float, T: float) -> Energy:
        return convert_work(value, T)

    @property
    def eV(self) -> float:
        return self.joules / CONSTANTS.e

    @property
    def meV(self) -> float:
        return self.joules / CONSTANTS.e * 1e3

    def in_kT(self, T: float) -> float:
        """Value in units of k_B*T at temperature `T` (kelvin)."""
        if T <= 0:
            raise ValueError(f"temperature must be positive, got {T}")
        return self.joules / (CONSTANTS.k_B * T)


def thermal_energy(T: float) -> Energy:
    """Return k_B*T for a temperature in kelvin."""
    if T < 0:
        raise ValueError(f"temperature must be non-negative, got {T}")
    return Energy(CONSTANTS.k_B * T)


def convert_work(w: float, T: float) -> Energy:
    """Convert a work value in units of k_B*T to an :class:`Energy`."""
    if T <= 0:
        raise ValueError(f"temperature must be positive, got {T}")
    return Energy(w * CONSTANTS.k_B * T)
