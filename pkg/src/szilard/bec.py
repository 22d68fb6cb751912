"""Condensation estimates for a trapped one-dimensional Bose gas (SI units)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from scipy import optimize

from .units import CONSTANTS

hbar = CONSTANTS.hbar
k_B = CONSTANTS.k_B


def _positive(**kwargs) -> None:
    for name, value in kwargs.items():
        if not value > 0:
            raise ValueError(f"{name} must be positive, got {value}")


def trap_length(omega: float, m_b: float) -> float:
    """Oscillator length sqrt(hbar / (m_b * omega))."""
    _positive(omega=omega, m_b=m_b)
    return math.sqrt(hbar / (m_b * omega))


def trap_frequency(L_t: float, m_b: float) -> float:
    """Axial angular frequency hbar / (m_b * L_t**2), inverse of :func:`trap_length`."""
    _positive(L_t=L_t, m_b=m_b)
    return hbar / (m_b * L_t**2)


@dataclass(frozen=True)
class BecParams:
    """Trapped-gas parameters; give either `trap_length` or `axial_frequency`."""

    boson_mass: float
    temperature: float
    n_particles: int
    trap_length: float | None = None
    axial_frequency: float | None = None

    def __post_init__(self):
        _positive(boson_mass=self.boson_mass, temperature=self.temperature)
        if self.n_particles < 1:
            raise ValueError(f"n_particles must be >= 1, got {self.n_particles}")
        if self.trap_length is None and self.axial_frequency is None:
            raise ValueError("give trap_length or axial_frequency")
        if self.trap_length is None:
            object.__setattr__(self, "trap_length", trap_length(self.axial_frequency, self.boson_mass))
        elif self.axial_frequency is None:
            object.__setattr__(self, "axial_frequency", trap_frequency(self.trap_length, self.boson_mass))
        else:
            expected = trap_frequency(self.trap_length, self.boson_mass)
            if abs(expected - self.axial_frequency) > 1e-12 * expected:
                raise ValueError("trap_length and axial_frequency are inconsistent")


def _atoms_per_level(x: float) -> float:
    return x * math.log(2 * x)


def transition_temperature(N: float, omega: float) -> float:
    """Solve N = x ln(2x), x = k_B T_c / (hbar omega), by bisection in ln x."""
    _positive(omega=omega)
    if N < 2:
        raise ValueError(f"N must be >= 2, got {N}")
    lo, hi = 0.0, math.log(1e12)
    g = lambda u: _atoms_per_level(math.exp(u)) - N  # noqa: E731
    if g(lo) > 0 or g(hi) < 0:
        raise ValueError(f"N={N} is not bracketed by x in [1, 1e12]")
    u = optimize.bisect(g, lo, hi, xtol=1e-12, rtol=1e-12, maxiter=200)
    return math.exp(u) * hbar * omega / k_B


def particles_at_transition(T_c: float, omega: float) -> float:
    """Right-hand side x ln(2x) for x = k_B T_c / (hbar omega) >= 1."""
    _positive(T_c=T_c, omega=omega)
    x = k_B * T_c / (hbar * omega)
    if x < 1:
        raise ValueError(f"k_B T_c / (hbar omega) = {x:.4g} is below 1")
    return _atoms_per_level(x)


def de_broglie_wavelength(m_b: float, T: float) -> float:
    """Thermal wavelength sqrt(2 pi hbar**2 / (m_b k_B T)) in metres."""
    _positive(m_b=m_b, T=T)
    return math.sqrt(2 * math.pi * hbar**2 / (m_b * k_B * T))


class Spacing(NamedTuple):
    linear: float
    from_density: float | None


def interparticle_spacing(params: BecParams, density: float | None = None) -> Spacing:
    """Mean separation: L_t / N along the trap and, given a density, rho**(-1/3)."""
    cubic = None
    if density is not None:
        _positive(density=density)
        cubic = density ** (-1 / 3)
    return Spacing(params.trap_length / params.n_particles, cubic)


def condensation_feasible(wavelength: float, spacing: float) -> tuple[float, bool]:
    """Ratio of de Broglie wavelength to spacing and whether it reaches one."""
    _positive(wavelength=wavelength, spacing=spacing)
    ratio = wavelength / spacing
    return ratio, ratio >= 1


def number_fluctuation(
    T: float, omega: float, N: int | None = None, margin: float = 0.1
) -> tuple[float, bool | None]:
    """Condensate number fluctuation (pi/sqrt 6) k_B T / (hbar omega).

    The flag is True when T <= margin * (hbar omega / k_B) * N / ln N, the
    regime where the estimate holds; None if `N` is not given.
    """
    _positive(T=T, omega=omega)
    dN = math.pi / math.sqrt(6) * k_B * T / (hbar * omega)
    if N is None:
        return dN, None
    if N < 2:
        return dN, False
    bound = hbar * omega / k_B * N / math.log(N)
    return dN, T <= margin * bound


def gamma_parameter(omega: float, T: float) -> float:
    """Confinement ratio hbar omega / (k_B T)."""
    _positive(omega=omega, T=T)
    return hbar * omega / (k_B * T)
