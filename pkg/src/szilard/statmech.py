"""Single-particle spectra, Boltzmann sums and the force balance on the wall.

Lengths are in metres, temperatures in kelvin and energies in joules. The
T = 0 case is a separate branch (ground-level occupation) rather than a limit
of Boltzmann sums.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from scipy import optimize

from .units import CONSTANTS

DEFAULT_CUTOFF = 256
DEFAULT_TRUNCATION_TOL = 1e-12


class Variant(enum.Enum):
    INFINITE_WELL = "infinite-well"
    HARMONIC = "harmonic"


class TruncationError(ArithmeticError):
    """The truncated Boltzmann sum misses more than the allowed tail."""

    def __init__(self, bound: float, tol: float):
        super().__init__(f"truncation bound {bound:.3e} exceeds tolerance {tol:.3e}")
        self.bound = bound
        self.tol = tol


class DegenerateConfiguration(ValueError):
    """All particles sit on one side, so the wall runs to the box edge."""

    def __init__(self, m: int, N: int, wall_position: float):
        super().__init__(
            f"m={m} of N={N}: no interior equilibrium, wall ends at {wall_position}"
        )
        self.wall_position = wall_position


class ZeroTemperatureLimit(ValueError):
    """Quantity is only defined as a T -> 0 limit, not at T = 0 itself."""


@dataclass(frozen=True)
class SpectrumModel:
    """Energy-level law of one compartment as a function of its length.

    INFINITE_WELL: E_n(l) = scale * n**2 / l**2 with n >= 1 (scale in J m^2).

    HARMONIC: E_n = hbar*omega*(n + 1/2) with n >= 0 and omega = scale. When
    ``reference_length`` is set the trap length tracks the compartment,
    omega(l) = scale * (reference_length / l)**2, following
    L_t = sqrt(hbar / (m omega)). Without it the levels do not depend on l
    and the wall feels no force.
    """

    variant: Variant
    scale: float
    reference_length: float | None = None

    def __post_init__(self):
        if self.scale <= 0:
            raise ValueError(f"scale must be positive, got {self.scale}")
        if self.reference_length is not None and self.reference_length <= 0:
            raise ValueError("reference_length must be positive")

    @classmethod
    def infinite_well(cls, mass: float = CONSTANTS.m_electron) -> SpectrumModel:
        return cls(Variant.INFINITE_WELL, math.pi**2 * CONSTANTS.hbar**2 / (2 * mass))

    @classmethod
    def harmonic(cls, omega: float, reference_length: float | None = None) -> SpectrumModel:
        return cls(Variant.HARMONIC, omega, reference_length)

    @property
    def ground_index(self) -> int:
        return 1 if self.variant is Variant.INFINITE_WELL else 0

    def levels(self, cutoff: int) -> range:
        return range(self.ground_index, self.ground_index + cutoff)


@dataclass(frozen=True)
class BoxState:
    m_left: int
    m_right: int
    wall_position: float  # fraction of total_length
    temperature: float
    total_length: float = 1.0

    def __post_init__(self):
        if self.m_left < 0 or self.m_right < 0:
            raise ValueError("particle counts must be non-negative")
        if not 0 < self.wall_position < 1:
            raise ValueError(f"wall_position must lie in (0, 1), got {self.wall_position}")
        if self.temperature < 0:
            raise ValueError("temperature must be non-negative")
        if self.total_length <= 0:
            raise ValueError("total_length must be positive")

    @property
    def n_particles(self) -> int:
        return self.m_left + self.m_right


@dataclass(frozen=True)
class PartitionFunction:
    """Boltzmann sum for m independent particles in a compartment.

    ``shifted`` is Z * exp(m*E_ground / k_B T), i.e. measured from the ground
    configuration; it equals 1 at T = 0. ``log_value`` is ln Z (-inf at T = 0
    when the ground energy is positive).
    """

    shifted: float
    log_value: float
    ground_energy: float
    truncation_bound: float

    @property
    def value(self) -> float:
        return math.exp(self.log_value)


def level_energy(model: SpectrumModel, n: int, l: float) -> float:
    if l <= 0:
        raise ValueError(f"length must be positive, got {l}")
    if n < model.ground_index:
        raise ValueError(f"level {n} below ground index {model.ground_index}")
    if model.variant is Variant.INFINITE_WELL:
        return model.scale * n**2 / l**2
    omega = model.scale
    if model.reference_length is not None:
        omega *= (model.reference_length / l) ** 2
    return CONSTANTS.hbar * omega * (n + 0.5)


def level_slope(model: SpectrumModel, n: int, l: float) -> float:
    """Analytic dE_n/dl."""
    if model.variant is Variant.HARMONIC and model.reference_length is None:
        return 0.0
    # both l-dependent laws scale as 1/l**2
    return -2.0 * level_energy(model, n, l) / l


def _boltzmann_weights(model: SpectrumModel, l: float, T: float, cutoff: int):
    """Ground-shifted weights over `cutoff` levels plus the relative tail bound."""
    kT = CONSTANTS.k_B * T
    e0 = level_energy(model, model.ground_index, l)
    weights = [math.exp(-(level_energy(model, n, l) - e0) / kT) for n in model.levels(cutoff)]
    total = math.fsum(weights)
    first_out = model.ground_index + cutoff
    w_next = math.exp(-(level_energy(model, first_out, l) - e0) / kT)
    w_after = math.exp(-(level_energy(model, first_out + 1, l) - e0) / kT)
    if w_next == 0.0:
        tail = 0.0
    else:
        # level ratios shrink with n for both laws, so the tail is geometric-bounded
        ratio = w_after / w_next
        tail = math.inf if ratio >= 1 else w_next / (1 - ratio)
    return weights, total, tail / total


def occupations(model: SpectrumModel, l: float, T: float, cutoff: int = DEFAULT_CUTOFF) -> list[float]:
    """Single-particle level occupation probabilities P_n."""
    if T == 0:
        return [1.0] + [0.0] * (cutoff - 1)
    weights, total, _ = _boltzmann_weights(model, l, T, cutoff)
    return [w / total for w in weights]


def partition_function(
    model: SpectrumModel,
    m: int,
    l: float,
    T: float,
    cutoff: int = DEFAULT_CUTOFF,
    tol: float | None = DEFAULT_TRUNCATION_TOL,
) -> PartitionFunction:
    """Partition function of m independent particles in a compartment of length l.

    Pass ``tol=None`` to skip the truncation check.
    """
    if m < 0:
        raise ValueError(f"m must be non-negative, got {m}")
    if T < 0:
        raise ValueError(f"temperature must be non-negative, got {T}")
    if cutoff < 1:
        raise ValueError(f"cutoff must be >= 1, got {cutoff}")
    e0 = level_energy(model, model.ground_index, l)
    ground = m * e0
    if m == 0:
        return PartitionFunction(1.0, 0.0, 0.0, 0.0)
    if T == 0:
        log_value = -math.inf if ground > 0 else 0.0
        return PartitionFunction(1.0, log_value, ground, 0.0)
    _, total, rel_tail = _boltzmann_weights(model, l, T, cutoff)
    bound = m * rel_tail
    if tol is not None and bound > tol:
        raise TruncationError(bound, tol)
    kT = CONSTANTS.k_B * T
    return PartitionFunction(total**m, m * (math.log(total) - e0 / kT), ground, bound)


def net_force(model: SpectrumModel, state: BoxState, cutoff: int = DEFAULT_CUTOFF) -> float:
    """Left-minus-right pressure on the wall; positive pushes it towards the right."""
    L = state.total_length
    l_left = state.wall_position * L
    l_right = L - l_left

    def push(count: int, l: float) -> float:
        if count == 0:
            return 0.0
        probs = occupations(model, l, state.temperature, cutoff)
        return count * math.fsum(
            -p * level_slope(model, n, l) for p, n in zip(probs, model.levels(cutoff)) if p
        )

    return push(state.m_left, l_left) - push(state.m_right, l_right)


def _check_split(m: int, N: int, L: float) -> None:
    if N < 1 or not 0 <= m <= N:
        raise ValueError(f"need 0 <= m <= N with N >= 1, got m={m}, N={N}")
    if L <= 0:
        raise ValueError(f"box length must be positive, got {L}")
    if m == 0:
        raise DegenerateConfiguration(m, N, 0.0)
    if m == N:
        raise DegenerateConfiguration(m, N, L)


def equilibrium_position(
    model: SpectrumModel,
    m: int,
    N: int,
    L: float,
    T: float,
    rtol: float = 1e-10,
    cutoff: int = DEFAULT_CUTOFF,
) -> float:
    """Wall position l_eq in (0, L) where the forces from both sides balance.

    Raises
    ------
    DegenerateConfiguration
        For m = 0 or m = N.
    ValueError
        If the force does not change sign, e.g. for a rigid harmonic trap.
    """
    _check_split(m, N, L)

    def force(l):
        return net_force(model, BoxState(m, N - m, l / L, T, L), cutoff)

    eps = 1e-6
    lo, hi = eps * L, (1 - eps) * L
    f_lo, f_hi = force(lo), force(hi)
    if not (f_lo > 0 > f_hi):
        raise ValueError(
            f"force does not change sign on (0, L): f(lo)={f_lo:.3e}, f(hi)={f_hi:.3e}"
        )
    return optimize.bisect(force, lo, hi, xtol=1e-3 * rtol * L, rtol=rtol, maxiter=200)


def equilibrium_closed_form(m: int, N: int, L: float) -> float:
    """Ground-level force balance for 1/l**2 levels: L / (1 + ((N-m)/m)**(1/3))."""
    _check_split(m, N, L)
    return L / (1 + ((N - m) / m) ** (1 / 3))


def f_star_lowT_infinite_well(
    N: int, m: int, L: float, T: float, model: SpectrumModel | None = None
):
    """Low-temperature equilibrium reference f*_m for a wall started at L/2.

    Evaluates exp[-(m/k_B T)(E_0(l_e) - E_0(L - l_e))] for 0 < m < N/2, with
    E_0 the lowest level of `model` (default: infinite well, electron mass)
    and l_e the closed-form equilibrium length. m = N/2 gives 1/(N+1),
    m = 0 and m = N give 1, and m > N/2 mirrors to N - m.
    """
    if T < 0:
        raise ValueError(f"temperature must be non-negative, got {T}")
    if T == 0:
        raise ZeroTemperatureLimit("f*_m is defined as the T -> 0 limit; pass T > 0")
    if N < 1 or not 0 <= m <= N:
        raise ValueError(f"need 0 <= m <= N with N >= 1, got m={m}, N={N}")
    if m == 0 or m == N:
        return Fraction(1)
    if 2 * m == N:
        return Fraction(1, N + 1)
    if 2 * m > N:
        m = N - m
    model = model or SpectrumModel.infinite_well()
    l_e = equilibrium_closed_form(m, N, L)
    n0 = model.ground_index
    gap = level_energy(model, n0, l_e) - level_energy(model, n0, L - l_e)
    return math.exp(-m * gap / (CONSTANTS.k_B * T))
