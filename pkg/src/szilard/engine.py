"""Extractable work of quantum Szilard engines and the energies built from it.

All work values are dimensionless, in units of k_B*T.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import combinatorics as comb
from .combinatorics import ProbabilityTable, TableKind

LN2 = math.log(2)


class Statistics(enum.Enum):
    DISTINGUISHABLE = "distinguishable"
    BOSON_LOWT = "boson-lowT"
    FERMION_LOWT = "fermion-lowT"
    TWO_BOSON = "two-boson"


class PartitionKind(enum.Enum):
    DISTINGUISHABLE_SIDES = "distinguishable-sides"
    INDISTINGUISHABLE_SIDES = "indistinguishable-sides"


class SingularReference(ValueError):
    """A branch with f_m > 0 has a zero equilibrium reference f*_m."""


class NoCriticalPoint(ValueError):
    """Boson work never reaches zero (gamma = 0)."""


@dataclass(frozen=True)
class EngineConfig:
    n_particles: int = 1
    statistics: Statistics = Statistics.DISTINGUISHABLE
    partition_kind: PartitionKind = PartitionKind.DISTINGUISHABLE_SIDES
    purity: float = 1.0
    bias_r: float = 0.0
    gamma: float = 0.0
    temperature: float | None = None

    def __post_init__(self):
        if self.n_particles < 1:
            raise ValueError(f"N must be >= 1, got {self.n_particles}")
        if not 0 <= self.purity <= 1:
            raise ValueError(f"purity p must lie in [0, 1], got {self.purity}")
        if not abs(self.bias_r) < 0.5:
            raise ValueError(f"bias must satisfy |r| < 1/2, got {self.bias_r}")
        if self.gamma < 0:
            raise ValueError(f"gamma must be non-negative, got {self.gamma}")
        if self.temperature is not None and self.temperature <= 0:
            raise ValueError("temperature must be positive")


@dataclass(frozen=True)
class Branch:
    m: int
    f: float
    f_star: float
    contribution: float


@dataclass(frozen=True)
class WorkResult:
    total: float
    per_branch: tuple[Branch, ...] = ()
    approximation_flags: frozenset[str] = field(default_factory=frozenset)

    def __float__(self):
        return self.total


def _as_table(t, kind: TableKind) -> ProbabilityTable:
    if isinstance(t, ProbabilityTable):
        return t
    return comb.table_from(t, kind)


def work_general(
    f: ProbabilityTable | Sequence[float],
    f_star: ProbabilityTable | Sequence[float],
    flags: frozenset[str] = frozenset(),
) -> WorkResult:
    """W = -sum_m f_m ln(f_m / f*_m); branches with f_m = 0 contribute nothing."""
    f = _as_table(f, TableKind.MEASURED)
    f_star = _as_table(f_star, TableKind.EQUILIBRIUM)
    if len(f) != len(f_star):
        raise ValueError(f"table lengths differ: {len(f)} vs {len(f_star)}")
    branches = []
    for m, (fm, fs) in enumerate(zip(f.probs, f_star.probs)):
        if fm == 0:
            c = 0.0
        elif fs == 0:
            raise SingularReference(f"f*_{m} = 0 while f_{m} = {float(fm)}")
        else:
            # log of an exact ratio keeps f == f* at exactly zero
            c = -float(fm) * math.log(fm / fs)
        branches.append(Branch(m, float(fm), float(fs), c))
    total = math.fsum(b.contribution for b in branches)
    return WorkResult(total, tuple(branches), frozenset(flags))


def f0_two_bosons(p: float) -> float:
    """Probability that both bosons are found on the same given side."""
    if not 0 <= p <= 1:
        raise ValueError(f"purity p must lie in [0, 1], got {p}")
    return (1 + p) / (4 + 2 * p)


def work_two_bosons(p: float) -> float:
    f0 = f0_two_bosons(p)
    return -2 * f0 * math.log(f0)


def binding_two_bosons(p: float) -> float:
    """Pair binding energy: two-boson work at purity p minus the fermionic ln 2."""
    return work_two_bosons(p) - LN2


def work_biased(N: int, r: float) -> float:
    """Closed form -ln(1 - beta**2), beta = N*r, for a biased initial distribution."""
    beta = N * r
    if not abs(beta) < 1:
        raise ValueError(f"beta = N*r must satisfy |beta| < 1, got {beta}")
    return -math.log1p(-beta * beta)


def _distinguishable_log_branches(N: int) -> WorkResult:
    # log-domain branches: ln(f_m/f*_m) = -N ln 2 - m ln(m/N) - (N-m) ln(1-m/N),
    # the binomial coefficient cancels
    m = np.arange(N + 1, dtype=float)
    x = m / N
    with np.errstate(divide="ignore", invalid="ignore"):
        xl = np.where(m > 0, m * np.log(x), 0.0)
        yl = np.where(m < N, (N - m) * np.log1p(-x), 0.0)
    log_ratio = -N * LN2 - xl - yl
    log_comb = np.array([comb._log_comb(N, k) for k in range(N + 1)])
    log_f = log_comb - N * LN2
    f = np.exp(log_f)
    f_star = np.exp(log_f - log_ratio)
    contrib = -f * log_ratio
    branches = tuple(
        Branch(k, float(f[k]), float(f_star[k]), float(contrib[k])) for k in range(N + 1)
    )
    return WorkResult(math.fsum(contrib), branches, frozenset({"dominant-term-limit-is-zero"}))


def work_distinguishable_exact(N: int) -> WorkResult:
    """Exact high-temperature work for N distinguishable particles.

    The large-N statement W -> 0 only keeps the m = N/2 term; here every branch
    is summed and the result carries the ``dominant-term-limit-is-zero`` flag.
    """
    if not 1 <= N <= 10**4:
        raise ValueError(f"N must lie in [1, 10000], got {N}")
    if N > comb.EXACT_LIMIT:
        return _distinguishable_log_branches(N)
    return work_general(
        comb.distinguishable_table(N),
        comb.equilibrium_table(N),
        frozenset({"dominant-term-limit-is-zero"}),
    )


def work_biased_exact(N: int, r: float) -> WorkResult:
    """Branch sum over the biased f_m against the unbiased high-T f*_m."""
    return work_general(
        comb.biased_table(N, r), comb.equilibrium_table(N), frozenset({"biased"})
    )


def _confinement_sum(N: int) -> float:
    """Bracketed sum multiplying 2*gamma/(N+1) in the N-boson work."""
    upper = (N - 1) // 2 if N % 2 else N // 2 - 1
    if upper < 1:
        return 0.0
    m = np.arange(1, upper + 1, dtype=float)
    q = np.cbrt((N - m) / m)
    terms = m * ((1 + q) ** 2 - (1 - 1 / (1 + q)) ** -2)
    return math.fsum(terms)


def work_bosons_lowT(N: int, gamma: float) -> float:
    """Low-temperature work of N bosons in a trap with confinement gamma.

    alpha*ln(N+1) - 2*gamma/(N+1) * sum_m m[(1+q)^2 - (1 - 1/(1+q))^-2],
    q = ((N-m)/m)^(1/3), alpha = 1 for odd N and N/(N+1) for even N. The sum
    runs to (N-1)/2 for odd N and N/2 - 1 for even N.
    """
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if gamma < 0:
        raise ValueError(f"gamma must be non-negative, got {gamma}")
    alpha = 1.0 if N % 2 else N / (N + 1)
    head = alpha * math.log(N + 1)
    if gamma == 0:
        return head
    return head - 2 * gamma / (N + 1) * _confinement_sum(N)


def work_fermions_lowT(N: int) -> float:
    """ln 2 from the unpaired fermion when N is odd, zero otherwise."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    return LN2 if N % 2 else 0.0


def work_mixed_lowT(n_bosons: int, n_fermions: int, gamma: float) -> float:
    """Bosons and fermions combined additively; an odd fermion count adds ln 2."""
    w = work_bosons_lowT(n_bosons, gamma) if n_bosons else 0.0
    if n_fermions:
        w += work_fermions_lowT(n_fermions)
    return w


def capacitive_energy_first(N: int, gamma: float) -> float:
    """E1_c(N) = W(N+1) - W(N) for low-temperature bosons."""
    return work_bosons_lowT(N + 1, gamma) - work_bosons_lowT(N, gamma)


def capacitive_energy_second(N: int, gamma: float) -> float:
    """E2_c(N) = W(N+1) + W(N-1) - 2 W(N)."""
    if N < 2:
        raise ValueError(f"second capacitive energy needs N >= 2, got {N}")
    return (
        work_bosons_lowT(N + 1, gamma)
        + work_bosons_lowT(N - 1, gamma)
        - 2 * work_bosons_lowT(N, gamma)
    )


def binding_energy_N(N: int, gamma: float) -> float:
    return work_bosons_lowT(N, gamma) - work_fermions_lowT(N)


def critical_boson_number(gamma: float, cap: int = 10**5) -> int | None:
    """Smallest N >= 2 at which the confined boson work is no longer positive.

    Returns None when nothing is found up to `cap`.
    """
    if gamma < 0:
        raise ValueError(f"gamma must be non-negative, got {gamma}")
    if gamma == 0:
        raise NoCriticalPoint("without confinement the boson work grows as ln(N+1)")
    for N in range(2, cap + 1):
        if work_bosons_lowT(N, gamma) <= 0:
            return N
    return None


def evaluate(config: EngineConfig) -> WorkResult:
    """Work for a full engine configuration."""
    if config.partition_kind is PartitionKind.INDISTINGUISHABLE_SIDES:
        raise ValueError(
            "no work functional is defined for indistinguishable sides; "
            "use the oracle counts instead"
        )
    N = config.n_particles
    stats = config.statistics
    if N == 1 and stats is not Statistics.TWO_BOSON:
        if config.bias_r:
            return work_biased_exact(1, config.bias_r)
        return WorkResult(LN2, (Branch(0, 0.5, 1.0, LN2 / 2), Branch(1, 0.5, 1.0, LN2 / 2)))
    if stats is Statistics.DISTINGUISHABLE:
        if config.bias_r:
            return work_biased_exact(N, config.bias_r)
        return work_distinguishable_exact(N)
    if stats is Statistics.TWO_BOSON:
        p = config.purity
        f0 = f0_two_bosons(p)
        c = -f0 * math.log(f0)
        branches = (Branch(0, f0, 1.0, c), Branch(1, 1 - 2 * f0, 1 - 2 * f0, 0.0), Branch(2, f0, 1.0, c))
        return WorkResult(math.fsum([c, c]), branches)
    if stats is Statistics.BOSON_LOWT:
        return WorkResult(work_bosons_lowT(N, config.gamma), (), frozenset({"closed-form"}))
    return WorkResult(work_fermions_lowT(N), (), frozenset({"closed-form"}))
