"""Microstate counting and the probability tables f_m / f*_m.

Tables are exact (``fractions.Fraction``) up to ``EXACT_LIMIT`` particles and
floating point above that.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence, Union

Number = Union[Fraction, float]
IntegerPartition = tuple[int, ...]

EXACT_LIMIT = 64
PARTITION_LIMIT = 120


class CapacityError(ValueError):
    """Requested size exceeds what can be enumerated."""


class TableKind(enum.Enum):
    MEASURED = "measured"
    EQUILIBRIUM = "equilibrium"


@dataclass(frozen=True)
class ProbabilityTable:
    """Probabilities indexed by m, the number of particles left of the wall.

    ``MEASURED`` tables (f_m) sum to one. ``EQUILIBRIUM`` tables (f*_m) are
    per-branch references and need not be normalized.
    """

    n_particles: int
    probs: tuple[Number, ...]
    kind: TableKind = TableKind.MEASURED
    exact: bool = False

    def __post_init__(self):
        if len(self.probs) != self.n_particles + 1:
            raise ValueError(
                f"table for N={self.n_particles} needs {self.n_particles + 1} "
                f"entries, got {len(self.probs)}"
            )
        for p in self.probs:
            if not 0 <= p <= 1 + 1e-12:
                raise ValueError(f"probability {p} outside [0, 1]")
        if self.kind is TableKind.MEASURED:
            total = sum(self.probs) if self.exact else math.fsum(self.probs)
            if abs(total - 1) > 1e-12:
                raise ValueError(f"measured table sums to {float(total)}, not 1")

    def __len__(self):
        return len(self.probs)

    def __getitem__(self, m):
        return self.probs[m]

    def as_floats(self) -> list[float]:
        return [float(p) for p in self.probs]


def _check_range(N: int, m: int) -> None:
    if N < 0 or m < 0 or m > N:
        raise ValueError(f"need 0 <= m <= N, got N={N}, m={m}")


def _log_comb(N: int, m: int) -> float:
    return math.lgamma(N + 1) - math.lgamma(m + 1) - math.lgamma(N - m + 1)


def _xlogy(x: float, y: float) -> float:
    # 0 * log(0) = 0, i.e. the 0**0 = 1 convention
    return 0.0 if x == 0 else x * math.log(y)


def multiplicity(N: int, m: int) -> int:
    """Number of placements of N labelled particles with m on the left."""
    _check_range(N, m)
    return math.comb(N, m)


def f_distinguishable(N: int, m: int) -> Number:
    """Probability C(N, m) / 2**N of measuring m particles on the left."""
    _check_range(N, m)
    if N <= EXACT_LIMIT:
        return Fraction(math.comb(N, m), 2**N)
    return math.exp(_log_comb(N, m) - N * math.log(2))


def f_equilibrium_distinguishable(N: int, m: int) -> Number:
    """High-temperature reference f*_m = C(N,m) (m/N)^m (1 - m/N)^(N-m).

    The endpoints evaluate to 1 through the 0**0 = 1 convention.
    """
    _check_range(N, m)
    if N == 0:
        return Fraction(1)
    if N <= EXACT_LIMIT:
        x = Fraction(m, N)
        return math.comb(N, m) * x**m * (1 - x) ** (N - m)
    x = m / N
    return math.exp(_log_comb(N, m) + _xlogy(m, x) + _xlogy(N - m, 1 - x))


def _check_bias(r) -> None:
    if not abs(r) < Fraction(1, 2):
        raise ValueError(f"bias must satisfy |r| < 1/2, got {r}")


def f_biased(N: int, m: int, r: Number) -> Number:
    """Binomial probability with left-side preference 1/2 + r.

    Exact when `r` is a ``Fraction`` (or zero) and N is small.
    """
    _check_range(N, m)
    _check_bias(r)
    if N <= EXACT_LIMIT and isinstance(r, (int, Fraction)):
        r = Fraction(r)
        return math.comb(N, m) * (Fraction(1, 2) + r) ** m * (Fraction(1, 2) - r) ** (N - m)
    if N <= EXACT_LIMIT:
        return math.comb(N, m) * (0.5 + r) ** m * (0.5 - r) ** (N - m)
    return math.exp(_log_comb(N, m) + _xlogy(m, 0.5 + r) + _xlogy(N - m, 0.5 - r))


def f_gaussian_approx(N: int, m_prime: float) -> float:
    """Large-N Gaussian form exp(-N*delta**2/2), delta = 2*m_prime/N.

    This is the ratio f_{N/2 + m'} / f_{N/2}, not a normalized probability.
    """
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if abs(m_prime) > N / 2:
        raise ValueError(f"|m_prime| must be <= N/2, got {m_prime}")
    delta = 2 * m_prime / N
    return math.exp(-N * delta**2 / 2)


def f_indistinguishable_lowT(N: int, m: int) -> Fraction:
    """Each of the N + 1 occupation splits is equally likely."""
    _check_range(N, m)
    return Fraction(1, N + 1)


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind, S(n, k)."""
    if n < 0 or k < 0:
        raise ValueError(f"need n, k >= 0, got n={n}, k={k}")
    if k > n:
        return 0
    # row-by-row recurrence S(i, j) = j*S(i-1, j) + S(i-1, j-1)
    row = [1] + [0] * k
    for _ in range(n):
        for j in range(k, 0, -1):
            row[j] = j * row[j] + row[j - 1]
        row[0] = 0
    return row[k]


def omega_indistinguishable_partitions(N: int) -> int:
    """Arrangements of N labelled particles over two unlabelled sides."""
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    return 1 + stirling2(N, 2)


def iter_partitions(N: int) -> Iterator[IntegerPartition]:
    """Yield the partitions of N, each as a weakly decreasing tuple.

    Uses Kelleher's ascending-composition generator and reverses each result.
    """
    if N < 0:
        raise ValueError(f"N must be >= 0, got {N}")
    if N == 0:
        yield ()
        return
    a = [0] * (N + 1)
    k = 1
    y = N - 1
    while k != 0:
        x = a[k - 1] + 1
        k -= 1
        while 2 * x <= y:
            a[k] = x
            y -= x
            k += 1
        l = k + 1
        while x <= y:
            a[k] = x
            a[l] = y
            yield tuple(reversed(a[: k + 2]))
            x += 1
            y -= 1
        a[k] = x + y
        y = x + y - 1
        yield tuple(reversed(a[: k + 1]))


def integer_partitions(N: int) -> list[IntegerPartition]:
    """All partitions of N in reverse-lexicographic (canonical) order."""
    if not 1 <= N <= PARTITION_LIMIT:
        raise CapacityError(f"N must lie in [1, {PARTITION_LIMIT}], got {N}")
    return sorted(iter_partitions(N), reverse=True)


def distinguishable_table(N: int) -> ProbabilityTable:
    probs = tuple(f_distinguishable(N, m) for m in range(N + 1))
    return ProbabilityTable(N, probs, TableKind.MEASURED, exact=N <= EXACT_LIMIT)


def equilibrium_table(N: int) -> ProbabilityTable:
    probs = tuple(f_equilibrium_distinguishable(N, m) for m in range(N + 1))
    return ProbabilityTable(N, probs, TableKind.EQUILIBRIUM, exact=N <= EXACT_LIMIT)


def biased_table(N: int, r: Number) -> ProbabilityTable:
    probs = tuple(f_biased(N, m, r) for m in range(N + 1))
    exact = N <= EXACT_LIMIT and isinstance(r, (int, Fraction))
    return ProbabilityTable(N, probs, TableKind.MEASURED, exact=exact)


def indistinguishable_lowT_table(N: int) -> ProbabilityTable:
    probs = tuple(f_indistinguishable_lowT(N, m) for m in range(N + 1))
    return ProbabilityTable(N, probs, TableKind.MEASURED, exact=True)


def table_from(probs: Sequence[Number], kind: TableKind = TableKind.MEASURED) -> ProbabilityTable:
    """Wrap an explicit list of probabilities."""
    probs = tuple(probs)
    exact = all(isinstance(p, (int, Fraction)) for p in probs)
    return ProbabilityTable(len(probs) - 1, probs, kind, exact=exact)
