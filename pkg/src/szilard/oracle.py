"""Brute-force ground truth for the counting and equilibrium results.

Nothing here calls the closed-form routines it is meant to check.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .combinatorics import CapacityError
from .statmech import SpectrumModel, level_energy

ENUMERATION_LIMIT = 20


@dataclass(frozen=True)
class MicrostateSet:
    """Explicit microstates and their histogram over m (particles on the left).

    For indistinguishable sides, states are equivalence classes (frozensets
    of a placement and its mirror) and the histogram key is min(m, N - m).
    """

    n_particles: int
    states: tuple
    histogram: dict[int, int]

    def histogram_list(self) -> list[int]:
        return [self.histogram.get(k, 0) for k in range(max(self.histogram) + 1)]


def _check_capacity(N: int) -> None:
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if N > ENUMERATION_LIMIT:
        raise CapacityError(f"2**{N} placements exceed the enumeration limit")


def enumerate_distinguishable(N: int) -> MicrostateSet:
    """Every side label assignment (0 = left, 1 = right) of N labelled particles."""
    _check_capacity(N)
    states = tuple(itertools.product((0, 1), repeat=N))
    hist = Counter(s.count(0) for s in states)
    return MicrostateSet(N, states, dict(sorted(hist.items())))


def enumerate_indistinguishable_particles(N: int) -> MicrostateSet:
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    states = tuple((m, N - m) for m in range(N + 1))
    return MicrostateSet(N, states, {m: 1 for m in range(N + 1)})


def enumerate_indistinguishable_sides(N: int) -> MicrostateSet:
    """Placements merged with their side-swapped mirror image."""
    _check_capacity(N)
    classes = {}
    for s in itertools.product((0, 1), repeat=N):
        mirror = tuple(1 - x for x in s)
        key = frozenset((s, mirror))
        classes.setdefault(key, s)
    hist = Counter(min(s.count(0), N - s.count(0)) for s in classes.values())
    return MicrostateSet(N, tuple(classes), dict(sorted(hist.items())))


def side_class_report(N: int) -> dict:
    """Class counts and class probabilities for the merged-sides engine.

    Class fractions count equivalence classes; microstate probabilities weight
    each class by its size over 2**N. For N = 3 these are (1/4, 3/4) and
    (2/8, 6/8).
    """
    merged = enumerate_indistinguishable_sides(N)
    n_classes = len(merged.states)
    counts = merged.histogram
    class_fraction = {k: Fraction(v, n_classes) for k, v in counts.items()}
    weight = Counter()
    for cls in merged.states:
        weight[min(next(iter(cls)).count(0), N - next(iter(cls)).count(0))] += len(cls)
    state_prob = {k: Fraction(weight[k], 2**N) for k in sorted(weight)}
    return {
        "classes": n_classes,
        "class_counts": counts,
        "class_fractions": class_fraction,
        "microstate_probabilities": state_prob,
    }


def set_partitions(items: list):
    """Yield every partition of `items` into non-empty blocks."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def count_set_partitions(n: int, k: int) -> int:
    return sum(1 for p in set_partitions(list(range(n))) if len(p) == k)


def partition_numbers(n_max: int) -> list[int]:
    """p(0..n_max) from Euler's pentagonal-number recurrence."""
    p = [1] + [0] * n_max
    for n in range(1, n_max + 1):
        total = 0
        for k in itertools.count(1):
            sign = 1 if k % 2 else -1
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            total += sign * p[n - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= n:
                total += sign * p[n - g2]
        p[n] = total
    return p


def grid_equilibrium(
    model: SpectrumModel, m: int, N: int, L: float, resolution: int = 1000
) -> float:
    """Ground-level force balance located by grid search plus golden-section refinement.

    The force comes from central differences of the level energies, so this is
    independent of the analytic derivative used by the bisection solver.
    """
    if not 0 < m < N:
        raise ValueError(f"need 0 < m < N, got m={m}, N={N}")
    if resolution < 1000:
        raise ValueError("resolution must be at least 1000")
    n0 = model.ground_index

    def energy(l):
        return m * level_energy(model, n0, l) + (N - m) * level_energy(model, n0, L - l)

    def abs_force(l):
        h = 1e-7 * min(l, L - l)
        return abs(energy(l + h) - energy(l - h)) / (2 * h)

    cell = L / resolution
    energies = [energy(cell * i) for i in range(1, resolution)]
    # centred differences on the grid itself: |force| at interior grid points
    slopes = [abs(energies[i + 1] - energies[i - 1]) for i in range(1, len(energies) - 1)]
    i_best = 1 + min(range(len(slopes)), key=slopes.__getitem__)
    a, b = cell * i_best, cell * (i_best + 2)
    inv_phi = (math.sqrt(5) - 1) / 2
    c, d = b - inv_phi * (b - a), a + inv_phi * (b - a)
    for _ in range(60):
        if abs_force(c) < abs_force(d):
            b = d
        else:
            a = c
        c, d = b - inv_phi * (b - a), a + inv_phi * (b - a)
    return (a + b) / 2
