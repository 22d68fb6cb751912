import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from szilard import combinatorics as comb
from szilard import oracle


def brute_count(N, m):
    return sum(1 for s in itertools.product((0, 1), repeat=N) if s.count(0) == m)


class TestMultiplicity:
    def test_values(self):
        assert comb.multiplicity(3, 1) == 3
        assert comb.multiplicity(7, 0) == 1
        assert comb.multiplicity(5, 2) == brute_count(5, 2) == 10

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            comb.multiplicity(3, 4)

    def test_large_exact(self):
        assert comb.multiplicity(10**4, 1) == 10**4
        assert comb.multiplicity(10**4, 2) == 10**4 * 9999 // 2


class TestDistinguishable:
    def test_three_particles(self):
        table = [comb.f_distinguishable(3, m) for m in range(4)]
        assert table == [Fraction(1, 8), Fraction(3, 8), Fraction(3, 8), Fraction(1, 8)]

    def test_single_particle(self):
        assert comb.f_distinguishable(1, 0) == Fraction(1, 2)

    def test_four_particles_vs_enumeration(self):
        assert comb.f_distinguishable(4, 2) == Fraction(brute_count(4, 2), 16) == Fraction(6, 16)

    @pytest.mark.parametrize("N", range(1, 65))
    def test_exact_normalization(self, N):
        probs = [comb.f_distinguishable(N, m) for m in range(N + 1)]
        assert sum(probs) == 1
        assert probs == probs[::-1]

    def test_float_path_normalized(self):
        N = 500
        assert math.fsum(comb.f_distinguishable(N, m) for m in range(N + 1)) == pytest.approx(1, abs=1e-12)


class TestEquilibrium:
    def test_three_particles(self):
        assert comb.f_equilibrium_distinguishable(3, 1) == Fraction(4, 9)
        assert comb.f_equilibrium_distinguishable(3, 2) == Fraction(4, 9)
        assert comb.f_equilibrium_distinguishable(3, 0) == 1
        assert comb.f_equilibrium_distinguishable(3, 3) == 1

    def test_four_particles(self):
        assert comb.f_equilibrium_distinguishable(4, 2) == 6 * Fraction(1, 2) ** 4 == Fraction(3, 8)

    def test_float_path_matches_exact(self):
        N = 80
        for m in (0, 1, 7, 40, 80):
            x = Fraction(m, N)
            exact = math.comb(N, m) * x**m * (1 - x) ** (N - m)
            assert comb.f_equilibrium_distinguishable(N, m) == pytest.approx(float(exact), rel=1e-11)


class TestBiased:
    def test_unbiased_reduction(self):
        for N in range(1, 12):
            for m in range(N + 1):
                assert comb.f_biased(N, m, 0) == comb.f_distinguishable(N, m)

    def test_value(self):
        assert comb.f_biased(3, 1, 0.1) == pytest.approx(3 * 0.6 * 0.16, rel=1e-14)
        assert comb.f_biased(3, 1, Fraction(1, 10)) == Fraction(288, 1000)

    @pytest.mark.parametrize("r", [Fraction(1, 10), Fraction(-3, 8), 0.2, -0.49])
    def test_normalized(self, r):
        for N in (1, 5, 30, 200):
            total = sum(comb.f_biased(N, m, r) for m in range(N + 1))
            assert float(total) == pytest.approx(1, abs=1e-12)

    @given(N=st.integers(1, 40), r=st.floats(-0.49, 0.49), data=st.data())
    def test_mirror(self, N, r, data):
        m = data.draw(st.integers(0, N))
        assert comb.f_biased(N, m, r) == pytest.approx(comb.f_biased(N, N - m, -r), rel=1e-12)

    @pytest.mark.parametrize("r", [0.5, -0.5, 0.7])
    def test_bias_range(self, r):
        with pytest.raises(ValueError):
            comb.f_biased(3, 1, r)


class TestGaussian:
    def test_peak(self):
        assert comb.f_gaussian_approx(50, 0) == 1

    def test_n100(self):
        exact_ratio = math.comb(100, 55) / math.comb(100, 50)
        approx = comb.f_gaussian_approx(100, 5)
        assert approx == pytest.approx(math.exp(-0.5), rel=1e-14)
        assert approx == pytest.approx(exact_ratio, rel=0.10)

    def test_n10000(self):
        exact_ratio = math.exp(
            math.log(math.comb(10**4, 5050)) - math.log(math.comb(10**4, 5000))
        )
        assert comb.f_gaussian_approx(10**4, 50) == pytest.approx(exact_ratio, rel=0.01)

    def test_convergence(self):
        def max_error(N):
            half = N // 2
            ref = math.log(math.comb(N, half))
            return max(
                abs(math.exp(math.log(math.comb(N, half + k)) - ref) - comb.f_gaussian_approx(N, k))
                for k in range(-math.isqrt(N), math.isqrt(N) + 1)
            )

        errors = [max_error(N) for N in (10**2, 10**3, 10**4)]
        assert errors[0] > errors[1] > errors[2]


def test_indistinguishable_lowT():
    assert all(comb.f_indistinguishable_lowT(3, m) == Fraction(1, 4) for m in range(4))
    assert comb.f_indistinguishable_lowT(1, 0) == Fraction(1, 2)
    assert comb.f_indistinguishable_lowT(9, 4) == Fraction(1, 10)


class TestStirling:
    def test_values(self):
        assert comb.stirling2(3, 2) == 3
        assert comb.stirling2(4, 2) == oracle.count_set_partitions(4, 2) == 7
        assert comb.stirling2(0, 0) == 1
        assert all(comb.stirling2(n, 1) == 1 for n in range(1, 20))

    def test_recurrence(self):
        for n in range(1, 26):
            for k in range(1, n + 1):
                assert comb.stirling2(n, k) == k * comb.stirling2(n - 1, k) + comb.stirling2(n - 1, k - 1)

    @pytest.mark.parametrize("n", range(0, 11))
    def test_against_set_partitions(self, n):
        for k in range(n + 1):
            assert comb.stirling2(n, k) == oracle.count_set_partitions(n, k)

    def test_omega(self):
        assert comb.omega_indistinguishable_partitions(3) == 4
        assert comb.omega_indistinguishable_partitions(1) == 1
        assert comb.omega_indistinguishable_partitions(4) == 8


class TestIntegerPartitions:
    def test_small(self):
        assert comb.integer_partitions(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
        assert comb.integer_partitions(1) == [(1,)]

    def test_twenty(self):
        parts = comb.integer_partitions(20)
        assert len(parts) == 627
        assert (6, 4, 4, 3, 2, 1) in parts
        assert (7, 3, 3, 3, 2, 1, 1) in parts
        assert (10, 4, 4, 1, 1) in parts

    @pytest.mark.parametrize("N", [1, 2, 7, 13, 25])
    def test_canonical(self, N):
        parts = comb.integer_partitions(N)
        assert len(set(parts)) == len(parts)
        for p in parts:
            assert sum(p) == N
            assert list(p) == sorted(p, reverse=True)
            assert min(p) >= 1

    def test_counts_match_pentagonal(self):
        p = oracle.partition_numbers(40)
        for N in range(1, 41):
            assert sum(1 for _ in comb.iter_partitions(N)) == p[N]

    @pytest.mark.parametrize("N", [0, 121, -3])
    def test_capacity(self, N):
        with pytest.raises(comb.CapacityError):
            comb.integer_partitions(N)


class TestTables:
    def test_measured_invariants(self):
        t = comb.distinguishable_table(3)
        assert t.exact and len(t) == 4 and sum(t.probs) == 1

    def test_float_above_limit(self):
        t = comb.distinguishable_table(65)
        assert not t.exact
        assert math.fsum(t.probs) == pytest.approx(1, abs=1e-12)

    def test_equilibrium_not_normalized(self):
        t = comb.equilibrium_table(3)
        assert t.kind is comb.TableKind.EQUILIBRIUM
        assert sum(t.probs) > 1

    def test_bad_tables(self):
        with pytest.raises(ValueError):
            comb.table_from([0.5, 0.4])
        with pytest.raises(ValueError):
            comb.table_from([1.2, -0.2])
        with pytest.raises(ValueError):
            comb.ProbabilityTable(2, (Fraction(1, 2), Fraction(1, 2)))
