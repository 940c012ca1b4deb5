import itertools
import math
import random

import pytest
from hypothesis import given, settings

from granulex import (
    ApproximationSpace,
    DomainError,
    Universe,
    block_coentropy,
    canonical_partitions,
    classical_coentropy,
    classical_entropy,
    extreme_values,
    measure_report,
    new_coentropy,
    new_entropy,
    refines_or_equal,
)
from granulex import measures
from granulex.verify import enumerate_partitions, random_partition

from conftest import make_space, oracle_measures, spaces

LOG3 = math.log2(3)


def space_of(p):
    return ApproximationSpace(p.universe, p)


def canon(n):
    trivial, discrete = canonical_partitions(Universe.of_size(n))
    return space_of(trivial), space_of(discrete)


class TestClassical:
    def test_entropy_values(self):
        assert classical_entropy(make_space("123", ["13", "2"]).partition) == pytest.approx(LOG3 - 2 / 3, abs=1e-12)
        assert classical_entropy(canon(5)[0].partition) == 0
        assert classical_entropy(canon(8)[1].partition) == 3

    def test_coentropy_values(self):
        assert classical_coentropy(make_space("123", ["12", "3"]).partition) == pytest.approx(2 / 3, abs=1e-12)
        assert classical_coentropy(make_space("12", ["12"]).partition) == 1
        assert classical_coentropy(canon(6)[1].partition) == 0

    @settings(max_examples=100, deadline=None)
    @given(spaces(max_n=30))
    def test_sum_is_log_n(self, space):
        p = space.partition
        assert abs(classical_entropy(p) + classical_coentropy(p) - math.log2(space.n)) <= 1e-12


class TestApproximationMeasures:
    def test_worked_example_entropy(self, example_space):
        assert new_entropy(example_space) == 3

    @pytest.mark.parametrize("n", [1, 2, 5, 9, 30])
    def test_discrete_is_maximal(self, n):
        s = canon(n)[1]
        assert new_entropy(s) == pytest.approx(n, abs=1e-12)
        assert new_coentropy(s) == 0

    def test_small_values(self):
        assert new_entropy(make_space("123", ["12", "3"])) == pytest.approx(5 / 2, abs=1e-12)
        assert new_coentropy(make_space("1234", ["124", "3"])) == pytest.approx(3 / 4 + 3 / 4 * LOG3, abs=1e-12)

    def test_two_pairs_coentropy_matches_oracle(self):
        # oracle over all 16 subsets
        _, g = oracle_measures("1234", ["12", "34"])
        assert g == 1.0
        assert new_coentropy(make_space("abcd", ["ab", "cd"])) == pytest.approx(g, abs=1e-12)

    @pytest.mark.parametrize("method", measures.METHODS)
    @pytest.mark.parametrize("n", range(1, 6))
    def test_methods_match_set_oracle(self, method, n):
        for p in enumerate_partitions(n):
            h, g = oracle_measures(p.universe.labels, p.block_labels())
            s = space_of(p)
            assert new_entropy(s, method=method) == pytest.approx(h, abs=1e-12)
            assert new_coentropy(s, method=method) == pytest.approx(g, abs=1e-12)

    def test_unknown_method(self, example_space):
        with pytest.raises(DomainError):
            new_entropy(example_space, method="nope")

    @settings(max_examples=100, deadline=None)
    @given(spaces(max_n=64))
    def test_sum_is_n(self, space):
        assert abs(new_entropy(space) + new_coentropy(space) - space.n) <= 1e-9

    @pytest.mark.parametrize("n", range(1, 9))
    def test_block_shortcut_against_bruteforce(self, n):
        for p in enumerate_partitions(n):
            s = space_of(p)
            assert abs(block_coentropy(p) - new_coentropy(s, method="bruteforce")) <= 1e-9

    def test_block_shortcut_large(self):
        rng = random.Random(7)
        for _ in range(50):
            s = space_of(random_partition(rng, rng.randint(20, 64)))
            assert new_coentropy(s, method="blocks") == pytest.approx(new_coentropy(s), abs=1e-9)


class TestMonotonicity:
    @pytest.mark.parametrize("n", range(2, 6))
    def test_strict_in_refinement(self, n):
        parts = [space_of(p) for p in enumerate_partitions(n)]
        for sigma, pi in itertools.permutations(parts, 2):
            if not refines_or_equal(sigma.partition, pi.partition):
                continue
            assert new_entropy(sigma) - new_entropy(pi) > 1e-9
            assert new_coentropy(pi) - new_coentropy(sigma) > 1e-9
            assert classical_entropy(sigma.partition) - classical_entropy(pi.partition) > 1e-9
            assert classical_coentropy(pi.partition) - classical_coentropy(sigma.partition) > 1e-9


class TestExtremes:
    def test_four(self):
        # frozen from the set oracle on the one-block partition of 4 elements
        h_min, h_max, g_min, g_max = extreme_values(4)
        assert h_min == pytest.approx(0.6685644431995964, abs=1e-12)
        assert (h_max, g_min) == (4, 0)
        assert g_max == pytest.approx(4 - 0.6685644431995964, abs=1e-12)

    def test_one(self):
        assert extreme_values(1) == (1, 1, 0, 0)

    def test_two(self):
        assert extreme_values(2)[0] == 1.5

    def test_invalid(self):
        with pytest.raises(DomainError):
            extreme_values(0)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_attained_by_canonical_partitions(self, n):
        trivial, discrete = canon(n)
        h_min, h_max, g_min, g_max = extreme_values(n)
        h_t, g_t = oracle_measures(trivial.universe.labels, trivial.partition.block_labels())
        assert h_min == pytest.approx(h_t, abs=1e-12) and g_max == pytest.approx(g_t, abs=1e-12)
        assert new_entropy(discrete) == pytest.approx(h_max, abs=1e-12)


class TestReport:
    def test_worked_example(self, example_space):
        rep = measure_report(example_space)
        assert (rep.h_new, rep.g_new, rep.h_classical, rep.g_classical, rep.m) == (3, 1, 1, 1, 9)

    def test_discrete_five(self):
        rep = measure_report(canon(5)[1])
        assert rep.h_new == pytest.approx(5, abs=1e-12)
        assert rep.g_new == 0 and rep.g_classical == 0

    def test_trivial_three(self):
        h, g = oracle_measures("123", ["123"])
        rep = measure_report(canon(3)[0])
        assert rep.h_new == pytest.approx(h, abs=1e-12)
        assert rep.g_new == pytest.approx(g, abs=1e-12)
        assert h == pytest.approx(3 - 6 / 8 * math.log2(6), abs=1e-12)

    @settings(max_examples=60, deadline=None)
    @given(spaces(max_n=40))
    def test_report_invariants(self, space):
        rep = measure_report(space)
        n = space.n
        assert abs(rep.h_classical + rep.g_classical - math.log2(n)) <= 1e-12
        assert abs(rep.h_new + rep.g_new - n) <= 1e-9
        assert -1e-12 <= rep.h_classical <= math.log2(n) + 1e-12
        assert -1e-12 <= rep.g_new <= extreme_values(n)[3] + 1e-9


def test_exact_terms(example_space):
    assert measures.exact_terms(example_space) == [(1, 0.0, 4), (2, 1.0, 4), (4, 2.0, 1)]


class TestFaultInjection:
    def test_natural_log_breaks_identity(self, example_space):
        with measures.inject_fault("natural-log"):
            total = new_entropy(example_space) + new_coentropy(example_space)
        assert total == pytest.approx(4 * math.log(2), abs=1e-12)
        assert new_entropy(example_space) + new_coentropy(example_space) == 4

    def test_unknown_fault(self):
        with pytest.raises(DomainError):
            with measures.inject_fault("bogus"):
                pass
