import json

import pytest

from granulex import DomainError, verify
from granulex.verify import bell_number, enumerate_partitions, verify_all

from conftest import bell_triangle, recursive_partitions


@pytest.mark.parametrize("n,count", [(1, 1), (3, 5), (4, 15)])
def test_small_counts(n, count):
    # oracle: recursive block insertion
    assert sum(1 for _ in recursive_partitions(range(n))) == count
    assert sum(1 for _ in enumerate_partitions(n)) == count


def test_single_element():
    (p,) = enumerate_partitions(1)
    assert p.block_labels() == [["0"]]


@pytest.mark.parametrize("n", range(1, 11))
def test_bell_counts(n):
    parts = [p.blocks for p in enumerate_partitions(n)]
    assert len(parts) == len(set(parts)) == bell_triangle(n)
    assert bell_number(n) == bell_triangle(n)


@pytest.mark.parametrize("n", range(1, 7))
def test_same_set_as_recursive_oracle(n):
    ours = {frozenset(frozenset(b) for b in p.block_labels()) for p in enumerate_partitions(n)}
    theirs = {frozenset(frozenset(str(x) for x in b) for b in part) for part in recursive_partitions(range(n))}
    assert ours == theirs


def test_canonical_order():
    rgs = [p.rgs() for p in enumerate_partitions(5)]
    assert rgs == sorted(rgs)


@pytest.mark.parametrize("n", [0, 13])
def test_range(n):
    with pytest.raises(DomainError):
        next(enumerate_partitions(n))


def test_verify_n_max_4_all_pass():
    reports = verify_all(4)
    assert reports and all(r.passed for r in reports), [r.to_dict() for r in reports if not r.passed]
    assert all(r.instances > 0 for r in reports)


def test_verify_degenerate():
    assert all(r.passed for r in verify_all(1))


def test_verify_range():
    with pytest.raises(DomainError):
        verify_all(9)


def test_natural_log_fault_is_caught():
    reports = {r.theorem: r for r in verify_all(3, fault="natural-log")}
    assert not reports["entropy-sum-identity"].passed
    assert not reports["classical-sum-identity"].passed
    assert not reports["random-sum-identities"].passed
    # fault is undone afterwards
    assert all(r.passed for r in verify_all(3))


def test_reports_deterministic():
    a = json.dumps([r.to_dict() for r in verify_all(3)])
    b = json.dumps([r.to_dict() for r in verify_all(3)])
    assert a == b


def test_budget_marks_incomplete():
    rep = verify.check_multi_extension(4, budget=5)
    assert not rep.complete and not rep.passed


def test_witnesses_capped():
    rep = verify.TheoremReport("x", "y")
    for i in range(100):
        rep.record(i=i)
    assert rep.violation_count == 100 and len(rep.violations) == verify.MAX_WITNESSES
