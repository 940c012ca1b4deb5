"""Shared fixtures and independent oracles.

The oracles here work on Python sets of labels, never on the package's
bitmasks, so they do not share code paths with the implementation.
"""

import itertools
import math
from collections import Counter

import pytest
from hypothesis import strategies as st

from granulex import ApproximationSpace, Partition, Universe

# ---------------------------------------------------------------- oracles


def powerset(elements):
    elements = list(elements)
    for r in range(len(elements) + 1):
        for combo in itertools.combinations(elements, r):
            yield frozenset(combo)


def oracle_pair(blocks, x):
    lower = frozenset().union(*[b for b in blocks if b <= x])
    upper = frozenset().union(*[b for b in blocks if b & x])
    return lower, upper


def oracle_profile(universe, blocks):
    """{(lower, upper) as label frozensets: count} over every subset."""
    blocks = [frozenset(b) for b in blocks]
    return Counter(oracle_pair(blocks, x) for x in powerset(universe))


def oracle_measures(universe, blocks):
    """(entropy, co-entropy) straight from the definitions."""
    counts = oracle_profile(universe, blocks).values()
    total = 2 ** len(universe)
    h = -sum(r / total * math.log2(r / total) for r in counts)
    g = sum(r / total * math.log2(r) for r in counts)
    return h, g


def recursive_partitions(elements):
    """Set partitions by inserting the first element into each block of the
    partitions of the rest (or into a new block)."""
    elements = list(elements)
    if not elements:
        yield []
        return
    first, rest = elements[0], elements[1:]
    for part in recursive_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]


def bell_triangle(n):
    row = [1]
    for _ in range(n - 1):
        new = [row[-1]]
        for x in row:
            new.append(new[-1] + x)
        row = new
    return row[-1]


# --------------------------------------------------------------- fixtures


def make_space(labels, blocks):
    return ApproximationSpace.from_blocks(list(labels), [list(b) for b in blocks])


@pytest.fixture
def example_space():
    """Four elements in two blocks of two."""
    return make_space("1234", ["12", "34"])


# ------------------------------------------------------------- strategies


@st.composite
def growth_strings(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    rgs = [0]
    for _ in range(n - 1):
        rgs.append(draw(st.integers(0, max(rgs) + 1)))
    return rgs


def space_from_rgs(rgs):
    universe = Universe.of_size(len(rgs))
    p = Partition.from_rgs(universe, rgs)
    return ApproximationSpace(universe, p)


@st.composite
def spaces(draw, min_n=1, max_n=8):
    return space_from_rgs(draw(growth_strings(min_n, max_n)))


# ---------------------------------------------------- acceptance reporting

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, text = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _CRITERIA[number] = (text, report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        text, outcome = _CRITERIA[number]
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}  {text}")
