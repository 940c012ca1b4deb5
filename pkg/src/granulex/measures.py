"""Entropy and co-entropy of approximation spaces, in bits.

Two pairs of measures live here:

* the block-size measures ``H`` and ``G`` (``H + G = log2 n``), which only see
  the sizes of the blocks;
* the approximation measures, computed from the distribution of rough pairs
  over all subsets (``entropy + coentropy = n``).

Throughout, ``0 * log 0`` is taken to be ``0``.
"""

from __future__ import annotations

import contextlib
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator

from .classes import (
    ClassProfile,
    class_count,
    classify_bruteforce,
    classify_closed_form,
    count_spectrum,
)
from .space import ApproximationSpace, DomainError, Partition, Universe

_log2: Callable[[float], float] = math.log2

FAULTS = {"natural-log": math.log}

METHODS = ("closed-form", "bruteforce", "classes", "blocks")


@contextlib.contextmanager
def inject_fault(name: str) -> Iterator[None]:
    """Temporarily replace the base-2 logarithm (test-only mutation hook)."""
    global _log2
    try:
        replacement = FAULTS[name]
    except KeyError:
        raise DomainError(f"unknown fault {name!r}; known: {sorted(FAULTS)}") from None
    saved = _log2
    _log2 = replacement
    try:
        yield
    finally:
        _log2 = saved


def classical_entropy(partition: Partition) -> float:
    n = partition.n
    return -sum((s / n) * _log2(s / n) for s in partition.block_sizes)


def classical_coentropy(partition: Partition) -> float:
    n = partition.n
    return sum((s / n) * _log2(s) for s in partition.block_sizes)


def _entropy_terms(spectrum: dict[int, int], n: int) -> tuple[float, float]:
    """(entropy, coentropy) of a distribution given as {r: multiplicity}."""
    total = 1 << n
    log_total = _log2(total)
    h = g = 0.0
    for r, mult in spectrum.items():
        p = r / total
        log_r = _log2(r)
        h -= mult * p * (log_r - log_total)
        g += mult * p * log_r
    return h, g


@lru_cache(maxsize=4096)
def _spectrum_measures(sizes: tuple[int, ...], log_fn) -> tuple[float, float]:
    # depends only on the multiset of block sizes; log_fn keys the cache per fault
    universe = Universe.of_size(sum(sizes))
    blocks, start = [], 0
    for s in sizes:
        blocks.append(((1 << s) - 1) << start)
        start += s
    space = ApproximationSpace(universe, Partition(universe, tuple(blocks)))
    return _entropy_terms(count_spectrum(space), space.n)


def _profile_spectrum(profile: ClassProfile) -> dict[int, int]:
    spectrum: dict[int, int] = {}
    for c in profile.classes:
        spectrum[c.count] = spectrum.get(c.count, 0) + 1
    return spectrum


def block_coentropy(partition: Partition) -> float:
    """Per-block shortcut for the approximation co-entropy.

    Because the rough-pair distribution factors over blocks, the co-entropy is
    a sum of one term per block of size ``s``:
    ``((2**s - 2) / 2**s) * log2(2**s - 2)``. Only trust this after the oracle
    tests against the brute-force profile have passed.
    """
    total = 0.0
    for s in partition.block_sizes:
        if s >= 2:
            cut = (1 << s) - 2
            total += (cut / (1 << s)) * _log2(cut)
    return total


def _measures(space: ApproximationSpace, method: str) -> tuple[float, float]:
    if method == "closed-form":
        return _spectrum_measures(tuple(sorted(space.partition.block_sizes)), _log2)
    if method == "bruteforce":
        return _entropy_terms(_profile_spectrum(classify_bruteforce(space)), space.n)
    if method == "classes":
        return _entropy_terms(_profile_spectrum(classify_closed_form(space)), space.n)
    if method == "blocks":
        g = block_coentropy(space.partition)
        return space.n - g, g
    raise DomainError(f"unknown method {method!r}; expected one of {METHODS}")


def new_entropy(space: ApproximationSpace, method: str = "closed-form") -> float:
    """Shannon entropy of the rough-pair distribution of ``space``."""
    return _measures(space, method)[0]


def new_coentropy(space: ApproximationSpace, method: str = "closed-form") -> float:
    """Expected ``log2 r`` over the rough-pair distribution of ``space``."""
    return _measures(space, method)[1]


def extreme_values(n: int) -> tuple[float, float, float, float]:
    """(min entropy, max entropy, min co-entropy, max co-entropy) over all
    partitions of an ``n``-element universe.

    The minimum entropy is reached by the one-block partition. For ``n == 1``
    the ``2**n - 2`` class is empty and contributes nothing.
    """
    if n < 1:
        raise DomainError("n must be positive")
    cut = (1 << n) - 2
    g_max = (cut / (1 << n)) * _log2(cut) if cut else 0.0
    return n - g_max, float(n), 0.0, g_max


@dataclass(frozen=True)
class MeasureReport:
    n: int
    m: int
    h_classical: float
    g_classical: float
    h_new: float
    g_new: float


def measure_report(space: ApproximationSpace, method: str = "closed-form") -> MeasureReport:
    h, g = _measures(space, method)
    return MeasureReport(
        n=space.n,
        m=class_count(space),
        h_classical=classical_entropy(space.partition),
        g_classical=classical_coentropy(space.partition),
        h_new=h,
        g_new=g,
    )


def exact_terms(space: ApproximationSpace) -> list[tuple[int, float, int]]:
    """(r, log2 r, number of classes with that r), ascending in r."""
    return [(r, _log2(r), mult) for r, mult in count_spectrum(space).items()]
