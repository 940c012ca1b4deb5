"""Approximation classes of a space and the distribution they induce.

Every subset ``X`` of the universe has a rough pair (lower, upper). Grouping
the ``2**n`` subsets by rough pair gives the classes; class ``i`` holds
``r_i`` subsets and occurs with probability ``r_i / 2**n`` when subsets are
drawn uniformly.

Two routes compute the same profile:

* :func:`classify_bruteforce` walks all ``2**n`` subsets.
* :func:`classify_closed_form` uses the fact that ``X`` meets each block in
  exactly one of three ways (misses it, covers it, or cuts it properly) and that
  the choices are independent across blocks. A block of size ``s`` contributes
  one way to miss, one way to cover and ``2**s - 2`` ways to cut.
"""

from __future__ import annotations

import enum
import itertools
import math
import os
from collections import Counter
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .space import ApproximationSpace, CapacityError, RoughPair

DEFAULT_BRUTE_CUTOFF = 24
# int64 keys pack (lower, upper) side by side
_HARD_BRUTE_LIMIT = 31
MEMBERS_LIMIT = 16
_CHUNK = 1 << 20
DEFAULT_CLASS_LIMIT = 1 << 22


class BlockState(enum.Enum):
    EMPTY = "empty"
    FULL = "full"
    PARTIAL = "partial"


@dataclass(frozen=True)
class ApproximationClass:
    pair: RoughPair
    count: int
    members: Optional[tuple[int, ...]] = None

    @property
    def lower(self) -> int:
        return self.pair[0]

    @property
    def upper(self) -> int:
        return self.pair[1]


@dataclass(frozen=True)
class ClassProfile:
    classes: tuple[ApproximationClass, ...]
    n: int

    @property
    def m(self) -> int:
        return len(self.classes)

    def counts(self) -> list[int]:
        return [c.count for c in self.classes]

    def as_dict(self) -> dict[RoughPair, int]:
        return {c.pair: c.count for c in self.classes}

    def same_classes(self, other: "ClassProfile") -> bool:
        """Class-for-class, count-for-count equality (members ignored)."""
        return self.n == other.n and [(c.pair, c.count) for c in self.classes] == [
            (c.pair, c.count) for c in other.classes
        ]


@dataclass(frozen=True)
class Distribution:
    probabilities: tuple[float, ...]

    def __len__(self):
        return len(self.probabilities)


def brute_cutoff() -> int:
    """Brute-force size limit, overridable through ``GRANULEX_BRUTE_CUTOFF``."""
    raw = os.environ.get("GRANULEX_BRUTE_CUTOFF")
    if raw is None or raw == "":
        return DEFAULT_BRUTE_CUTOFF
    try:
        return int(raw)
    except ValueError:
        raise CapacityError(f"GRANULEX_BRUTE_CUTOFF must be an integer, got {raw!r}") from None


def classify_bruteforce(
    space: ApproximationSpace, cutoff: Optional[int] = None, members: bool = False
) -> ClassProfile:
    """Group all ``2**n`` subsets by their rough pair.

    Classes come back sorted by (lower bitmask, upper bitmask). ``members``
    materializes the subsets of each class and is only allowed for
    ``n <= 16``.
    """
    n = space.n
    limit = brute_cutoff() if cutoff is None else cutoff
    limit = min(limit, _HARD_BRUTE_LIMIT)
    if n > limit:
        raise CapacityError(
            f"brute-force enumeration is capped at n={limit} (got n={n}); "
            "use the closed-form classifier instead"
        )
    if members and n > MEMBERS_LIMIT:
        raise CapacityError(f"class members are only materialized for n <= {MEMBERS_LIMIT}")

    if members:
        return _bruteforce_with_members(space)

    totals: Counter = Counter()
    for start in range(0, 1 << n, _CHUNK):
        xs = np.arange(start, min(start + _CHUNK, 1 << n), dtype=np.int64)
        keys, counts = np.unique(_pair_keys(space, xs), return_counts=True)
        totals.update(dict(zip(keys.tolist(), counts.tolist())))
    mask = (1 << n) - 1
    classes = tuple(
        ApproximationClass(RoughPair(key >> n, key & mask), count) for key, count in sorted(totals.items())
    )
    return ClassProfile(classes, n)


def _pair_keys(space: ApproximationSpace, xs: np.ndarray) -> np.ndarray:
    lower = np.zeros_like(xs)
    upper = np.zeros_like(xs)
    for block in space.partition.blocks:
        meet = xs & block
        lower |= np.where(meet == block, block, 0)
        upper |= np.where(meet != 0, block, 0)
    # sorting these keys orders classes by (lower, upper)
    return (lower << space.n) | upper


def _bruteforce_with_members(space: ApproximationSpace) -> ClassProfile:
    n = space.n
    xs = np.arange(1 << n, dtype=np.int64)
    keys, inverse, counts = np.unique(_pair_keys(space, xs), return_inverse=True, return_counts=True)
    order = np.argsort(inverse, kind="stable")
    groups = np.split(xs[order], np.cumsum(counts)[:-1])
    mask = (1 << n) - 1
    classes = tuple(
        ApproximationClass(RoughPair(key >> n, key & mask), int(counts[i]), tuple(groups[i].tolist()))
        for i, key in enumerate(keys.tolist())
    )
    return ClassProfile(classes, n)


def class_count(space: ApproximationSpace) -> int:
    """Number of distinct rough pairs: 3 per block of size >= 2, else 2."""
    return math.prod(3 if s >= 2 else 2 for s in space.partition.block_sizes)


def _states_for(size: int) -> tuple[BlockState, ...]:
    if size >= 2:
        return (BlockState.EMPTY, BlockState.FULL, BlockState.PARTIAL)
    return (BlockState.EMPTY, BlockState.FULL)


def classify_closed_form(space: ApproximationSpace, limit: Optional[int] = DEFAULT_CLASS_LIMIT) -> ClassProfile:
    """Enumerate classes through per-block states instead of subsets.

    Counts are exact Python integers, so this works for any ``n``; the class
    list itself has up to ``3**k`` entries, guarded by ``limit``.
    """
    part = space.partition
    m = class_count(space)
    if limit is not None and m > limit:
        raise CapacityError(f"{m} classes exceed the limit of {limit}; use count_spectrum()")

    classes = []
    options = [_states_for(s) for s in part.block_sizes]
    for states in itertools.product(*options):
        lower = upper = 0
        count = 1
        for block, size, state in zip(part.blocks, part.block_sizes, states):
            if state is BlockState.FULL:
                lower |= block
                upper |= block
            elif state is BlockState.PARTIAL:
                upper |= block
                count *= (1 << size) - 2
        classes.append(ApproximationClass(RoughPair(lower, upper), count))
    classes.sort(key=lambda c: c.pair)
    return ClassProfile(tuple(classes), space.n)


def count_spectrum(space: ApproximationSpace) -> dict[int, int]:
    """Map each class size ``r`` to how many classes have that size.

    This is the closed-form profile with the class identities forgotten, built
    without listing classes: blocks of equal size are grouped, and choosing
    ``j`` of ``c`` such blocks to be cut gives ``C(c, j) * 2**(c - j)``
    classes of size ``(2**s - 2)**j``.
    """
    spectrum = {1: 1}
    for size, c in sorted(Counter(space.partition.block_sizes).items()):
        if size == 1:
            factor = {1: 1 << c}
        else:
            cut = (1 << size) - 2
            factor = {cut**j: math.comb(c, j) << (c - j) for j in range(c + 1)}
        merged: dict[int, int] = {}
        for r1, k1 in spectrum.items():
            for r2, k2 in factor.items():
                r = r1 * r2
                merged[r] = merged.get(r, 0) + k1 * k2
        spectrum = merged
    return dict(sorted(spectrum.items()))


def distribution(profile: ClassProfile) -> Distribution:
    """Probabilities ``r_i / 2**n`` aligned with ``profile.classes``."""
    total = 1 << profile.n
    # int / int is correctly rounded and cannot overflow for any n
    return Distribution(tuple(c.count / total for c in profile.classes))
