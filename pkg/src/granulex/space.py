"""Universes, partitions and Pawlak approximation spaces.

Elements are addressed by their index in the universe (declaration order);
labels only matter at the I/O boundary. A subset of the universe is a plain
``int`` bitmask with bit ``i`` set iff element ``i`` belongs to it, which gives
fixed-width behaviour for small universes and grows without limit otherwise.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


class DomainError(ValueError):
    """Input lies outside the domain of an operation."""


class CapacityError(RuntimeError):
    """Requested computation exceeds a configured size limit."""


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Universe:
    """A finite, nonempty, ordered set of labelled elements."""

    labels: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        labels = tuple(str(label) for label in self.labels)
        if not labels:
            raise DomainError("a universe must contain at least one element")
        index = {label: i for i, label in enumerate(labels)}
        if len(index) != len(labels):
            dupes = sorted({label for label in labels if labels.count(label) > 1})
            raise DomainError(f"duplicate element labels: {dupes}")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_index", index)

    @classmethod
    def of_size(cls, n: int, start: int = 1) -> "Universe":
        """Universe labelled ``start, start+1, ...`` (as strings)."""
        return cls(tuple(str(i) for i in range(start, start + n)))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def __len__(self) -> int:
        return len(self.labels)

    def __contains__(self, label) -> bool:
        return str(label) in self._index

    def index(self, label) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise DomainError(f"element {label!r} is not in the universe") from None

    def subset(self, labels: Iterable) -> int:
        """Bitmask of the given element labels."""
        mask = 0
        for label in labels:
            mask |= 1 << self.index(label)
        return mask

    def labels_of(self, mask: int) -> list[str]:
        self.check_subset(mask)
        return [self.labels[i] for i in iter_bits(mask)]

    def check_subset(self, mask: int) -> int:
        if mask < 0 or mask >> self.n:
            raise DomainError(f"bitmask {mask:#x} has elements outside a universe of size {self.n}")
        return mask


@dataclass(frozen=True)
class Partition:
    """A partition of a universe into nonempty, pairwise disjoint blocks.

    ``blocks`` are bitmasks kept in canonical order: sorted by their smallest
    element index.
    """

    universe: Universe
    blocks: tuple[int, ...]
    block_of: tuple[int, ...] = field(init=False, repr=False, compare=False)
    block_sizes: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.universe.n
        blocks = tuple(int(b) for b in self.blocks)
        seen = 0
        for b in blocks:
            if b == 0:
                raise DomainError("partition blocks must be nonempty")
            self.universe.check_subset(b)
            if seen & b:
                raise DomainError("partition blocks overlap")
            seen |= b
        if seen != self.universe.full:
            missing = self.universe.labels_of(self.universe.full & ~seen)
            raise DomainError(f"partition does not cover elements {missing}")
        blocks = tuple(sorted(blocks, key=lambda b: (b & -b)))
        block_of = [0] * n
        for j, b in enumerate(blocks):
            for i in iter_bits(b):
                block_of[i] = j
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "block_of", tuple(block_of))
        object.__setattr__(self, "block_sizes", tuple(popcount(b) for b in blocks))

    @classmethod
    def from_labels(cls, universe: Universe, blocks: Iterable[Iterable]) -> "Partition":
        return cls(universe, tuple(universe.subset(block) for block in blocks))

    @classmethod
    def from_rgs(cls, universe: Universe, rgs: Sequence[int]) -> "Partition":
        """Build from a restricted growth string (block number per element)."""
        if len(rgs) != universe.n:
            raise DomainError("growth string length differs from universe size")
        masks = [0] * (max(rgs) + 1)
        for i, j in enumerate(rgs):
            masks[j] |= 1 << i
        return cls(universe, tuple(masks))

    @property
    def k(self) -> int:
        return len(self.blocks)

    @property
    def n(self) -> int:
        return self.universe.n

    def block_labels(self) -> list[list[str]]:
        return [self.universe.labels_of(b) for b in self.blocks]

    def rgs(self) -> tuple[int, ...]:
        return self.block_of

    def __str__(self):
        inner = ", ".join("{" + ",".join(b) + "}" for b in self.block_labels())
        return "{" + inner + "}"


@dataclass(frozen=True)
class ApproximationSpace:
    """A universe paired with a partition of it."""

    universe: Universe
    partition: Partition

    def __post_init__(self):
        if self.partition.universe != self.universe:
            raise DomainError("partition is defined over a different universe")

    @classmethod
    def from_blocks(cls, labels: Iterable, blocks: Iterable[Iterable]) -> "ApproximationSpace":
        universe = Universe(tuple(labels))
        return cls(universe, Partition.from_labels(universe, blocks))

    @property
    def n(self) -> int:
        return self.universe.n

    def as_sets(self) -> tuple[frozenset, frozenset]:
        """Order-free view: (element labels, set of blocks as label sets)."""
        blocks = frozenset(frozenset(b) for b in self.partition.block_labels())
        return frozenset(self.universe.labels), blocks

    def __str__(self):
        return "<{" + ",".join(self.universe.labels) + "}, " + str(self.partition) + ">"


class RoughPair(tuple):
    """(lower approximation, upper approximation) as bitmasks."""

    __slots__ = ()

    def __new__(cls, lower: int, upper: int):
        return tuple.__new__(cls, (lower, upper))

    @property
    def lower(self) -> int:
        return self[0]

    @property
    def upper(self) -> int:
        return self[1]

    def __repr__(self):
        return f"RoughPair(lower={self[0]:#x}, upper={self[1]:#x})"


def _block_hits(space: ApproximationSpace, x: int) -> dict[int, int]:
    space.universe.check_subset(x)
    block_of = space.partition.block_of
    hits: dict[int, int] = {}
    for i in iter_bits(x):
        j = block_of[i]
        hits[j] = hits.get(j, 0) + 1
    return hits


def lower_approx(space: ApproximationSpace, x: int) -> int:
    """Union of the blocks contained in ``x``."""
    part = space.partition
    lower = 0
    for j, h in _block_hits(space, x).items():
        if h == part.block_sizes[j]:
            lower |= part.blocks[j]
    return lower


def upper_approx(space: ApproximationSpace, x: int) -> int:
    """Union of the blocks that meet ``x``."""
    upper = 0
    for j in _block_hits(space, x):
        upper |= space.partition.blocks[j]
    return upper


def rough_pair(space: ApproximationSpace, x: int) -> RoughPair:
    part = space.partition
    lower = upper = 0
    for j, h in _block_hits(space, x).items():
        upper |= part.blocks[j]
        if h == part.block_sizes[j]:
            lower |= part.blocks[j]
    return RoughPair(lower, upper)


class Ordering(enum.Enum):
    STRICTLY_FINER = "strictly-finer"
    EQUAL = "equal"
    STRICTLY_COARSER = "strictly-coarser"
    INCOMPARABLE = "incomparable"


def _is_refinement(sigma: Partition, pi: Partition) -> bool:
    pi_blocks, pi_of = pi.blocks, pi.block_of
    for b in sigma.blocks:
        if b & pi_blocks[pi_of[(b & -b).bit_length() - 1]] != b:
            return False
    return True


def _same_universe(sigma: Partition, pi: Partition):
    if sigma.universe != pi.universe:
        raise DomainError("partitions are over different universes")


def refines_or_equal(sigma: Partition, pi: Partition) -> bool:
    """True iff every block of ``sigma`` lies inside some block of ``pi``."""
    _same_universe(sigma, pi)
    return _is_refinement(sigma, pi)


def refines(sigma: Partition, pi: Partition) -> Ordering:
    """Position of ``sigma`` relative to ``pi`` in the refinement order."""
    _same_universe(sigma, pi)
    if sigma.blocks == pi.blocks:
        return Ordering.EQUAL
    if _is_refinement(sigma, pi):
        return Ordering.STRICTLY_FINER
    if _is_refinement(pi, sigma):
        return Ordering.STRICTLY_COARSER
    return Ordering.INCOMPARABLE


def canonical_partitions(universe: Universe) -> tuple[Partition, Partition]:
    """Return (trivial one-block partition, discrete all-singleton partition)."""
    trivial = Partition(universe, (universe.full,))
    discrete = Partition(universe, tuple(1 << i for i in range(universe.n)))
    return trivial, discrete
