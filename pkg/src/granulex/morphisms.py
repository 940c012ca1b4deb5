"""Structure-preserving maps between approximation spaces.

A map ``f: U -> V`` from ``<U, pi>`` to ``<V, sigma>`` is a homomorphism when
the image of every block of ``pi`` sits inside a single block of ``sigma``.
Injective homomorphisms (monomorphisms) are what the co-entropy comparison
works with: the co-entropy can only grow along a monomorphism, and it stays
put exactly when ``sigma`` is the image of ``pi`` padded with singletons.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterator, Mapping, Optional, Sequence

from .measures import new_coentropy
from .space import ApproximationSpace, DomainError, Partition, Universe, iter_bits

TOLERANCE = 1e-9


class PreconditionError(DomainError):
    """Operation called on an input that violates its precondition."""


class VerificationError(AssertionError):
    """A structural verdict disagrees with the numeric co-entropies."""


class MorphismKind(enum.Enum):
    NOT_HOMOMORPHISM = "NotHomomorphism"
    HOMOMORPHISM = "Homomorphism"
    MONOMORPHISM = "Monomorphism"
    STRICT_MONOMORPHISM = "StrictMonomorphism"
    ISOMORPHISM = "Isomorphism"

    @property
    def is_monomorphism(self) -> bool:
        return self in (MorphismKind.MONOMORPHISM, MorphismKind.STRICT_MONOMORPHISM, MorphismKind.ISOMORPHISM)


@dataclass(frozen=True)
class SpaceMap:
    """A total function between the universes of two spaces.

    ``assignment[i]`` is the target index of source element ``i``.
    """

    source: ApproximationSpace
    target: ApproximationSpace
    assignment: tuple[int, ...]

    def __post_init__(self):
        if len(self.assignment) != self.source.n:
            raise DomainError("assignment must cover every source element")
        if any(not 0 <= t < self.target.n for t in self.assignment):
            raise DomainError("assignment maps outside the target universe")

    @classmethod
    def from_labels(cls, source: ApproximationSpace, target: ApproximationSpace, pairs: Mapping) -> "SpaceMap":
        assignment = [None] * source.n
        for src, dst in pairs.items():
            assignment[source.universe.index(src)] = target.universe.index(dst)
        missing = [source.universe.labels[i] for i, t in enumerate(assignment) if t is None]
        if missing:
            raise DomainError(f"map leaves source elements unassigned: {missing}")
        return cls(source, target, tuple(assignment))

    @classmethod
    def parse(cls, source: ApproximationSpace, target: ApproximationSpace, text: str) -> "SpaceMap":
        """Parse ``"1:a,2:b"``."""
        pairs = {}
        for item in filter(None, (part.strip() for part in text.split(","))):
            src, sep, dst = item.partition(":")
            if not sep:
                raise DomainError(f"malformed map entry {item!r}; expected 'src:dst'")
            if src.strip() in pairs:
                raise DomainError(f"source element {src.strip()!r} mapped twice")
            pairs[src.strip()] = dst.strip()
        return cls.from_labels(source, target, pairs)

    def image(self, mask: int) -> int:
        out = 0
        for i in iter_bits(mask):
            out |= 1 << self.assignment[i]
        return out

    def image_blocks(self) -> list[int]:
        return [self.image(b) for b in self.source.partition.blocks]

    def as_labels(self) -> dict[str, str]:
        src, dst = self.source.universe.labels, self.target.universe.labels
        return {src[i]: dst[t] for i, t in enumerate(self.assignment)}

    def __str__(self):
        return ",".join(f"{a}:{b}" for a, b in self.as_labels().items())


def _inside_one_block(mask: int, partition: Partition) -> Optional[int]:
    """The block of ``partition`` containing ``mask``, or None."""
    block = partition.blocks[partition.block_of[(mask & -mask).bit_length() - 1]]
    return block if mask & block == mask else None


def _is_homomorphism(images: Sequence[int], target: Partition) -> bool:
    return all(_inside_one_block(img, target) is not None for img in images)


def classify_map(fmap: SpaceMap) -> MorphismKind:
    """Most specific kind of ``fmap``."""
    target = fmap.target.partition
    images = fmap.image_blocks()
    containers = [_inside_one_block(img, target) for img in images]
    if any(c is None for c in containers):
        return MorphismKind.NOT_HOMOMORPHISM
    if len(set(fmap.assignment)) != len(fmap.assignment):
        return MorphismKind.HOMOMORPHISM
    proper = any(img != c for img, c in zip(images, containers))
    if fmap.target.n > fmap.source.n or proper:
        return MorphismKind.STRICT_MONOMORPHISM
    # bijective with every image equal to its block, so the images are exactly
    # the target blocks and the inverse is a homomorphism too
    return MorphismKind.ISOMORPHISM


def one_point_extension(space: ApproximationSpace, label) -> ApproximationSpace:
    """Add ``label`` as a new element forming its own block."""
    label = str(label)
    if label in space.universe:
        raise DomainError(f"element {label!r} already belongs to the universe")
    universe = Universe(space.universe.labels + (label,))
    blocks = space.partition.blocks + (1 << space.n,)
    return ApproximationSpace(universe, Partition(universe, blocks))


def multi_one_point_extension(space: ApproximationSpace, labels: Sequence) -> ApproximationSpace:
    labels = [str(label) for label in labels]
    if len(set(labels)) != len(labels):
        raise DomainError("extension labels must be pairwise distinct")
    for label in labels:
        space = one_point_extension(space, label)
    return space


class Relation(enum.Enum):
    EQUAL = "Equal"
    STRICTLY_LESS = "StrictlyLess"


@dataclass(frozen=True)
class ComparisonVerdict:
    relation: Relation
    witness: str
    g_source: float
    g_target: float


def padded_image(fmap: SpaceMap) -> Partition:
    """Image of the source partition plus a singleton for every unreached target element."""
    images = fmap.image_blocks()
    reached = 0
    for img in images:
        reached |= img
    singles = [1 << i for i in iter_bits(fmap.target.universe.full & ~reached)]
    return Partition(fmap.target.universe, tuple(images + singles))


def compare_coentropy(fmap: SpaceMap, validate: bool = True) -> ComparisonVerdict:
    """Compare co-entropies of source and target along a monomorphism.

    Equal exactly when the target partition is the padded image of the source
    partition, i.e. the target is (a relabelling of) the source, possibly after
    adding singleton points. Otherwise the target has strictly larger
    co-entropy. With ``validate`` the structural verdict is checked against the
    numeric values and a mismatch raises :class:`VerificationError`.
    """
    kind = classify_map(fmap)
    if not kind.is_monomorphism:
        raise PreconditionError(f"compare_coentropy needs a monomorphism, got {kind.value}")

    padded = padded_image(fmap)
    target = fmap.target.partition
    extra = fmap.target.n - fmap.source.n
    if padded.blocks == target.blocks:
        relation = Relation.EQUAL
        if extra:
            witness = f"target is isomorphic to the source extended by {extra} singleton point(s)"
        else:
            witness = "map is an isomorphism"
    else:
        relation = Relation.STRICTLY_LESS
        merged = sum(1 for b in target.blocks if _inside_one_block(b, padded) is None)
        witness = (
            f"padded image strictly refines the target: {padded.k} blocks vs {target.k}, "
            f"{merged} target block(s) merge image blocks"
        )

    g_source = new_coentropy(fmap.source)
    g_target = new_coentropy(fmap.target)
    if validate:
        gap = g_target - g_source
        if relation is Relation.EQUAL and abs(gap) > TOLERANCE:
            raise VerificationError(f"{fmap}: structural Equal but co-entropies differ by {gap!r}")
        if relation is Relation.STRICTLY_LESS and gap <= TOLERANCE:
            raise VerificationError(f"{fmap}: structural StrictlyLess but gap is only {gap!r}")
    return ComparisonVerdict(relation, witness, g_source, g_target)


def monomorphisms(source: ApproximationSpace, target: ApproximationSpace) -> Iterator[SpaceMap]:
    """Every monomorphism from ``source`` to ``target``, in lexicographic
    order of the assignment tuple."""
    src, dst = source.partition, target.partition
    n, v = source.n, target.n
    if n > v:
        return
    assignment = [0] * n
    used = [False] * v
    # target block each source block is committed to, once its first element lands
    committed: dict[int, int] = {}

    def extend(i: int) -> Iterator[SpaceMap]:
        if i == n:
            yield SpaceMap(source, target, tuple(assignment))
            return
        sb = src.block_of[i]
        for t in range(v):
            if used[t]:
                continue
            tb = dst.block_of[t]
            fresh = sb not in committed
            if not fresh and committed[sb] != tb:
                continue
            used[t] = True
            assignment[i] = t
            if fresh:
                committed[sb] = tb
            yield from extend(i + 1)
            if fresh:
                del committed[sb]
            used[t] = False

    yield from extend(0)


def embeddable(source: ApproximationSpace, target: ApproximationSpace) -> Optional[SpaceMap]:
    """Find a monomorphism from ``source`` into ``target``, if any.

    Backtracks over which target block receives each source block (largest
    source blocks first) subject to remaining capacity, then fills each target
    block with its lowest free elements. The result is deterministic.
    """
    src, dst = source.partition, target.partition
    order = sorted(range(src.k), key=lambda j: (-src.block_sizes[j], j))
    room = list(dst.block_sizes)
    choice = [0] * src.k

    def place(pos: int) -> bool:
        if pos == len(order):
            return True
        j = order[pos]
        for t in range(dst.k):
            if room[t] >= src.block_sizes[j]:
                room[t] -= src.block_sizes[j]
                choice[j] = t
                if place(pos + 1):
                    return True
                room[t] += src.block_sizes[j]
        return False

    if source.n > target.n or not place(0):
        return None
    free = [list(iter_bits(b)) for b in dst.blocks]
    assignment = [0] * source.n
    for j in range(src.k):
        for i in iter_bits(src.blocks[j]):
            assignment[i] = free[choice[j]].pop(0)
    return SpaceMap(source, target, tuple(assignment))


def embeds_strictly(source: ApproximationSpace, target: ApproximationSpace) -> bool:
    """``source`` maps strictly monomorphically into a strictly larger ``target``."""
    return target.n > source.n and embeddable(source, target) is not None
