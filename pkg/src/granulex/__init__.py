"""Rough-set approximation spaces with entropy and co-entropy measures."""

from .classes import (
    ApproximationClass,
    BlockState,
    ClassProfile,
    Distribution,
    class_count,
    classify_bruteforce,
    classify_closed_form,
    count_spectrum,
    distribution,
)
from .measures import (
    MeasureReport,
    block_coentropy,
    classical_coentropy,
    classical_entropy,
    extreme_values,
    measure_report,
    new_coentropy,
    new_entropy,
)
from .morphisms import (
    ComparisonVerdict,
    MorphismKind,
    Relation,
    SpaceMap,
    classify_map,
    compare_coentropy,
    embeddable,
    monomorphisms,
    multi_one_point_extension,
    one_point_extension,
)
from .space import (
    ApproximationSpace,
    CapacityError,
    DomainError,
    Ordering,
    Partition,
    RoughPair,
    Universe,
    canonical_partitions,
    lower_approx,
    refines,
    refines_or_equal,
    rough_pair,
    upper_approx,
)

__version__ = "0.1.0"
