"""Exhaustive machine checks of the entropy/co-entropy theory on small universes.

Each check walks the complete quantifier domain of one claim (every partition,
every ordered refinement pair, every monomorphism) and collects concrete
witnesses for any violation.
"""

from __future__ import annotations

import contextlib
import itertools
import math
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from . import measures
from .classes import classify_bruteforce, classify_closed_form
from .measures import (
    block_coentropy,
    classical_coentropy,
    classical_entropy,
    extreme_values,
    new_coentropy,
    new_entropy,
)
from .morphisms import (
    MorphismKind,
    Relation,
    SpaceMap,
    classify_map,
    compare_coentropy,
    monomorphisms,
    multi_one_point_extension,
    one_point_extension,
)
from .space import (
    ApproximationSpace,
    DomainError,
    Partition,
    RoughPair,
    Universe,
    canonical_partitions,
    refines_or_equal,
)

MARGIN = 1e-9
TOLERANCE = 1e-9
MAX_ENUMERATION_N = 12
REFINEMENT_SWEEP_N = 7
BIJECTION_SWEEP_N = 5
MORPHISM_SOURCE_N = 5
MORPHISM_TARGET_N = 6
MAX_WITNESSES = 20


@dataclass
class TheoremReport:
    theorem: str
    claim: str
    instances: int = 0
    violations: list = field(default_factory=list)
    violation_count: int = 0
    elapsed: float = 0.0
    complete: bool = True

    @property
    def passed(self) -> bool:
        return self.violation_count == 0 and self.complete

    def record(self, **witness):
        self.violation_count += 1
        if len(self.violations) < MAX_WITNESSES:
            self.violations.append(witness)

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "theorem": self.theorem,
            "claim": self.claim,
            "passed": self.passed,
            "complete": self.complete,
            "instances": self.instances,
            "violation_count": self.violation_count,
            "violations": self.violations,
        }
        if timing:
            out["elapsed"] = round(self.elapsed, 3)
        return out


def enumerate_partitions(n: int, universe: Optional[Universe] = None) -> Iterator[Partition]:
    """All partitions of an ``n``-element universe via restricted growth strings.

    Strings ``a`` with ``a[0] = 0`` and ``a[i] <= 1 + max(a[:i])`` are produced
    in lexicographic order, so the stream is canonical. The default universe is
    labelled ``0 .. n-1``.
    """
    if not 1 <= n <= MAX_ENUMERATION_N:
        raise DomainError(f"partition enumeration supports 1 <= n <= {MAX_ENUMERATION_N}, got {n}")
    if universe is None:
        universe = Universe.of_size(n, start=0)
    elif universe.n != n:
        raise DomainError("universe size does not match n")
    rgs = [0] * n
    peak = [0] * n  # peak[i] = max(rgs[:i+1])
    while True:
        yield Partition.from_rgs(universe, rgs)
        i = n - 1
        while i > 0 and rgs[i] > peak[i - 1]:
            i -= 1
        if i == 0:
            return
        rgs[i] += 1
        peak[i] = max(peak[i - 1], rgs[i])
        for j in range(i + 1, n):
            rgs[j] = 0
            peak[j] = peak[i]


def bell_number(n: int) -> int:
    """Bell number from the Bell triangle."""
    row = [1]
    for _ in range(n - 1):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[-1]


def _spaces(n: int) -> list[ApproximationSpace]:
    return [ApproximationSpace(p.universe, p) for p in enumerate_partitions(n)]


def _rgs(space: ApproximationSpace) -> list[int]:
    return list(space.partition.rgs())


def random_partition(rng: random.Random, n: int) -> Partition:
    k = rng.randint(1, n)
    raw = [rng.randrange(k) for _ in range(n)]
    relabel: dict[int, int] = {}
    rgs = [relabel.setdefault(b, len(relabel)) for b in raw]
    return Partition.from_rgs(Universe.of_size(n), rgs)


class _Budget(Exception):
    pass


@contextlib.contextmanager
def _timed(report: TheoremReport, budget: Optional[int]):
    start = time.perf_counter()
    try:
        yield
    except _Budget:
        report.complete = False
    finally:
        report.elapsed = time.perf_counter() - start
        if budget is not None and report.instances > budget:
            report.complete = False


def _tick(report: TheoremReport, budget: Optional[int]):
    report.instances += 1
    if budget is not None and report.instances > budget:
        raise _Budget


def check_enumeration(n_max: int, budget=None) -> TheoremReport:
    rep = TheoremReport("enumeration", "partition stream yields each partition once; count = Bell(n)")
    with _timed(rep, budget):
        for n in range(1, min(n_max, 10) + 1):
            _tick(rep, budget)
            parts = [p.blocks for p in enumerate_partitions(n)]
            if len(parts) != bell_number(n) or len(set(parts)) != len(parts):
                rep.record(n=n, yielded=len(parts), distinct=len(set(parts)), bell=bell_number(n))
    return rep


def check_identities(n_max: int, budget=None) -> list[TheoremReport]:
    new = TheoremReport("entropy-sum-identity", "entropy + co-entropy = n (all partitions)")
    old = TheoremReport("classical-sum-identity", "H + G = log2 n (all partitions)")
    for rep, fn in ((new, _new_sum_gap), (old, _classical_sum_gap)):
        with _timed(rep, budget):
            for n in range(1, n_max + 1):
                for space in _spaces(n):
                    _tick(rep, budget)
                    gap = fn(space)
                    if abs(gap) > TOLERANCE:
                        rep.record(n=n, partition=_rgs(space), gap=gap)
    return [new, old]


def _new_sum_gap(space: ApproximationSpace) -> float:
    return new_entropy(space) + new_coentropy(space) - space.n


def _classical_sum_gap(space: ApproximationSpace) -> float:
    p = space.partition
    return classical_entropy(p) + classical_coentropy(p) - math.log2(space.n)


def check_random_identities(count: int = 1000, n_max: int = 64, seed: int = 0, budget=None) -> TheoremReport:
    """Both sum identities on seeded random partitions, closed-form path."""
    rep = TheoremReport(
        "random-sum-identities", f"both sum identities on {count} random partitions with n <= {n_max}"
    )
    rng = random.Random(seed)
    with _timed(rep, budget):
        for _ in range(count):
            _tick(rep, budget)
            p = random_partition(rng, rng.randint(1, n_max))
            space = ApproximationSpace(p.universe, p)
            new_gap, old_gap = _new_sum_gap(space), _classical_sum_gap(space)
            if abs(new_gap) > TOLERANCE or abs(old_gap) > TOLERANCE:
                rep.record(n=p.n, block_sizes=list(p.block_sizes), new_gap=new_gap, classical_gap=old_gap)
    return rep


def check_closed_form(n_max: int, budget=None) -> list[TheoremReport]:
    oracle = TheoremReport("closed-form-oracle", "block-state classes equal brute-force classes exactly")
    shortcut = TheoremReport("block-coentropy-oracle", "per-block co-entropy sum equals co-entropy of brute-force profile")
    with _timed(oracle, budget):
        for n in range(1, n_max + 1):
            for space in _spaces(n):
                _tick(oracle, budget)
                brute = classify_bruteforce(space)
                if not classify_closed_form(space).same_classes(brute):
                    oracle.record(n=n, partition=_rgs(space))
                    continue
                _tick(shortcut, None)
                via_profile = new_coentropy(space, method="bruteforce")
                gap = block_coentropy(space.partition) - via_profile
                if abs(gap) > TOLERANCE:
                    shortcut.record(n=n, partition=_rgs(space), gap=gap)
    shortcut.elapsed = oracle.elapsed
    shortcut.complete = oracle.complete
    return [oracle, shortcut]


_MONOTONE = (
    ("entropy-strictly-antitone", "finer partition => strictly larger entropy", new_entropy, -1),
    ("coentropy-strictly-monotone", "finer partition => strictly smaller co-entropy", new_coentropy, +1),
    ("classical-entropy-strictly-antitone", "finer partition => strictly larger H",
     lambda s: classical_entropy(s.partition), -1),
    ("classical-coentropy-strictly-monotone", "finer partition => strictly smaller G",
     lambda s: classical_coentropy(s.partition), +1),
)


def check_refinement_monotonicity(n_max: int, margin: float = MARGIN, budget=None) -> list[TheoremReport]:
    """Every ordered pair sigma < pi over all partitions of each n."""
    reports = [TheoremReport(tid, claim) for tid, claim, _, _ in _MONOTONE]
    start = time.perf_counter()
    try:
        for n in range(1, min(n_max, REFINEMENT_SWEEP_N) + 1):
            spaces = _spaces(n)
            values = [[fn(s) for s in spaces] for _, _, fn, _ in _MONOTONE]
            for a, sigma in enumerate(spaces):
                for b, pi in enumerate(spaces):
                    if a == b or not refines_or_equal(sigma.partition, pi.partition):
                        continue
                    for rep, vals, (_, _, _, sign) in zip(reports, values, _MONOTONE):
                        _tick(rep, budget)
                        # sign=+1: coarser pi must be larger; sign=-1: smaller.
                        # gaps under 10x the margin are too close to call
                        gap = sign * (vals[b] - vals[a])
                        if gap < 10 * margin:
                            rep.record(n=n, finer=_rgs(sigma), coarser=_rgs(pi), gap=gap)
    except _Budget:
        for rep in reports:
            rep.complete = False
    elapsed = time.perf_counter() - start
    for rep in reports:
        rep.elapsed = elapsed
    return reports


def check_extremes(n_max: int, margin: float = MARGIN, budget=None) -> TheoremReport:
    rep = TheoremReport(
        "extreme-values",
        "entropy max n only at discrete, min n - ((2^n-2)/2^n)log2(2^n-2) only at trivial; co-entropy mirrored",
    )
    with _timed(rep, budget):
        for n in range(1, min(n_max, REFINEMENT_SWEEP_N) + 1):
            h_min, h_max, g_min, g_max = extreme_values(n)
            trivial, discrete = canonical_partitions(Universe.of_size(n, start=0))
            for space in _spaces(n):
                _tick(rep, budget)
                h, g = new_entropy(space), new_coentropy(space)
                p = space.partition
                if p == discrete and (abs(h - h_max) > TOLERANCE or abs(g - g_min) > TOLERANCE):
                    rep.record(n=n, partition=_rgs(space), which="discrete", h=h, g=g)
                if p == trivial and (abs(h - h_min) > TOLERANCE or abs(g - g_max) > TOLERANCE):
                    rep.record(n=n, partition=_rgs(space), which="trivial", h=h, g=g)
                if p != discrete and not h < h_max - margin:
                    rep.record(n=n, partition=_rgs(space), which="max attained elsewhere", h=h)
                if p != trivial and not h > h_min + margin:
                    rep.record(n=n, partition=_rgs(space), which="min attained elsewhere", h=h)
    return rep


def check_bijective_monomorphisms(n_max: int, margin: float = MARGIN, budget=None) -> list[TheoremReport]:
    """Same-size spaces: monomorphism => weak order, strict => strict, iso => equal."""
    h_rep = TheoremReport("monomorphism-entropy", "same-size monomorphism: entropy(source) >= entropy(target), strict if strict, equal if iso")
    g_rep = TheoremReport("monomorphism-coentropy", "same-size monomorphism: co-entropy(source) <= co-entropy(target), strict if strict, equal if iso")
    start = time.perf_counter()
    try:
        for n in range(1, min(n_max, BIJECTION_SWEEP_N) + 1):
            spaces = _spaces(n)
            h_vals = [new_entropy(s) for s in spaces]
            g_vals = [new_coentropy(s) for s in spaces]
            perms = list(itertools.permutations(range(n)))
            for a, src in enumerate(spaces):
                for b, dst in enumerate(spaces):
                    for perm in perms:
                        kind = classify_map(SpaceMap(src, dst, perm))
                        if not kind.is_monomorphism:
                            continue
                        for rep, drop in ((h_rep, h_vals[a] - h_vals[b]), (g_rep, g_vals[b] - g_vals[a])):
                            _tick(rep, budget)
                            if kind is MorphismKind.ISOMORPHISM:
                                bad = abs(drop) > TOLERANCE
                            elif kind is MorphismKind.STRICT_MONOMORPHISM:
                                bad = drop <= margin
                            else:
                                bad = drop < -TOLERANCE
                            if bad:
                                rep.record(n=n, source=_rgs(src), target=_rgs(dst), map=list(perm),
                                           kind=kind.value, gap=drop)
    except _Budget:
        h_rep.complete = g_rep.complete = False
    h_rep.elapsed = g_rep.elapsed = time.perf_counter() - start
    return [h_rep, g_rep]


def check_one_point_extension(n_max: int, budget=None) -> TheoremReport:
    rep = TheoremReport(
        "one-point-extension",
        "adding a singleton point keeps co-entropy; classes are the old ones with and without the point",
    )
    with _timed(rep, budget):
        for n in range(1, n_max + 1):
            for space in _spaces(n):
                _tick(rep, budget)
                ext = one_point_extension(space, str(n))
                gap = new_coentropy(ext) - new_coentropy(space)
                if abs(gap) > TOLERANCE:
                    rep.record(n=n, partition=_rgs(space), gap=gap)
                point = 1 << n
                expected = {}
                for cls in classify_bruteforce(space).classes:
                    expected[cls.pair] = cls.count
                    expected[RoughPair(cls.lower | point, cls.upper | point)] = cls.count
                if classify_bruteforce(ext).as_dict() != expected:
                    rep.record(n=n, partition=_rgs(space), issue="class relation differs")
    return rep


def check_multi_extension(n_max: int, max_points: int = 3, budget=None) -> TheoremReport:
    rep = TheoremReport("multi-one-point-extension", f"adding up to {max_points} singleton points keeps co-entropy")
    with _timed(rep, budget):
        for n in range(1, n_max + 1):
            for space in _spaces(n):
                base = new_coentropy(space)
                for extra in range(1, max_points + 1):
                    _tick(rep, budget)
                    ext = multi_one_point_extension(space, [f"new{i}" for i in range(extra)])
                    gap = new_coentropy(ext) - base
                    if abs(gap) > TOLERANCE:
                        rep.record(n=n, partition=_rgs(space), points=extra, gap=gap)
    return rep


def check_cross_universe(
    source_max: int = MORPHISM_SOURCE_N, target_max: int = MORPHISM_TARGET_N, margin: float = MARGIN, budget=None
) -> TheoremReport:
    """Structural verdict of compare_coentropy against the numeric gap, for
    every monomorphism between every pair of spaces within the size caps."""
    rep = TheoremReport(
        "cross-universe-comparison",
        f"co-entropy equal iff target is the padded image, strictly larger otherwise (|U|<={source_max}, |V|<={target_max})",
    )
    with _timed(rep, budget):
        for u in range(1, source_max + 1):
            sources = _spaces(u)
            for v in range(u, target_max + 1):
                targets = _spaces(v)
                for src in sources:
                    for dst in targets:
                        for fmap in monomorphisms(src, dst):
                            _tick(rep, budget)
                            verdict = compare_coentropy(fmap, validate=False)
                            gap = verdict.g_target - verdict.g_source
                            if abs(gap) <= TOLERANCE:
                                numeric = Relation.EQUAL
                            elif gap > margin:
                                numeric = Relation.STRICTLY_LESS
                            else:
                                numeric = None
                            if numeric is not verdict.relation:
                                rep.record(source=_rgs(src), target=_rgs(dst), map=list(fmap.assignment),
                                           structural=verdict.relation.value, gap=gap)
    return rep


def _space(labels: str, blocks: list[str]) -> ApproximationSpace:
    return ApproximationSpace.from_blocks(labels, [list(b) for b in blocks])


# (what, function, space, expected)
_LOG3 = math.log2(3)
WORKED_VALUES = [
    ("H", "1", ["1"], 0.0),
    ("H", "12", ["1", "2"], 1.0),
    ("H", "123", ["13", "2"], _LOG3 - 2 / 3),
    ("G", "1", ["1"], 0.0),
    ("G", "12", ["12"], 1.0),
    ("G", "123", ["12", "3"], 2 / 3),
    ("entropy", "12", ["12"], 3 / 2),
    ("entropy", "123", ["12", "3"], 5 / 2),
    ("entropy", "1234", ["124", "3"], 13 / 4 - 3 / 4 * _LOG3),
    ("coentropy", "1", ["1"], 0.0),
    ("coentropy", "12", ["1", "2"], 0.0),
    ("coentropy", "123", ["13", "2"], 0.5),
    ("coentropy", "12", ["12"], 0.5),
    ("coentropy", "123", ["12", "3"], 0.5),
    ("coentropy", "1234", ["124", "3"], 3 / 4 + 3 / 4 * _LOG3),
    ("coentropy", "abc", ["ab", "c"], 0.5),
    ("coentropy", "abcd", ["ab", "c", "d"], 0.5),
    ("coentropy", "abcd", ["ab", "cd"], 1.0),
    ("entropy", "1234", ["12", "34"], 3.0),
]

_MEASURES: dict[str, Callable[[ApproximationSpace], float]] = {
    "H": lambda s: classical_entropy(s.partition),
    "G": lambda s: classical_coentropy(s.partition),
    "entropy": new_entropy,
    "coentropy": new_coentropy,
}


def check_worked_values(tolerance: float = 1e-12) -> TheoremReport:
    rep = TheoremReport("worked-values", "reference values of small worked examples reproduce")
    with _timed(rep, None):
        for what, labels, blocks, expected in WORKED_VALUES:
            rep.instances += 1
            got = _MEASURES[what](_space(labels, blocks))
            if abs(got - expected) > tolerance:
                rep.record(measure=what, universe=labels, blocks=blocks, expected=expected, got=got)
    return rep


def verify_all(
    n_max: int = 7, margin: float = MARGIN, fault: Optional[str] = None, budget: Optional[int] = None
) -> list[TheoremReport]:
    """Run every check; sweeps are capped at the sizes documented above.

    ``fault`` injects a named mutation (see :data:`measures.FAULTS`) to prove
    the checks can fail; it is meant for tests only.
    """
    if not 1 <= n_max <= 8:
        raise DomainError("verify_all supports 1 <= n_max <= 8")
    ctx = measures.inject_fault(fault) if fault else contextlib.nullcontext()
    with ctx:
        reports = [check_enumeration(n_max, budget)]
        reports += check_identities(n_max, budget)
        reports.append(check_random_identities(budget=budget))
        reports += check_closed_form(n_max, budget)
        reports += check_refinement_monotonicity(n_max, margin, budget)
        reports.append(check_extremes(n_max, margin, budget))
        reports += check_bijective_monomorphisms(n_max, margin, budget)
        reports.append(check_one_point_extension(n_max, budget))
        reports.append(check_multi_extension(n_max, budget=budget))
        reports.append(
            check_cross_universe(min(n_max, MORPHISM_SOURCE_N), min(n_max, MORPHISM_TARGET_N), margin, budget)
        )
        reports.append(check_worked_values())
    return reports
