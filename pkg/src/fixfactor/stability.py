"""Invariant-neighborhood stability and its degree hierarchy.

A set is stable when it equals the intersection of its forward-invariant
neighborhoods; stable of degree d when it equals the class-closure of its
minimal open degree-d-saturated neighborhood; absolutely stable when it is
plainly stable and stable at every degree up to stabilization (beyond
which the test repeats verbatim because the partitions stop changing).
"""

from __future__ import annotations

from dataclasses import dataclass

from .decomposition import (
    DegreeTrace,
    Partition,
    min_saturated_open_mask,
    oracle_partition,
    sorb_closure_mask,
    stabilize,
)
from .errors import CoverError, OrdinalError, SizeLimitError
from .ordinals import OrdinalCNF
from .topology import FiniteSystem, PointSet, _iter_bits

PARTITION_SEARCH_BOUND = 6


@dataclass(frozen=True)
class StabilityReport:
    subject: PointSet
    stable_plain: bool
    stable_by_degree: tuple[tuple[OrdinalCNF, bool], ...]
    absolutely_stable: bool


def invariant_core_mask(sys: FiniteSystem, mask: int) -> int:
    """Intersection of all forward-invariant neighborhoods of the set.

    Every invariant neighborhood contains the minimal open superset, hence
    its forward orbit; the orbit of the minimal open superset is itself an
    invariant neighborhood, so the intersection collapses to it.
    """
    space = sys.space
    opened = 0
    for i in _iter_bits(mask):
        opened |= space.up[i]
    return sys.map.orbit_mask(opened)


def invariant_core(sys: FiniteSystem, m: PointSet) -> PointSet:
    if not m.mask:
        raise CoverError("stability is defined for nonempty sets")
    return PointSet(sys.space, invariant_core_mask(sys, m.mask))


def invariant_core_reference(sys: FiniteSystem, m: PointSet, bound: int = 12) -> PointSet:
    """Definition-direct core by enumerating invariant neighborhoods."""
    space = sys.space
    if space.n > bound:
        raise SizeLimitError(f"{space.n} points exceeds enumeration bound {bound}")
    acc = space.full_mask
    for cand in range(1 << space.n):
        if m.mask & ~space.interior_mask(cand):
            continue  # not a neighborhood of the whole set
        if sys.map.image_mask(cand) & ~cand:
            continue
        acc &= cand
    return PointSet(space, acc)


def is_stable_plain_mask(sys: FiniteSystem, mask: int) -> bool:
    return invariant_core_mask(sys, mask) == mask


def is_stable_plain(sys: FiniteSystem, m: PointSet) -> bool:
    return is_stable_plain_mask(sys, m.mask)


def stable_degree_value_mask(sys: FiniteSystem, p: Partition, mask: int) -> int:
    """Class-closure of the minimal open saturated neighborhood of the set."""
    return sorb_closure_mask(sys.space, p, min_saturated_open_mask(sys.space, p, mask))


def is_stable_degree(sys: FiniteSystem, m: PointSet, d: OrdinalCNF | int,
                     trace: DegreeTrace | None = None) -> bool:
    if not m.mask:
        raise CoverError("stability is defined for nonempty sets")
    if isinstance(d, int):
        d = OrdinalCNF.from_int(d)
    if trace is None:
        trace = stabilize(sys)
    if not d.is_finite():
        raise OrdinalError(f"degree {d} exceeds the finite-system range")
    if d > trace.stabilization_degree:
        raise OrdinalError(
            f"degree {d} exceeds stabilization degree "
            f"{trace.stabilization_degree}; the test is constant beyond it"
        )
    p = trace.partition_at(d.as_int())
    return stable_degree_value_mask(sys, p, m.mask) == m.mask


def is_absolutely_stable(sys: FiniteSystem, m: PointSet,
                         trace: DegreeTrace | None = None) -> bool:
    if not m.mask:
        raise CoverError("stability is defined for nonempty sets")
    if trace is None:
        trace = stabilize(sys)
    if not is_stable_plain(sys, m):
        return False
    stab = trace.stabilization_degree.as_int()
    for d in range(stab + 1):
        p = trace.partition_at(d)
        if stable_degree_value_mask(sys, p, m.mask) != m.mask:
            return False
    return True


def stability_report(sys: FiniteSystem, m: PointSet) -> StabilityReport:
    trace = stabilize(sys)
    plain = is_stable_plain(sys, m)
    by_degree = []
    for d in range(trace.stabilization_degree.as_int() + 1):
        p = trace.partition_at(d)
        by_degree.append((OrdinalCNF.from_int(d),
                          stable_degree_value_mask(sys, p, m.mask) == m.mask))
    absolute = plain and all(ok for _, ok in by_degree)
    return StabilityReport(m, plain, tuple(by_degree), absolute)


def _iter_partitions(n: int):
    """All set partitions of range(n) as restricted growth strings."""
    rgs = [0] * n

    def rec(i: int, maxid: int):
        if i == n:
            yield tuple(rgs)
            return
        for c in range(maxid + 2):
            rgs[i] = c
            yield from rec(i + 1, max(maxid, c))

    yield from rec(1, 0) if n > 1 else iter([(0,) * n])


def finest_abs_stable_partition(sys: FiniteSystem,
                                bound: int = PARTITION_SEARCH_BOUND) -> Partition:
    """Finest partition whose every class is absolutely stable.

    Enumerates restricted growth strings, rejecting a partition at its
    first non-stable class; class verdicts are memoized across candidates.
    """
    n = sys.n
    if n > bound:
        raise SizeLimitError(f"{n} points exceeds partition search bound {bound}")
    trace = stabilize(sys)
    verdict: dict[int, bool] = {}

    def class_ok(mask: int) -> bool:
        if mask not in verdict:
            verdict[mask] = is_absolutely_stable(sys, PointSet(sys.space, mask), trace)
        return verdict[mask]

    candidates: list[Partition] = []
    for rgs in _iter_partitions(n):
        masks: dict[int, int] = {}
        for i, c in enumerate(rgs):
            masks[c] = masks.get(c, 0) | 1 << i
        if all(class_ok(m) for m in masks.values()):
            candidates.append(Partition.from_class_of(sys.space, list(rgs)))
    if not candidates:
        raise AssertionError("no partition into absolutely stable classes exists")
    finest = [p for p in candidates if all(p.refines(q) for q in candidates)]
    if not finest:
        raise AssertionError(
            "absolutely stable partitions have no finest element"
        )
    return finest[0]


def finer_plain_stable_witness(sys: FiniteSystem,
                               bound: int = PARTITION_SEARCH_BOUND) -> Partition | None:
    """A partition into plainly stable sets strictly finer than the oracle
    partition, if any exists; None otherwise."""
    n = sys.n
    if n > bound:
        raise SizeLimitError(f"{n} points exceeds partition search bound {bound}")
    oracle = oracle_partition(sys)
    verdict: dict[int, bool] = {}

    def class_ok(mask: int) -> bool:
        if mask not in verdict:
            verdict[mask] = is_stable_plain_mask(sys, mask)
        return verdict[mask]

    for rgs in _iter_partitions(n):
        masks: dict[int, int] = {}
        for i, c in enumerate(rgs):
            masks[c] = masks.get(c, 0) | 1 << i
        cand = Partition.from_class_of(sys.space, list(rgs))
        if not cand.refines(oracle) or cand.same_blocks(oracle):
            continue
        if all(class_ok(m) for m in masks.values()):
            return cand
    return None
