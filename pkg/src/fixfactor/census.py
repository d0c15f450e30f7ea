"""Exhaustive enumeration of small finite systems and verification runs.

Preorders are enumerated recursively: a preorder on n points is the
induced preorder on the first n-1 points plus a consistent up/down profile
for the last point.  Each preorder is paired with every monotone self-map.
The census then replays the named theorem-level checks over every system
and reports pass/fail counts with replayable counterexamples.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .decomposition import (
    aorb0_mask,
    aorb_succ_mask,
    oracle_partition,
    prolongation_D1,
    prolongation_D2,
    prolongation_reference,
    quotient,
    reference_intersection,
    stabilize,
)
from .errors import SizeLimitError, UnknownNameError
from .stability import (
    finer_plain_stable_witness,
    finest_abs_stable_partition,
    invariant_core_mask,
    is_absolutely_stable,
    is_stable_plain_mask,
    stable_degree_value_mask,
)
from .topology import (
    FiniteSpace,
    FiniteSystem,
    PointSet,
    SelfMap,
    _iter_bits,
    is_discrete,
    space_from_up_masks,
)

LABELED_LIMIT = 5
ISO_LIMIT = 6
SUBSET_SEED = 20260809

_POINT_NAMES = "abcdefgh"


def _preorder_up_masks(n: int) -> Iterator[tuple[int, ...]]:
    """All reflexive transitive up-mask vectors on n points.

    A preorder on n points decomposes uniquely into its restriction to the
    first n-1 points plus a consistent profile (S_up, S_dn) for the last
    point, where S_up = {y : x <= y} must be up-closed, S_dn = {y : y <= x}
    down-closed, and every pair through x already related.
    """
    if n == 0:
        yield ()
        return
    x = n - 1
    bit = 1 << x
    for base in _preorder_up_masks(n - 1):
        dn = [0] * (n - 1)
        for y in range(n - 1):
            for z in _iter_bits(base[y]):
                dn[z] |= 1 << y
        up_closed = [s for s in range(1 << (n - 1))
                     if all(base[y] & ~s == 0 for y in _iter_bits(s))]
        dn_closed = [s for s in range(1 << (n - 1))
                     if all(dn[z] & ~s == 0 for z in _iter_bits(s))]
        for s_up in up_closed:
            for s_dn in dn_closed:
                if any(s_up & ~base[y] for y in _iter_bits(s_dn)):
                    continue
                up = list(base) + [s_up | bit]
                for y in _iter_bits(s_dn):
                    up[y] |= bit
                yield tuple(up)


def enumerate_preorders(n: int) -> Iterator[FiniteSpace]:
    names = tuple(_POINT_NAMES[:n])
    for up in _preorder_up_masks(n):
        yield space_from_up_masks(names, list(up))


def count_preorders_bruteforce(n: int) -> int:
    """Independent counter: filter all reflexive relations for transitivity."""
    if n > 3:
        raise SizeLimitError("brute-force counter is for n <= 3")
    offdiag = [(i, j) for i in range(n) for j in range(n) if i != j]
    count = 0
    for bits in range(1 << len(offdiag)):
        up = [1 << i for i in range(n)]
        for k, (i, j) in enumerate(offdiag):
            if bits >> k & 1:
                up[i] |= 1 << j
        ok = True
        for i in range(n):
            for j in _iter_bits(up[i]):
                if up[j] & ~up[i]:
                    ok = False
                    break
            if not ok:
                break
        count += ok
    return count


def monotone_maps(space: FiniteSpace) -> Iterator[SelfMap]:
    """All continuous self-maps, by backtracking in point order."""
    n = space.n
    img = [0] * n

    def ok(i: int) -> bool:
        for j in range(i + 1):
            if space.up[i] >> j & 1 and not space.up[img[i]] >> img[j] & 1:
                return False
            if space.up[j] >> i & 1 and not space.up[img[j]] >> img[i] & 1:
                return False
        return True

    def rec(i: int) -> Iterator[SelfMap]:
        if i == n:
            yield SelfMap(space, tuple(img))
            return
        for v in range(n):
            img[i] = v
            if ok(i):
                yield from rec(i + 1)

    yield from rec(0)


def canonical_form(space: FiniteSpace, m: SelfMap) -> tuple:
    """Minimum relation-and-map encoding over all point permutations."""
    n = space.n
    best = None
    for perm in itertools.permutations(range(n)):
        rel = tuple(
            tuple(space.up[perm.index(i)] >> perm.index(j) & 1 for j in range(n))
            for i in range(n)
        )
        mp = tuple(perm[m.img[perm.index(i)]] for i in range(n))
        key = (rel, mp)
        if best is None or key < best:
            best = key
    return best


def enumerate_systems(n: int, up_to_iso: bool = False) -> Iterator[FiniteSystem]:
    if n > (ISO_LIMIT if up_to_iso else LABELED_LIMIT):
        raise SizeLimitError(
            f"n={n} exceeds the enumeration limit "
            f"({'iso ' + str(ISO_LIMIT) if up_to_iso else 'labeled ' + str(LABELED_LIMIT)})"
        )
    seen: set[tuple] = set()
    for space in enumerate_preorders(n):
        for m in monotone_maps(space):
            if up_to_iso:
                key = canonical_form(space, m)
                if key in seen:
                    continue
                seen.add(key)
            yield FiniteSystem(space, m)


def random_systems(n: int, count: int, seed: int = SUBSET_SEED) -> list[FiniteSystem]:
    """Deterministic pseudo-random systems (for spot checks beyond census size)."""
    rng = random.Random(seed)
    names = tuple(_POINT_NAMES[:n])
    out = []
    while len(out) < count:
        up = [1 << i for i in range(n)]
        for _ in range(rng.randrange(0, 2 * n)):
            i, j = rng.randrange(n), rng.randrange(n)
            up[i] |= 1 << j
        space = space_from_up_masks(names, up)
        maps = []
        for m in monotone_maps(space):
            maps.append(m)
            if len(maps) >= 64:
                break
        out.append(FiniteSystem(space, rng.choice(maps)))
    return out


def system_payload(sys: FiniteSystem) -> dict:
    return {
        "points": list(sys.space.points),
        "specializes": [[x, y] for x, y in sys.space.specialization_pairs()],
        "map": {p: sys.map(p) for p in sys.space.points},
    }


@dataclass
class CheckOutcome:
    name: str
    passed: int = 0
    failed: int = 0
    counterexamples: list[dict] = field(default_factory=list)


@dataclass
class CensusReport:
    points: int
    num_topologies: int
    num_systems: int
    checks: dict[str, CheckOutcome]
    stabilization_histogram: dict[int, int]
    ergodic_count: int
    finer_plain_stable_witnesses: list[dict]

    def all_passed(self) -> bool:
        return all(c.failed == 0 for c in self.checks.values())

    def to_json(self) -> dict:
        return {
            "points": self.points,
            "num_topologies": self.num_topologies,
            "num_systems": self.num_systems,
            "checks": {
                name: {
                    "passed": c.passed,
                    "failed": c.failed,
                    "counterexamples": c.counterexamples[:5],
                }
                for name, c in sorted(self.checks.items())
            },
            "stabilization_histogram": {
                str(k): v for k, v in sorted(self.stabilization_histogram.items())
            },
            "ergodic_count": self.ergodic_count,
            "finer_plain_stable_witnesses": self.finer_plain_stable_witnesses[:10],
        }


def _all_nonempty_submasks(full: int) -> Iterator[int]:
    for m in range(1, full + 1):
        yield m


def check_oracle_equivalence(sys: FiniteSystem) -> str | None:
    trace = stabilize(sys)
    if not trace.stationary_partition.same_blocks(oracle_partition(sys)):
        return "stationary partition differs from the level-set oracle"
    return None


def check_quotient_discrete(sys: FiniteSystem) -> str | None:
    trace = stabilize(sys)
    q = quotient(sys, trace.stationary_partition)
    if not is_discrete(q.quotient.space):
        return "quotient by the stationary partition is not discrete"
    if not trace.stationary_partition.same_blocks(oracle_partition(sys)):
        return "stationary classes are not the maximal level sets"
    return None


def check_stabilization_zero(sys: FiniteSystem) -> str | None:
    trace = stabilize(sys)
    if trace.stabilization_degree.as_int() != 0:
        return f"stabilized at degree {trace.stabilization_degree}"
    return None


def check_definition_direct(sys: FiniteSystem) -> str | None:
    trace = stabilize(sys)
    p = trace.stationary_partition
    for x in sys.space.points:
        if aorb0_mask(sys, sys.space.idx(x)) != reference_intersection(sys, "base", x).mask:
            return f"aorb0({x}) differs from the definition-direct intersection"
        direct = reference_intersection(sys, "succ", x, p).mask
        if aorb_succ_mask(sys, p, sys.space.idx(x)) != direct:
            return f"aorb_succ({x}) differs from the definition-direct intersection"
    return None


def check_trace_monotone(sys: FiniteSystem) -> str | None:
    trace = stabilize(sys)
    for (d1, p1), (d2, p2) in zip(trace.entries, trace.entries[1:]):
        if not (d1 < d2):
            return "trace degrees are not strictly increasing"
        if not p1.refines(p2):
            return f"partition at {d1} does not refine partition at {d2}"
    return None


def check_level_set_refinement(sys: FiniteSystem) -> str | None:
    oracle = oracle_partition(sys)
    trace = stabilize(sys)
    for _, p in trace.entries:
        if not p.refines(oracle):
            return "a trace partition does not refine the level-set oracle"
    return None


def check_class_invariance(sys: FiniteSystem) -> str | None:
    trace = stabilize(sys)
    for _, p in trace.entries:
        for m in p.classes:
            if sys.map.image_mask(m) & ~m:
                return f"class {sys.space.names(m)} is not forward-invariant"
    return None


def check_saturation_equivalences(sys: FiniteSystem, samples: int = 8) -> str | None:
    trace = stabilize(sys)
    p = trace.stationary_partition
    rng = random.Random(SUBSET_SEED + sys.n)
    full = sys.space.full_mask
    for _ in range(samples):
        s = rng.randrange(1, full + 1)
        sat = p.saturate_mask(s)
        a = sat & ~s == 0        # classes(S) subset of S
        b = sat == s             # classes(S) == S
        c = p.is_saturated_mask(s)  # S is a union of classes
        if not (a == b == c):
            return f"saturation equivalences fail on {sys.space.names(s)}"
    return None


def check_quotient_neighborhood(sys: FiniteSystem) -> str | None:
    """At stationarity, pulling back the intersection of closed neighborhoods
    of a class in the quotient gives the successor-degree orbit."""
    trace = stabilize(sys)
    p = trace.stationary_partition
    q = quotient(sys, p)
    qspace = q.quotient.space
    for x in sys.space.points:
        cls = q.projection[x]
        i = qspace.idx(cls)
        acc = qspace.full_mask
        for cand in range(1 << qspace.n):
            if cand & qspace.up[i] != qspace.up[i]:
                continue
            if not qspace.is_closed_mask(cand):
                continue
            acc &= cand
        pulled = 0
        for j in _iter_bits(acc):
            name = qspace.points[j]
            for orig in sys.space.points:
                if q.projection[orig] == name:
                    pulled |= 1 << sys.space.idx(orig)
        if pulled != aorb_succ_mask(sys, p, sys.space.idx(x)):
            return f"quotient-neighborhood identity fails at {x}"
    return None


def check_prolongations(sys: FiniteSystem) -> str | None:
    for x in sys.space.points:
        d1 = prolongation_D1(sys, x).mask
        if d1 != aorb0_mask(sys, sys.space.idx(x)):
            return f"D1({x}) != aorb0({x})"
        if prolongation_D2(sys, x).mask != d1:
            return f"D2({x}) != D1({x})"
        if prolongation_reference(sys, "D1", x).mask != d1:
            return f"definition-direct D1({x}) differs"
        if prolongation_reference(sys, "D2", x).mask != d1:
            return f"definition-direct D2({x}) differs"
    return None


def check_oracle_classes_absolutely_stable(sys: FiniteSystem) -> str | None:
    trace = stabilize(sys)
    for m in oracle_partition(sys).classes:
        if not is_absolutely_stable(sys, PointSet(sys.space, m), trace):
            return f"oracle class {sys.space.names(m)} is not absolutely stable"
    return None


def check_finest_abs_stable(sys: FiniteSystem) -> str | None:
    finest = finest_abs_stable_partition(sys)
    if not finest.same_blocks(oracle_partition(sys)):
        return "finest absolutely-stable partition differs from the oracle"
    return None


def check_degree_monotonicity(sys: FiniteSystem) -> str | None:
    trace = stabilize(sys)
    stab = trace.stabilization_degree.as_int()
    parts = [trace.partition_at(d) for d in range(stab + 1)]
    for mask in _all_nonempty_submasks(sys.space.full_mask):
        verdicts = [stable_degree_value_mask(sys, p, mask) == mask for p in parts]
        # once false at a lower degree, must stay false above
        for lo in range(len(verdicts)):
            for hi in range(lo + 1, len(verdicts)):
                if verdicts[hi] and not verdicts[lo]:
                    return (
                        f"set {sys.space.names(mask)} stable at degree {hi} "
                        f"but not at {lo}"
                    )
    return None


def check_containment_lemma(sys: FiniteSystem) -> str | None:
    """Containment claims for the degree hierarchy.

    For a set stable at degree d, every member's successor-degree orbit at
    degree d stays inside the set; for an absolutely stable set the base
    orbit and base class stay inside as well.
    """
    trace = stabilize(sys)
    stab = trace.stabilization_degree.as_int()
    base = trace.partition_at(0)
    for mask in _all_nonempty_submasks(sys.space.full_mask):
        for d in range(stab + 1):
            p = trace.partition_at(d)
            if stable_degree_value_mask(sys, p, mask) == mask:
                for i in _iter_bits(mask):
                    if aorb_succ_mask(sys, p, i) & ~mask:
                        return (
                            f"degree-{d} stable set {sys.space.names(mask)} does "
                            f"not contain the degree-{d + 1} orbit of "
                            f"{sys.space.points[i]}"
                        )
        if is_absolutely_stable(sys, PointSet(sys.space, mask), trace):
            for i in _iter_bits(mask):
                if aorb0_mask(sys, i) & ~mask:
                    return (
                        f"absolutely stable set {sys.space.names(mask)} does not "
                        f"contain aorb0({sys.space.points[i]})"
                    )
                if base.classes[base.class_of[i]] & ~mask:
                    return (
                        f"absolutely stable set {sys.space.names(mask)} does not "
                        f"contain the base class of {sys.space.points[i]}"
                    )
    return None


def check_plain_containment_probe(sys: FiniteSystem) -> str | None:
    """Exhaustive probe: does plain stability force base-orbit containment?

    On non-Hausdorff finite models it does not (a non-closed stable set can
    miss the closure of a member's orbit), so the census *reports* this
    check rather than requiring it; its counterexamples are expected.
    """
    for mask in _all_nonempty_submasks(sys.space.full_mask):
        if not is_stable_plain_mask(sys, mask):
            continue
        for i in _iter_bits(mask):
            if aorb0_mask(sys, i) & ~mask:
                return (
                    f"plain-stable {sys.space.names(mask)} misses part of "
                    f"aorb0({sys.space.points[i]})"
                )
    return None


def check_invariant_core_reference(sys: FiniteSystem) -> str | None:
    from .stability import invariant_core_reference

    for mask in _all_nonempty_submasks(sys.space.full_mask):
        got = invariant_core_mask(sys, mask)
        want = invariant_core_reference(sys, PointSet(sys.space, mask)).mask
        if got != want:
            return f"invariant core of {sys.space.names(mask)} differs from reference"
    return None


def check_ergodicity_equivalence(sys: FiniteSystem) -> str | None:
    trace = stabilize(sys)
    a = trace.stationary_partition.num_classes == 1
    b = oracle_partition(sys).num_classes == 1
    c = finest_abs_stable_partition(sys).num_classes == 1
    if not (a == b == c):
        return f"ergodicity equivalences disagree: trace={a} oracle={b} stable={c}"
    return None


ASSERTED_CHECKS: dict[str, Callable[[FiniteSystem], str | None]] = {
    "oracle-equivalence": check_oracle_equivalence,
    "quotient-discrete": check_quotient_discrete,
    "stabilization-degree-0": check_stabilization_zero,
    "definition-direct": check_definition_direct,
    "trace-monotone": check_trace_monotone,
    "level-set-refinement": check_level_set_refinement,
    "class-invariance": check_class_invariance,
    "saturation-equivalences": check_saturation_equivalences,
    "quotient-neighborhood": check_quotient_neighborhood,
    "prolongation-identities": check_prolongations,
    "oracle-classes-absolutely-stable": check_oracle_classes_absolutely_stable,
    "finest-abs-stable": check_finest_abs_stable,
    "degree-monotonicity": check_degree_monotonicity,
    "containment-lemma": check_containment_lemma,
    "invariant-core-reference": check_invariant_core_reference,
    "ergodicity-equivalence": check_ergodicity_equivalence,
}

# Reported checks collect counterexamples without failing the census: the
# plain-stability probe is expected to find non-closed stable sets on
# non-Hausdorff models.
REPORTED_CHECKS: dict[str, Callable[[FiniteSystem], str | None]] = {
    "plain-containment-probe": check_plain_containment_probe,
}

ALL_CHECK_NAMES = tuple(ASSERTED_CHECKS) + tuple(REPORTED_CHECKS)


def run_census(n: int, checks: tuple[str, ...] | None = None,
               up_to_iso: bool = False, jobs: int = 1,
               collect_witnesses: bool = True) -> CensusReport:
    if checks is None:
        checks = tuple(ASSERTED_CHECKS)
    unknown = [c for c in checks if c not in ASSERTED_CHECKS and c not in REPORTED_CHECKS]
    if unknown:
        raise UnknownNameError(f"unknown checks {unknown}")
    if n > (ISO_LIMIT if up_to_iso else LABELED_LIMIT):
        raise SizeLimitError(f"census size {n} exceeds the enumeration limit")
    outcomes = {name: CheckOutcome(name) for name in checks}
    histogram: dict[int, int] = {}
    ergodic_count = 0
    witnesses: list[dict] = []
    num_topologies = 0
    num_systems = 0

    systems: list[FiniteSystem] = []
    seen: set[tuple] = set()
    for space in enumerate_preorders(n):
        num_topologies += 1
        for m in monotone_maps(space):
            if up_to_iso:
                key = canonical_form(space, m)
                if key in seen:
                    continue
                seen.add(key)
            systems.append(FiniteSystem(space, m))

    def evaluate(sys: FiniteSystem) -> dict[str, str | None]:
        return {name: _run_check(name, sys) for name in checks}

    results: list[dict[str, str | None]]
    if jobs > 1:
        import multiprocessing as mp

        with mp.Pool(jobs) as pool:
            results = pool.map(_CheckRunner(checks), systems, chunksize=64)
    else:
        results = [evaluate(s) for s in systems]

    for sys, verdicts in zip(systems, results):
        num_systems += 1
        trace = stabilize(sys)
        d = trace.stabilization_degree.as_int()
        histogram[d] = histogram.get(d, 0) + 1
        if trace.stationary_partition.num_classes == 1:
            ergodic_count += 1
        if collect_witnesses and sys.n <= 4:
            w = finer_plain_stable_witness(sys)
            if w is not None:
                witnesses.append({
                    "system": system_payload(sys),
                    "witness_classes": [list(c.members()) for c in w.class_sets()],
                })
        for name, msg in verdicts.items():
            out = outcomes[name]
            if msg is None:
                out.passed += 1
            else:
                out.failed += 1
                out.counterexamples.append({
                    "system": system_payload(sys),
                    "reason": msg,
                })
    return CensusReport(
        points=n,
        num_topologies=num_topologies,
        num_systems=num_systems,
        checks=outcomes,
        stabilization_histogram=histogram,
        ergodic_count=ergodic_count,
        finer_plain_stable_witnesses=witnesses,
    )


def _run_check(name: str, sys: FiniteSystem) -> str | None:
    fn = ASSERTED_CHECKS.get(name) or REPORTED_CHECKS[name]
    return fn(sys)


class _CheckRunner:
    """Picklable helper for multiprocessing pools."""

    def __init__(self, checks: tuple[str, ...]):
        self.checks = checks

    def __call__(self, sys: FiniteSystem) -> dict[str, str | None]:
        return {name: _run_check(name, sys) for name in self.checks}


def census_failures(report: CensusReport) -> list[str]:
    """Names of asserted checks that failed (reported checks never fail)."""
    return [
        name for name, c in report.checks.items()
        if c.failed and name in ASSERTED_CHECKS
    ]
