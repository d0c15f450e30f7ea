"""Orbit hierarchy on finite systems.

Approximating orbits, covering-generated equivalences, successor-degree
refinement steps, stabilization traces, quotients, the locally-constant
fixed-function oracle, topological ergodicity, and prolongations.

All algorithms use the collapse arguments documented per operation: the
intersection over a filter of admissible neighborhoods equals the value at
the minimal admissible one, because the defining operator is monotone and
the minimal element is itself admissible.  ``reference_intersection``
recomputes the same sets definition-first by exhaustive enumeration and is
the guard for every such collapse.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CoverError, InvarianceError, SizeLimitError
from .ordinals import OrdinalCNF
from .topology import (
    FiniteSpace,
    FiniteSystem,
    PointSet,
    SelfMap,
    _iter_bits,
    comparability_components,
    space_from_up_masks,
)

REFERENCE_BOUND = 12


@dataclass(frozen=True)
class Partition:
    """Equivalence relation on a space's points with class lookup.

    Class ids are assigned by least member index, so equal partitions have
    identical representations.
    """

    space: FiniteSpace
    class_of: tuple[int, ...]
    classes: tuple[int, ...]  # one mask per class, ordered by least member

    @classmethod
    def from_class_of(cls, space: FiniteSpace, raw_ids: list[int]) -> "Partition":
        remap: dict[int, int] = {}
        masks: list[int] = []
        ids = []
        for i, r in enumerate(raw_ids):
            if r not in remap:
                remap[r] = len(masks)
                masks.append(0)
            ids.append(remap[r])
            masks[remap[r]] |= 1 << i
        return cls(space, tuple(ids), tuple(masks))

    @classmethod
    def from_masks(cls, space: FiniteSpace, masks: list[int]) -> "Partition":
        raw = [0] * space.n
        for k, m in enumerate(masks):
            for i in _iter_bits(m):
                raw[i] = k
        return cls.from_class_of(space, raw)

    @classmethod
    def identity(cls, space: FiniteSpace) -> "Partition":
        return cls.from_class_of(space, list(range(space.n)))

    @classmethod
    def one_class(cls, space: FiniteSpace) -> "Partition":
        return cls.from_class_of(space, [0] * space.n)

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    def class_mask(self, x: str) -> int:
        return self.classes[self.class_of[self.space.idx(x)]]

    def class_set(self, x: str) -> PointSet:
        return PointSet(self.space, self.class_mask(x))

    def class_sets(self) -> tuple[PointSet, ...]:
        return tuple(PointSet(self.space, m) for m in self.classes)

    def saturate_mask(self, mask: int) -> int:
        out = mask
        for m in self.classes:
            if m & mask:
                out |= m
        return out

    def is_saturated_mask(self, mask: int) -> bool:
        return self.saturate_mask(mask) == mask

    def refines(self, other: "Partition") -> bool:
        """Every class of self is contained in a class of other."""
        for m in self.classes:
            i = (m & -m).bit_length() - 1
            if m & ~other.classes[other.class_of[i]]:
                return False
        return True

    def same_blocks(self, other: "Partition") -> bool:
        return self.classes == other.classes


def generated_partition(space: FiniteSpace, cover: list[PointSet] | list[int]) -> Partition:
    """Finest equivalence merging overlapping cover members (x in K_x)."""
    masks = [c.mask if isinstance(c, PointSet) else c for c in cover]
    n = space.n
    if len(masks) != n:
        raise CoverError(f"cover must have one member per point, got {len(masks)}")
    for i, m in enumerate(masks):
        if not m >> i & 1:
            raise CoverError(f"point {space.points[i]!r} not in its own cover member")
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a: int, b: int):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for z in range(n):
        owners = [i for i in range(n) if masks[i] >> z & 1]
        for i in owners[1:]:
            union(owners[0], i)
    return Partition.from_class_of(space, [find(i) for i in range(n)])


def comparability_partition(space: FiniteSpace) -> Partition:
    return Partition.from_masks(space, comparability_components(space))


def aorb0_mask(sys: FiniteSystem, i: int) -> int:
    """Smallest closed invariant neighborhood of point index i.

    Equals cl(orbit(U_i)): every closed invariant neighborhood contains the
    minimal open U_i, hence its forward orbit, hence the closure; and the
    closure of the orbit is itself closed, invariant and a neighborhood.
    """
    return sys.space.closure_mask(sys.map.orbit_mask(sys.space.up[i]))


def aorb0(sys: FiniteSystem, x: str) -> PointSet:
    return PointSet(sys.space, aorb0_mask(sys, sys.space.idx(x)))


def sorb0_partition(sys: FiniteSystem) -> Partition:
    return generated_partition(sys.space, [aorb0_mask(sys, i) for i in range(sys.n)])


def min_saturated_open_mask(space: FiniteSpace, p: Partition, seed: int) -> int:
    """Least open, P-saturated superset of the seed mask."""
    out = seed
    while True:
        grown = p.saturate_mask(out)
        for i in _iter_bits(grown):
            grown |= space.up[i]
        if grown == out:
            return out
        out = grown


def min_saturated_open_nbhd(sys: FiniteSystem, p: Partition, x: str) -> PointSet:
    space = sys.space
    return PointSet(space, min_saturated_open_mask(space, p, 1 << space.idx(x)))


def sorb_closure_mask(space: FiniteSpace, p: Partition, mask: int) -> int:
    """Least closed, P-saturated superset: alternate closure and saturation."""
    out = mask
    while True:
        grown = p.saturate_mask(space.closure_mask(out))
        if grown == out:
            return out
        out = grown


def sorb_closure(sys: FiniteSystem, p: Partition, u: PointSet) -> PointSet:
    if not u.mask:
        raise CoverError("sorb-closure of an empty set is not defined")
    return PointSet(sys.space, sorb_closure_mask(sys.space, p, u.mask))


def aorb_succ_mask(sys: FiniteSystem, p: Partition, i: int) -> int:
    space = sys.space
    return sorb_closure_mask(space, p, min_saturated_open_mask(space, p, 1 << i))


def aorb_succ(sys: FiniteSystem, p: Partition, x: str) -> PointSet:
    return PointSet(sys.space, aorb_succ_mask(sys, p, sys.space.idx(x)))


def reference_intersection(sys: FiniteSystem, mode: str, x: str,
                           p: Partition | None = None,
                           bound: int = REFERENCE_BOUND) -> PointSet:
    """Definition-direct oracle for aorb0 / aorb_succ.

    mode="base": intersect all closed invariant neighborhoods of x.
    mode="succ": intersect, over all open P-saturated U containing x, the
    least closed P-saturated superset of U (enumerated, not collapsed).
    """
    space = sys.space
    if space.n > bound:
        raise SizeLimitError(f"{space.n} points exceeds enumeration bound {bound}")
    i = space.idx(x)
    ui = space.up[i]
    acc = space.full_mask
    if mode == "base":
        for cand in range(1 << space.n):
            if cand & ui != ui:
                continue  # not a neighborhood of x
            if not space.is_closed_mask(cand):
                continue
            if sys.map.image_mask(cand) & ~cand:
                continue
            acc &= cand
        return PointSet(space, acc)
    if mode == "succ":
        if p is None:
            raise CoverError("mode 'succ' needs a partition")
        for cand in range(1 << space.n):
            if not cand >> i & 1:
                continue
            if not space.is_open_mask(cand) or not p.is_saturated_mask(cand):
                continue
            # least closed saturated superset, itself by enumeration
            best = space.full_mask
            for sup in range(1 << space.n):
                if sup & cand == cand and space.is_closed_mask(sup) \
                        and p.is_saturated_mask(sup):
                    best &= sup
            acc &= best
        return PointSet(space, acc)
    raise CoverError(f"unknown mode {mode!r}")


def class_invariant(sys: FiniteSystem, mask: int) -> bool:
    return sys.map.image_mask(mask) & ~mask == 0


def degree_step(sys: FiniteSystem, p: Partition) -> Partition:
    """One successor step: regenerate the equivalence from degree-(d+1) orbits."""
    for m in p.classes:
        if not class_invariant(sys, m):
            raise InvarianceError(
                f"class {sys.space.names(m)} is not forward-invariant"
            )
    return generated_partition(sys.space, [aorb_succ_mask(sys, p, i) for i in range(sys.n)])


@dataclass(frozen=True)
class DegreeTrace:
    """Per-degree partitions up to and including the stationarity witness.

    The final two entries carry equal partitions; the stabilization degree
    is the degree of the first of those two.
    """

    entries: tuple[tuple[OrdinalCNF, Partition], ...]
    stabilization_degree: OrdinalCNF

    @property
    def stationary_partition(self) -> Partition:
        return self.entries[-1][1]

    def partition_at(self, degree: int) -> Partition:
        last = self.entries[-1][1]
        for d, part in self.entries:
            if d.as_int() == degree:
                return part
        return last if degree > self.entries[-1][0].as_int() else self.entries[0][1]


def stabilize(sys: FiniteSystem) -> DegreeTrace:
    """Iterate degree steps from the base partition until stationary.

    On a finite space each non-final step strictly coarsens the partition,
    so the loop ends within |K| iterations and limit degrees never arise.
    """
    entries: list[tuple[OrdinalCNF, Partition]] = []
    p = sorb0_partition(sys)
    entries.append((OrdinalCNF.from_int(0), p))
    for d in range(1, sys.n + 2):
        q = degree_step(sys, p)
        entries.append((OrdinalCNF.from_int(d), q))
        if q.same_blocks(p):
            return DegreeTrace(tuple(entries), OrdinalCNF.from_int(d - 1))
        p = q
    raise AssertionError("partition failed to stabilize within |K| steps")


@dataclass(frozen=True)
class QuotientResult:
    quotient: FiniteSystem
    projection: dict[str, str]


def quotient(sys: FiniteSystem, p: Partition) -> QuotientResult:
    """Quotient system: classes as points, relation and map induced.

    The quotient preorder is the transitive closure of representative-wise
    specialization, which presents the quotient topology; the induced map
    is well-defined because classes are forward-invariant.
    """
    space = sys.space
    for m in p.classes:
        if not class_invariant(sys, m):
            raise InvarianceError(
                f"class {space.names(m)} is not forward-invariant"
            )
    k = p.num_classes
    reps = []
    for m in p.classes:
        reps.append(space.points[(m & -m).bit_length() - 1])
    up = [1 << c for c in range(k)]
    for i in range(space.n):
        ci = p.class_of[i]
        for j in _iter_bits(space.up[i]):
            up[ci] |= 1 << p.class_of[j]
    qspace = space_from_up_masks(tuple(reps), up)
    img = [0] * k
    for c, m in enumerate(p.classes):
        i = (m & -m).bit_length() - 1
        img[c] = p.class_of[sys.map.img[i]]
    qmap = SelfMap(qspace, tuple(img))
    projection = {space.points[i]: reps[p.class_of[i]] for i in range(space.n)}
    return QuotientResult(FiniteSystem(qspace, qmap), projection)


def oracle_partition(sys: FiniteSystem) -> Partition:
    """Maximal level sets of the invariant continuous functions.

    A continuous function into a T1 range is constant on comparable pairs,
    and invariance forces f(x) = f(map(x)); conversely any function constant
    on the generated classes is continuous and invariant.  So the classes
    are the components of comparability plus map edges, and their number is
    the dimension of the fixed function space.
    """
    space = sys.space
    n = space.n
    cover = [space.up[i] | space.down[i] | (1 << sys.map.img[i]) for i in range(n)]
    return generated_partition(space, cover)


def dim_fix(sys: FiniteSystem) -> int:
    return oracle_partition(sys).num_classes


def is_topologically_ergodic(sys: FiniteSystem) -> bool:
    return stabilize(sys).stationary_partition.num_classes == 1


def _d1_set_mask(sys: FiniteSystem, mask: int) -> int:
    return sys.space.closure_mask(sys.map.orbit_mask(mask))


def prolongation_D1(sys: FiniteSystem, x: str) -> PointSet:
    """Closure of the orbit of the minimal neighborhood (first prolongation)."""
    return PointSet(sys.space, _d1_set_mask(sys, sys.space.up[sys.space.idx(x)]))


def prolongation_D2(sys: FiniteSystem, x: str) -> PointSet:
    """Second prolongation: closure of the union of iterated D1 images."""
    space = sys.space
    u = space.up[space.idx(x)]
    acc = 0
    cur = _d1_set_mask(sys, u)
    while cur & ~acc:
        acc |= cur
        cur = _d1_set_mask(sys, cur)
    return PointSet(space, space.closure_mask(acc))


def prolongation_reference(sys: FiniteSystem, which: str, x: str,
                           bound: int = REFERENCE_BOUND) -> PointSet:
    """Definition-direct prolongations: intersect over all open U containing x."""
    space = sys.space
    if space.n > bound:
        raise SizeLimitError(f"{space.n} points exceeds enumeration bound {bound}")
    i = space.idx(x)
    acc = space.full_mask
    for cand in range(1 << space.n):
        if not cand >> i & 1 or not space.is_open_mask(cand):
            continue
        if which == "D1":
            acc &= _d1_set_mask(sys, cand)
        elif which == "D2":
            union = 0
            cur = _d1_set_mask(sys, cand)
            while cur & ~union:
                union |= cur
                cur = _d1_set_mask(sys, cur)
            acc &= space.closure_mask(union)
        else:
            raise CoverError(f"unknown prolongation {which!r}")
    return PointSet(space, acc)
