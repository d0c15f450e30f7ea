"""Finite topological spaces as specialization preorders.

Convention fixed once for the whole package: ``specializes(x, y)`` means
x lies in the closure of {y}.  Closed sets are the down-sets of the
relation, open sets the up-sets, and the minimal open neighborhood of x
is ``{y : specializes(x, y)}``.

Subsets are bit masks over the point indices; the wrapper type
:class:`PointSet` gives named access while every algorithm works on raw
integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import ContinuityError, UnknownNameError


def _iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


@dataclass(frozen=True)
class FiniteSpace:
    """Finite point set with a specialization preorder.

    ``up[i]``  is the bit mask of ``{j : specializes(i, j)}`` -- the minimal
    open set of point i.  ``down[i]`` is ``{j : specializes(j, i)}`` -- the
    closure of {i}.  Both include i itself (reflexivity).
    """

    points: tuple[str, ...]
    up: tuple[int, ...]
    down: tuple[int, ...]
    index: dict[str, int] = field(compare=False, repr=False)

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def idx(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise UnknownNameError(f"unknown point {name!r}") from None

    def specializes(self, x: str, y: str) -> bool:
        return bool(self.up[self.idx(x)] >> self.idx(y) & 1)

    def names(self, mask: int) -> tuple[str, ...]:
        return tuple(self.points[i] for i in _iter_bits(mask))

    def pointset(self, members: Iterable[str]) -> "PointSet":
        return PointSet(self, mask_of(self.idx(p) for p in members))

    def closure_mask(self, mask: int) -> int:
        out = 0
        for i in _iter_bits(mask):
            out |= self.down[i]
        return out

    def interior_mask(self, mask: int) -> int:
        out = 0
        for i in _iter_bits(mask):
            if self.up[i] & ~mask == 0:
                out |= 1 << i
        return out

    def is_open_mask(self, mask: int) -> bool:
        return self.interior_mask(mask) == mask

    def is_closed_mask(self, mask: int) -> bool:
        return self.closure_mask(mask) == mask

    def specialization_pairs(self) -> list[tuple[str, str]]:
        """All non-reflexive pairs (x, y) with specializes(x, y)."""
        out = []
        for i in range(self.n):
            for j in _iter_bits(self.up[i] & ~(1 << i)):
                out.append((self.points[i], self.points[j]))
        return out


@dataclass(frozen=True)
class PointSet:
    """Subset of a space's points with constant-time membership."""

    space: FiniteSpace
    mask: int

    def __post_init__(self):
        if self.mask & ~self.space.full_mask:
            raise UnknownNameError("point set contains bits outside its space")

    def __contains__(self, name: str) -> bool:
        return bool(self.mask >> self.space.idx(name) & 1)

    def __iter__(self) -> Iterator[str]:
        return iter(self.space.names(self.mask))

    def __len__(self) -> int:
        return self.mask.bit_count()

    def members(self) -> tuple[str, ...]:
        return self.space.names(self.mask)

    def __or__(self, other: "PointSet") -> "PointSet":
        return PointSet(self.space, self.mask | other.mask)

    def __and__(self, other: "PointSet") -> "PointSet":
        return PointSet(self.space, self.mask & other.mask)

    def __le__(self, other: "PointSet") -> bool:
        return self.mask & ~other.mask == 0


@dataclass(frozen=True)
class SelfMap:
    """Total monotone self-map of a finite space (continuity certified)."""

    space: FiniteSpace
    img: tuple[int, ...]

    def __call__(self, name: str) -> str:
        return self.space.points[self.img[self.space.idx(name)]]

    def image_mask(self, mask: int) -> int:
        out = 0
        for i in _iter_bits(mask):
            out |= 1 << self.img[i]
        return out

    def orbit_mask(self, mask: int) -> int:
        """Forward saturation: smallest superset closed under the map."""
        out = mask
        frontier = mask
        while frontier:
            nxt = self.image_mask(frontier) & ~out
            out |= nxt
            frontier = nxt
        return out


@dataclass(frozen=True)
class FiniteSystem:
    space: FiniteSpace
    map: SelfMap

    @property
    def n(self) -> int:
        return self.space.n


def build_space(points: Iterable[str], specializes_pairs: Iterable[tuple[str, str]]) -> FiniteSpace:
    """Build a space from generating pairs, closed reflexively/transitively.

    A pair (x, y) asserts x in cl({y}).
    """
    pts = tuple(points)
    if not pts:
        raise UnknownNameError("a space needs at least one point")
    index: dict[str, int] = {}
    for i, p in enumerate(pts):
        if p in index:
            raise UnknownNameError(f"duplicate point {p!r}")
        index[p] = i
    n = len(pts)
    up = [1 << i for i in range(n)]
    for x, y in specializes_pairs:
        if x not in index:
            raise UnknownNameError(f"unknown point {x!r}")
        if y not in index:
            raise UnknownNameError(f"unknown point {y!r}")
        up[index[x]] |= 1 << index[y]
    return space_from_up_masks(pts, up, index)


def space_from_up_masks(pts: tuple[str, ...], up: list[int], index: dict[str, int] | None = None) -> FiniteSpace:
    """Finish construction from generator up-masks (transitive closure)."""
    n = len(pts)
    changed = True
    while changed:
        changed = False
        for i in range(n):
            acc = up[i]
            for j in _iter_bits(up[i]):
                acc |= up[j]
            if acc != up[i]:
                up[i] = acc
                changed = True
    down = [0] * n
    for i in range(n):
        for j in _iter_bits(up[i]):
            down[j] |= 1 << i
    if index is None:
        index = {p: i for i, p in enumerate(pts)}
    return FiniteSpace(pts, tuple(up), tuple(down), index)


def closure(space: FiniteSpace, s: PointSet) -> PointSet:
    return PointSet(space, space.closure_mask(s.mask))


def interior(space: FiniteSpace, s: PointSet) -> PointSet:
    return PointSet(space, space.interior_mask(s.mask))


def minimal_open(space: FiniteSpace, x: str) -> PointSet:
    return PointSet(space, space.up[space.idx(x)])


def validate_map(space: FiniteSpace, assignments: dict[str, str]) -> SelfMap:
    """Accept a total assignment iff it is monotone w.r.t. specialization."""
    missing = [p for p in space.points if p not in assignments]
    if missing:
        raise UnknownNameError(f"assignment missing points {missing}")
    extra = [p for p in assignments if p not in space.index]
    if extra:
        raise UnknownNameError(f"assignment names unknown points {extra}")
    img = tuple(space.idx(assignments[p]) for p in space.points)
    for i in range(space.n):
        for j in _iter_bits(space.up[i]):
            if not space.up[img[i]] >> img[j] & 1:
                raise ContinuityError(space.points[i], space.points[j])
    return SelfMap(space, img)


def is_monotone_img(space: FiniteSpace, img: tuple[int, ...]) -> bool:
    for i in range(space.n):
        ui = space.up[i]
        for j in _iter_bits(ui):
            if not space.up[img[i]] >> img[j] & 1:
                return False
    return True


def comparability_components(space: FiniteSpace) -> list[int]:
    """Connected components of the comparability graph, as masks."""
    n = space.n
    adj = [space.up[i] | space.down[i] for i in range(n)]
    seen = 0
    comps = []
    for i in range(n):
        if seen >> i & 1:
            continue
        comp = 1 << i
        frontier = comp
        while frontier:
            nxt = 0
            for j in _iter_bits(frontier):
                nxt |= adj[j]
            nxt &= ~comp
            comp |= nxt
            frontier = nxt
        seen |= comp
        comps.append(comp)
    return comps


def is_discrete(space: FiniteSpace) -> bool:
    return all(space.up[i] == 1 << i for i in range(space.n))


def build_system(points: Iterable[str], specializes_pairs: Iterable[tuple[str, str]],
                 assignments: dict[str, str]) -> FiniteSystem:
    space = build_space(points, specializes_pairs)
    return FiniteSystem(space, validate_map(space, assignments))
