"""Small ready-made systems used by tests and documentation."""

from __future__ import annotations

from .topology import FiniteSystem, build_system


def sierpinski(map_kind: str = "id") -> FiniteSystem:
    """Two points with a specializes b; maps: id, const_a, const_b."""
    maps = {
        "id": {"a": "a", "b": "b"},
        "const_a": {"a": "a", "b": "a"},
        "const_b": {"a": "b", "b": "b"},
    }
    return build_system(["a", "b"], [("a", "b")], maps[map_kind])


def discrete_cycle(n: int, step: int = 1) -> FiniteSystem:
    points = [str(i) for i in range(n)]
    return build_system(points, [], {str(i): str((i + step) % n) for i in range(n)})


def discrete_swap_plus_fixed() -> FiniteSystem:
    """Three isolated points, a and b swapped, c fixed."""
    return build_system(["a", "b", "c"], [], {"a": "b", "b": "a", "c": "c"})


def chain(names: str = "abc") -> FiniteSystem:
    """Specialization chain n0 < n1 < ... with the identity map."""
    pts = list(names)
    pairs = [(pts[i], pts[i + 1]) for i in range(len(pts) - 1)]
    return build_system(pts, pairs, {p: p for p in pts})


def niedex_like(rows: int = 3, base_len: int = 4) -> FiniteSystem:
    """Finite ladder-to-segment system.

    A specialization chain b0 < b1 < ... models the base segment; row k has
    k isolated points walking right and then dropping onto a base point.
    All base points are fixed.  The single grand structure makes the whole
    space one oracle class.
    """
    base = [f"b{i}" for i in range(base_len)]
    points = list(base)
    mapping = {b: b for b in base}
    pairs = [(base[i], base[i + 1]) for i in range(base_len - 1)]
    for k in range(1, rows + 1):
        row = [f"r{k}_{j}" for j in range(k)]
        points.extend(row)
        for j in range(k - 1):
            mapping[row[j]] = row[j + 1]
        mapping[row[-1]] = base[min(k, base_len - 1)]
    return build_system(points, pairs, mapping)
