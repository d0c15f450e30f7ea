import itertools

import pytest
from hypothesis import given, settings, strategies as st

from fixfactor.errors import ContinuityError, UnknownNameError
from fixfactor.systems import chain, sierpinski
from fixfactor.topology import (
    build_space,
    closure,
    comparability_components,
    interior,
    is_discrete,
    minimal_open,
    validate_map,
)


def members(ps):
    return set(ps.members())


def test_build_sierpinski():
    space = build_space(["a", "b"], [("a", "b")])
    assert members(closure(space, space.pointset(["b"]))) == {"a", "b"}
    assert members(closure(space, space.pointset(["a"]))) == {"a"}


def test_build_discrete():
    space = build_space(["a", "b", "c"], [])
    assert is_discrete(space)
    for p in space.points:
        assert members(minimal_open(space, p)) == {p}


def test_build_chain_transitive_closure_oracle():
    space = build_space(["a", "b", "c"], [("a", "b"), ("b", "c")])
    # oracle: boolean matrix powering of the generator relation
    n = 3
    mat = [[i == j for j in range(n)] for i in range(n)]
    for x, y in [("a", "b"), ("b", "c")]:
        mat[space.idx(x)][space.idx(y)] = True
    for _ in range(n):
        mat = [
            [any(mat[i][k] and mat[k][j] for k in range(n)) or mat[i][j]
             for j in range(n)]
            for i in range(n)
        ]
    for i in range(n):
        for j in range(n):
            assert bool(space.up[i] >> j & 1) == mat[i][j]
    assert members(closure(space, space.pointset(["c"]))) == {"a", "b", "c"}


def test_build_space_errors():
    with pytest.raises(UnknownNameError):
        build_space(["a", "a"], [])
    with pytest.raises(UnknownNameError):
        build_space(["a"], [("a", "zz")])
    with pytest.raises(UnknownNameError):
        build_space([], [])


def test_closure_downset_enumeration_oracle():
    space = chain("abc").space
    # oracle: enumerate all down-sets containing {b}, take the least
    target = {"b"}
    best = None
    for r in range(1, 4):
        for combo in itertools.combinations(space.points, r):
            s = set(combo)
            if not target <= s:
                continue
            if all(
                (space.points[i] in s)
                for p in s
                for i in range(3)
                if space.up[i] >> space.idx(p) & 1
            ):
                if best is None or len(s) < len(best):
                    best = s
    got = members(closure(space, space.pointset(["b"])))
    assert got == best == {"a", "b"}


def test_closure_discrete_identity():
    space = build_space(["x", "y", "z"], [])
    s = space.pointset(["x", "z"])
    assert members(closure(space, s)) == {"x", "z"}


def test_minimal_open_sierpinski():
    space = sierpinski().space
    assert members(minimal_open(space, "a")) == {"a", "b"}
    assert members(minimal_open(space, "b")) == {"b"}


def test_interior_duality_oracle_on_chain():
    space = chain("abc").space
    full = set(space.points)
    # duality oracle: int S = K minus cl(K minus S), on every subset
    for r in range(0, 4):
        for combo in itertools.combinations(space.points, r):
            s = set(combo)
            comp = space.pointset(full - s)
            dual = full - members(closure(space, comp))
            assert members(interior(space, space.pointset(s))) == dual
    # the duality value for {a, b}: its complement {c} closes to everything
    assert members(interior(space, space.pointset(["a", "b"]))) == set()


def test_validate_map_constant_ok():
    space = sierpinski().space
    m = validate_map(space, {"a": "a", "b": "a"})
    assert m("b") == "a"


def test_validate_map_swap_witness():
    space = sierpinski().space
    with pytest.raises(ContinuityError) as exc:
        validate_map(space, {"a": "b", "b": "a"})
    assert exc.value.witness == ("a", "b")
    assert exc.value.code == "E_CONTINUITY"


def test_sierpinski_has_exactly_three_continuous_maps():
    space = sierpinski().space
    ok = 0
    for img in itertools.product(space.points, repeat=2):
        try:
            validate_map(space, dict(zip(space.points, img)))
            ok += 1
        except ContinuityError:
            pass
    assert ok == 3


def test_comparability_components():
    assert len(comparability_components(build_space(["a", "b", "c"], []))) == 3
    assert len(comparability_components(sierpinski().space)) == 1
    vee = build_space(["u", "p", "q"], [("p", "u"), ("q", "u")])
    # oracle: undirected reachability on the comparability graph
    comps = comparability_components(vee)
    assert len(comps) == 1


def test_is_discrete():
    assert is_discrete(build_space(["a", "b", "c"], []))
    assert not is_discrete(sierpinski().space)


def test_accepts_iff_preimages_of_upsets_are_upsets():
    # both directions, on all spaces with <= 3 points over a fixed universe
    names = ["a", "b", "c"]
    rel_pairs = [(x, y) for x in names for y in names if x != y]
    for bits in range(1 << len(rel_pairs)):
        space = build_space(
            names, [p for k, p in enumerate(rel_pairs) if bits >> k & 1]
        )
        for img in itertools.product(range(3), repeat=3):
            accepted = True
            try:
                validate_map(space, {names[i]: names[img[i]] for i in range(3)})
            except ContinuityError:
                accepted = False
            preimage_ok = True
            for u in range(8):
                if space.interior_mask(u) != u:
                    continue
                pre = 0
                for i in range(3):
                    if u >> img[i] & 1:
                        pre |= 1 << i
                if space.interior_mask(pre) != pre:
                    preimage_ok = False
                    break
            assert accepted == preimage_ok


subset_strategy = st.integers(min_value=0, max_value=255)


@settings(max_examples=150, derandomize=True)
@given(
    st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), max_size=8),
    subset_strategy,
    subset_strategy,
)
def test_kuratowski_laws_random_spaces(pairs, raw_s, raw_t):
    names = ["p0", "p1", "p2", "p3", "p4"]
    space = build_space(names, [(names[i], names[j]) for i, j in pairs])
    full = space.full_mask
    s, t = raw_s & full, raw_t & full
    cl = space.closure_mask
    assert cl(0) == 0
    assert cl(s) & ~full == 0 and s & ~cl(s) == 0          # extensive
    if s & ~t == 0:
        assert cl(s) & ~cl(t) == 0                          # monotone
    assert cl(cl(s)) == cl(s)                               # idempotent
    assert cl(s | t) == cl(s) | cl(t)                       # preserves unions
    assert space.interior_mask(s) == full & ~cl(full & ~s)  # de-Morgan dual
