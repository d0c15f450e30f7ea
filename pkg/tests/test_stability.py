import pytest

from fixfactor.decomposition import oracle_partition, stabilize
from fixfactor.errors import CoverError, OrdinalError, SizeLimitError
from fixfactor.stability import (
    finer_plain_stable_witness,
    finest_abs_stable_partition,
    invariant_core,
    invariant_core_reference,
    is_absolutely_stable,
    is_stable_degree,
    is_stable_plain,
    stability_report,
)
from fixfactor.systems import (
    chain,
    discrete_cycle,
    discrete_swap_plus_fixed,
    sierpinski,
)
from fixfactor.topology import PointSet, build_system


def members(ps):
    return set(ps.members())


def pset(sys_, names):
    return sys_.space.pointset(names)


def test_invariant_core_swap():
    sys_ = discrete_swap_plus_fixed()
    assert members(invariant_core(sys_, pset(sys_, ["c"]))) == {"c"}
    assert is_stable_plain(sys_, pset(sys_, ["c"]))
    assert members(invariant_core(sys_, pset(sys_, ["a"]))) == {"a", "b"}
    assert not is_stable_plain(sys_, pset(sys_, ["a"]))


def test_invariant_core_sierpinski_and_reference():
    sys_ = sierpinski("id")
    assert members(invariant_core(sys_, pset(sys_, ["a"]))) == {"a", "b"}
    assert not is_stable_plain(sys_, pset(sys_, ["a"]))
    assert members(invariant_core(sys_, pset(sys_, ["b"]))) == {"b"}
    assert is_stable_plain(sys_, pset(sys_, ["b"]))
    # definition-direct cross-check by enumerating invariant neighborhoods
    for names in (["a"], ["b"], ["a", "b"]):
        s = pset(sys_, names)
        assert invariant_core(sys_, s).mask == \
            invariant_core_reference(sys_, s).mask


def test_invariant_core_empty_rejected():
    sys_ = sierpinski("id")
    with pytest.raises(CoverError):
        invariant_core(sys_, PointSet(sys_.space, 0))


def test_stable_degree_whole_space():
    sys_ = discrete_swap_plus_fixed()
    tr = stabilize(sys_)
    whole = PointSet(sys_.space, sys_.space.full_mask)
    assert is_stable_degree(sys_, whole, 0, tr)


def test_stable_degree_swap_singleton_false():
    sys_ = discrete_swap_plus_fixed()
    tr = stabilize(sys_)
    assert not is_stable_degree(sys_, pset(sys_, ["a"]), 0, tr)


def test_stable_degree_oracle_classes_true():
    for sys_ in (discrete_swap_plus_fixed(), sierpinski("const_a"),
                 discrete_cycle(4, 2), chain("abc")):
        tr = stabilize(sys_)
        for c in oracle_partition(sys_).class_sets():
            for d in range(tr.stabilization_degree.as_int() + 1):
                assert is_stable_degree(sys_, c, d, tr)


def test_stable_degree_beyond_stabilization_rejected():
    sys_ = discrete_swap_plus_fixed()
    tr = stabilize(sys_)
    with pytest.raises(OrdinalError):
        is_stable_degree(sys_, pset(sys_, ["c"]), 5, tr)


def test_absolutely_stable_examples():
    sys_ = discrete_swap_plus_fixed()
    assert is_absolutely_stable(sys_, pset(sys_, ["c"]))
    assert not is_absolutely_stable(sys_, pset(sys_, ["a"]))
    assert is_absolutely_stable(sys_, PointSet(sys_.space, sys_.space.full_mask))
    for c in oracle_partition(sys_).class_sets():
        assert is_absolutely_stable(sys_, c)


def test_stability_report_fields():
    sys_ = discrete_swap_plus_fixed()
    rep = stability_report(sys_, pset(sys_, ["c"]))
    assert rep.stable_plain and rep.absolutely_stable
    assert [ok for _, ok in rep.stable_by_degree] == [True]
    rep2 = stability_report(sys_, pset(sys_, ["a"]))
    assert not rep2.stable_plain and not rep2.absolutely_stable


def test_finest_abs_stable_examples():
    one = build_system(["p"], [], {"p": "p"})
    assert finest_abs_stable_partition(one).num_classes == 1
    sys_ = sierpinski("const_a")
    assert finest_abs_stable_partition(sys_).num_classes == 1
    sys2 = discrete_swap_plus_fixed()
    assert finest_abs_stable_partition(sys2).same_blocks(oracle_partition(sys2))


def test_finest_abs_stable_size_guard():
    sys_ = discrete_cycle(7)
    with pytest.raises(SizeLimitError):
        finest_abs_stable_partition(sys_)


def test_finer_plain_witness_discrete_identity_none():
    sys_ = build_system(["a", "b", "c"], [], {p: p for p in "abc"})
    # each fixed singleton is stable and already the oracle partition, so
    # nothing strictly finer can exist
    assert finer_plain_stable_witness(sys_) is None


def test_finer_plain_witness_sierpinski_none():
    assert finer_plain_stable_witness(sierpinski("id")) is None


def test_degree_monotonicity_exhaustive_small():
    for sys_ in (discrete_swap_plus_fixed(), chain("abc"), sierpinski("id"),
                 discrete_cycle(4, 2)):
        tr = stabilize(sys_)
        stab = tr.stabilization_degree.as_int()
        for mask in range(1, 1 << sys_.n):
            s = PointSet(sys_.space, mask)
            verdicts = [is_stable_degree(sys_, s, d, tr) for d in range(stab + 1)]
            for lo in range(len(verdicts)):
                for hi in range(lo, len(verdicts)):
                    assert not (verdicts[hi] and not verdicts[lo])
