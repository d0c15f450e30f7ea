import pytest

from fixfactor.decomposition import stabilize
from fixfactor.errors import CoverError
from fixfactor.ladder import build_ladder, ladder_trace, window, window_check
from fixfactor.ladder.sets import ladder_aorb0_addr
from fixfactor.ladder.window import (
    WindowCheckReport,
    check_orbit_set,
    window_answers_stable,
)
from fixfactor.ordinals import parse_ordinal
from fixfactor.topology import is_discrete

W2 = parse_ordinal("w*2")


def test_strand_window_point_count():
    sp = build_ladder("strand")
    w = window(sp, 3, 2)
    # two endpoints plus five orbit points
    assert len(w.addrs) == 7
    assert set(w.names()) == {"A", "z:-2", "z:-1", "z:0", "z:1", "z:2", "top"}


def test_cat_strand_window_materializes_blocks():
    sp = build_ladder("cat(strand)")
    w = window(sp, 2, 1)
    names = set(w.names())
    assert {"c:0", "c:1", "c:2", "top"} <= names
    assert "S:1:0" in names and "S:2:0" in names
    assert "c:3" not in names


def test_window_cut_validation():
    sp = build_ladder("strand")
    with pytest.raises(CoverError):
        window(sp, 0, 3)


def test_window_membership_decoding():
    sp = build_ladder("cat(strand)")
    w = window(sp, 3, 3)
    orbit = ladder_aorb0_addr(sp, (("copy", 2), ("A",)))
    decoded = {a for a in w.addrs if orbit.contains(a)}
    # {c:1, c:2} plus all of S:2's materialized orbit points
    assert (("copy", 1), ("A",)) in decoded
    assert (("copy", 2), ("A",)) in decoded
    assert (("copy", 1), ("z", 0)) in decoded
    assert (("copy", 2), ("z", 0)) not in decoded
    assert (("TOP",),) not in decoded


@pytest.mark.parametrize("term", ["strand", "cat(strand)", "ramp", "cat(ramp)"])
def test_window_audit_zero_violations(term):
    sp = build_ladder(term)
    tr = ladder_trace(sp, W2)
    w = window(sp, 3, 3)
    rep = window_check(sp, w, trace=tr)
    assert rep.ok(), rep.violations[:5]
    assert rep.checks_run > 0


def test_fault_injection_dropped_limit_point_detected():
    sp = build_ladder("cat(strand)")
    w = window(sp, 3, 3)
    addr = (("copy", 1), ("A",))
    bad = ladder_aorb0_addr(sp, addr).copy()
    bad.pts.discard((("copy", 0), ("A",)))
    rep = WindowCheckReport("cat(strand)", (3, 3), 0, [])
    check_orbit_set(w, addr, bad, rep)
    assert any("closure violation" in v for v in rep.violations)


def test_fault_injection_noninvariant_set_detected():
    sp = build_ladder("cat(strand)")
    w = window(sp, 3, 3)
    addr = (("copy", 1), ("z", 0))
    bad = ladder_aorb0_addr(sp, addr).copy()
    prof = bad.strands[(("copy", 1),)]
    # truncate the forward tail to a finite stub: no longer invariant
    from fixfactor.ladder.sets import StrandProfile

    bad.strands[(("copy", 1),)] = StrandProfile(fin=(0, 1))
    rep = WindowCheckReport("cat(strand)", (3, 3), 0, [])
    check_orbit_set(w, addr, bad, rep)
    assert rep.violations


def test_answers_stable_across_growing_windows():
    for term in ("strand", "cat(strand)"):
        sp = build_ladder(term)
        wins = [window(sp, 3, 3), window(sp, 5, 6), window(sp, 8, 8)]
        assert window_answers_stable(sp, wins) == []


def test_window_export_parses_and_collapses():
    for term in ("strand", "cat(strand)", "ramp"):
        sp = build_ladder(term)
        w = window(sp, 3, 3)
        fs = w.to_finite_system()
        assert fs.n == len(w.addrs)
        tr = stabilize(fs)
        # truncations are finite, so they collapse immediately by design
        assert tr.stabilization_degree.as_int() == 0
        q_discrete = is_discrete(fs.space)
        assert not q_discrete or term == "strand"


def test_frontier_marks_strand_edges_and_last_family_member():
    sp = build_ladder("cat(strand)")
    w = window(sp, 3, 3)
    assert (("copy", 0), ("z", 3)) in w.frontier
    assert (("copy", 0), ("z", -3)) in w.frontier
    assert (("copy", 3), ("A",)) in w.frontier        # last copy entirely
    assert (("copy", 1), ("z", 0)) not in w.frontier
