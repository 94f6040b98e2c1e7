from fractions import Fraction as F

import pytest

from klrw_subdivision.diagram import (
    GHOST,
    RED,
    SOLID,
    Unsteady,
    build_loading,
    degree,
    format_signature,
    idempotent_loading,
    normalize_right,
    signature,
    straight_diagram,
    unit_shifts,
)
from klrw_subdivision.partitions import Charge, Multipartition
from klrw_subdivision.quiver import Quiver
from klrw_subdivision.strips import maximal_strips
from klrw_subdivision.subdivision import (
    SubdivisionParams,
    close_tuples,
    params_for,
    rotate_loading,
    side_switches,
    subdivide_diagram,
    subdivide_idempotent,
    transport_labels,
    verify_idempotent_correspondence,
)


def idem(lam, rho, e):
    return idempotent_loading(Multipartition.parse(lam), Charge.of(rho), Quiver(e))


# ---------------------------------------------------------------- close tuples


def test_close_tuple_of_type_d():
    tups = close_tuples(idem("2,2,2", 1, 3))
    assert [(t.type, t.text()) for t in tups] == [("d", "g0 s1 g0 s1")]
    assert tups[0].start_res == 1 and tups[0].end_res == 0


def test_close_tuples_match_strip_types():
    lam, ch = Multipartition.parse("4,3,2"), Charge.of(3)
    tups = close_tuples(idempotent_loading(lam, ch, Quiver(2)))
    strips = maximal_strips(lam, ch, 3)
    assert sorted(t.type for t in tups) == sorted(s.type for s in strips) == ["a", "b", "c"]
    assert sorted(len(t.strings) for t in tups) == [1, 1, 4]


def test_no_ghosts_no_tuples():
    assert close_tuples(idem("", 0, 2)) == []
    assert close_tuples(idem("1", 2, 2)) == []
    assert [t.type for t in close_tuples(idem("1", 0, 2))] == ["a"]


def test_red_breaks_a_tuple():
    shifts = unit_shifts(2)
    solids = [(("a",), 0, F(0)), (("b",), 1, F(1, 20) + 1)]
    load = build_loading(2, solids, [(("r",), 0, F(1) + F(1, 40))], shifts, F(1, 10))
    assert [s.label for s in load.strings][1:4] == ["g0", "r0", "s1"]
    assert [t.text() for t in close_tuples(load)] == ["g0", "s1"]


# ---------------------------------------------------------------- subdivision of idempotents


def test_subdivided_idempotent_signature():
    out = subdivide_idempotent(idem("2,2,2", 1, 3))
    assert out.e == 4
    assert format_signature(signature(out)) == "s4 s0 g4 s0 g0 s1 g1 s2 g0 s1 g1 s2 r2 g2 s3 g2 g3"
    assert format_signature(signature(normalize_right(out))) == (
        "s4 s0 g4 s0 g0 s1 g0 s1 g1 s2 g1 s2 r2 g2 s3 g2 g3"
    )


def test_singleton_only_relabels():
    out = subdivide_idempotent(idem("1", 2, 3))
    assert format_signature(signature(out)) == "s3 r3 g3"


def test_empty_loading():
    out = subdivide_idempotent(idem("", 1, 2))
    assert format_signature(signature(out)) == "r2"


def test_string_count_grows_by_two_per_ghost():
    load = idem("4,3,2", 3, 2)
    ghosts = sum(1 for s in load.strings if s.kind == GHOST and s.residue == 0)
    assert len(subdivide_idempotent(load).strings) == len(load.strings) + 2 * ghosts


def test_nonzero_edge_by_rotation():
    load = idem("3,2", 1, 2)
    direct = subdivide_idempotent(load, edge=1)
    via = rotate_loading(subdivide_idempotent(rotate_loading(load, -1), edge=0), 1)
    assert signature(direct) == signature(via)
    assert direct.e == 3


def test_params_validation():
    with pytest.raises(ValueError):
        SubdivisionParams(0, F(1, 10), F(1, 5))
    load = idem("2,1", 0, 2)
    gap = load.min_gap()
    with pytest.raises(ValueError, match="too large"):
        subdivide_idempotent(load, SubdivisionParams(0, gap, gap / 2))
    with pytest.raises(ValueError, match="edge"):
        subdivide_idempotent(load, params_for(load, 0), edge=1)


def test_one_side_needs_unsafe():
    load = idem("1,1", 1, 2)
    with pytest.raises(ValueError, match="unsafe"):
        subdivide_idempotent(load, side="left")


@pytest.mark.parametrize("lam, rho, side", [("1,1", 1, "left"), ("2", 0, "right")])
def test_one_sided_insertion_can_be_unsteady(lam, rho, side):
    out = subdivide_idempotent(idem(lam, rho, 2), side=side, unsafe=True)
    assert isinstance(normalize_right(out), Unsteady)
    assert not isinstance(normalize_right(subdivide_idempotent(idem(lam, rho, 2))), Unsteady)


@pytest.mark.parametrize("lam, rho, e", [("2,2,2", 1, 3), ("4,3,2", 3, 2), ("3,1", 0, 2), ("5,2", 1, 4)])
def test_idempotent_correspondence(lam, rho, e):
    rep = verify_idempotent_correspondence(Multipartition.parse(lam), Charge.of(rho), e + 1)
    assert rep.passed, rep.detail


# ---------------------------------------------------------------- diagrams


def _permutation_example():
    shifts, eps = unit_shifts(3), F(1, 100)
    red = [(("r",), 1, F(21, 10))]
    bottom = build_loading(
        3,
        [(("a",), 1, F(193, 100)), (("b",), 2, F(292, 100)), (("c",), 3, F(1284, 100)), (("d",), 0, F(1385, 100))],
        red,
        shifts,
        eps,
    )
    top = build_loading(
        3,
        [(("c",), 3, F(-209, 100)), (("d",), 0, F(-108, 100)), (("a",), 1, F(193, 100)), (("b",), 2, F(292, 100))],
        red,
        shifts,
        eps,
    )
    return straight_diagram(bottom, top)


def test_permutation_example():
    d = _permutation_example()
    s = subdivide_diagram(d)
    bottom = [x.residue for x in s.bottom.strings if x.kind == SOLID]
    top = [x.residue for x in s.top.strings if x.kind == SOLID]
    assert bottom == [2, 3, 4, 0, 1] and top == [4, 0, 1, 2, 3]
    assert [x.residue for x in s.bottom.strings if x.kind == RED] == [2]
    # the new solid follows its host ghost from bottom to top
    new = [k for k in s.bottom.by_key() if k[0] == "new"]
    assert len(new) == 1 and dict(s.match)[new[0]] == new[0]
    assert degree(s) - degree(d) == side_switches(d)


def test_identity_diagram_stays_identity():
    load = idem("3,2,1", 2, 3)
    d = straight_diagram(load, load)
    s = subdivide_diagram(d)
    assert s.bottom == s.top and degree(s) == 0


# ---------------------------------------------------------------- labels


def test_transport_labels():
    ch = Charge.of(0)
    t = transport_labels(Multipartition.parse("1"), Multipartition.parse("1"), ch, 3)
    assert (str(t.lam_plus), str(t.mu_plus), t.hypothesis_ok) == ("2", "2", True)
    t = transport_labels(Multipartition.parse("2,2,2"), Multipartition.parse("3,2,1"), Charge.of(1), 3)
    assert not t.hypothesis_ok
    t = transport_labels(Multipartition.parse(""), Multipartition.parse(""), ch, 3)
    assert t.lam_plus.size == 0 and t.hypothesis_ok
    assert t.to_json()["rho_plus"] == list(t.rho_plus)
    with pytest.raises(ValueError):
        transport_labels(Multipartition.parse("1"), Multipartition.parse("2"), ch, 3)
