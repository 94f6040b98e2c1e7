import json
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from klrw_subdivision.diagram import (
    GHOST,
    RED,
    SOLID,
    GradedDim,
    InfeasibleOrder,
    Loading,
    StringDesc,
    Unsteady,
    affine_extend,
    blocks,
    brute_force_dominates,
    brute_force_sstd,
    build_loading,
    canonical_tableau,
    crossing_weight,
    degree,
    dominates,
    enumerate_sstd,
    format_signature,
    graded_cell_dim,
    idempotent_loading,
    inversions,
    is_semistandard,
    make_tableau,
    normalize_right,
    parse_signature,
    position,
    realize_order,
    semistandard_violations,
    signature,
    straight_diagram,
    tableau_diagram,
    tableau_permutation,
    unit_shifts,
)
from klrw_subdivision.partitions import Charge, Multipartition, Node, multipartitions_of, partitions_of
from klrw_subdivision.quiver import Quiver

TYPEDEG_IDEMPOTENT = "s3 s0 g3 s0 g0 s1 g0 s1 r1 g1 s2 g1 g2"
TYPEDEG_PLUS = "s4 s0 g4 s0 g0 s1 g0 s1 g1 s2 g1 s2 r2 g2 s3 g2 g3"


# ---------------------------------------------------------------- positions


def test_affine_extension():
    aff = affine_extend(Charge.of((1, 2), (1, 2)), 7, 3)
    assert aff.l_hat == 2 + 7 * 3
    assert aff.kappa_hat[:5] == (1, 2, 16, 30, 44)
    # rho_hat_m = floor((m - l - 1) / n) mod e' beyond the given components
    assert aff.rho_hat[:2] == (1, 2)
    assert aff.rho_hat[2:9] == (0,) * 7 and aff.rho_hat[9:16] == (1,) * 7 and aff.rho_hat[16:] == (2,) * 7


def test_positions_of_the_trio_type():
    # the type (3,2,1,1) with rho = (1,2), kappa = (1,2), e' = 3
    ch = Charge.of((1, 2), (1, 2))
    aff = affine_extend(ch, 7, 3)
    mu = Multipartition.parse("3,2,1,1")
    order = [tuple(b) for _, b in sorted((position(b, aff), b) for b in mu.nodes())]
    assert order == [(1, 4, 1), (1, 3, 1), (1, 2, 1), (1, 2, 2), (1, 1, 1), (1, 1, 2), (1, 1, 3)]
    assert position(Node(1, 1, 1), aff) == F(307, 322)


def test_eps_window():
    aff = affine_extend(Charge.of(0), 2, 3)
    with pytest.raises(ValueError):
        position(Node(1, 1, 1), aff, F(1, 2 * 2 * aff.l_hat))
    with pytest.raises(ValueError):
        position(Node(1, 1, 1), aff, 0)
    assert position(Node(1, 1, 1), aff, F(1, 100)) == F(0) - F(1, aff.l_hat) - F(2, 100)


# ---------------------------------------------------------------- loadings


def test_loading_rejects_collisions_and_disorder():
    s = StringDesc(SOLID, 0, F(0), ("a",))
    with pytest.raises(ValueError, match="collision"):
        Loading(2, (s, StringDesc(RED, 0, F(0), ("r",))), unit_shifts(2), F(1, 10))
    with pytest.raises(ValueError, match="sorted"):
        Loading(2, (StringDesc(RED, 0, F(1), ("r",)), s), unit_shifts(2), F(1, 10))


def test_typedeg_idempotent():
    load = idempotent_loading(Multipartition.parse("2,2,2"), Charge.of(1), Quiver(3))
    assert format_signature(signature(load)) == TYPEDEG_IDEMPOTENT
    assert len(load.of_kind(SOLID)) == len(load.of_kind(GHOST)) == 6


def test_exceptional_shift_keeps_unit_order():
    lam = Multipartition.parse("2,2,2,2")
    unit = idempotent_loading(lam, Charge.of(2), Quiver(4))
    small = idempotent_loading(lam, Charge.of(2), Quiver(4), exceptional=1)
    assert signature(small) == signature(unit)
    assert format_signature(signature(small)) == TYPEDEG_PLUS
    assert small.shifts[1] < 1 and all(small.shifts[r] == 1 for r in (0, 2, 3, 4))
    for s in small.of_kind(GHOST):
        assert s.x == small.by_key()[s.host].x + small.shifts[s.residue]


def test_realize_order_reports_infeasible():
    # two fixed reds sit between the solid and its ghost, further apart than the new shift
    reds = [(("r",), 1, F(1, 4)), (("q",), 1, F(3, 4))]
    load = build_loading(2, [(("a",), 0, F(0))], reds, unit_shifts(2), F(1, 100))
    new = [F(1, 4), F(1), F(1)]
    with pytest.raises(InfeasibleOrder):
        realize_order(load, new, move_reds=False)
    moved = realize_order(load, new)
    assert [s.key for s in moved.strings] == [s.key for s in load.strings]
    assert moved.shifts[0] == F(1, 4)


def test_signature_round_trip():
    sig = parse_signature("s0 g3 s0 g0 s1 | r1 | g1 s2 g1")
    assert format_signature(sig) == "s0 g3 s0 g0 s1 r1 g1 s2 g1"


# ---------------------------------------------------------------- pulling right


def _solo(solid_x, red_x, rho=0, i=0):
    half = [F(1, 2)] * 3
    return build_loading(2, [(("s",), i, solid_x)], [(("r",), rho, red_x)], half, F(1, 100))


def test_unsteady_and_steady_pictures():
    unsteady = _solo(F(1, 2), F(1, 4))
    steady = _solo(F(0), F(1, 4))
    res = normalize_right(unsteady)
    assert isinstance(res, Unsteady) and not res and res.key == ("s",)
    out = normalize_right(steady)
    assert not isinstance(out, Unsteady)
    assert format_signature(signature(out)) == "s0 r0 g0"
    # a red of another residue does not hold the solid back
    assert isinstance(normalize_right(_solo(F(0), F(1, 4), rho=1)), Unsteady)


def test_blocking_relation():
    q = Quiver(3)
    s = lambda k, r: StringDesc(k, r, F(0), ("x",))
    assert blocks(q, s(SOLID, 1), s(SOLID, 1)) and not blocks(q, s(SOLID, 1), s(SOLID, 2))
    assert blocks(q, s(SOLID, 1), s(RED, 1)) and not blocks(q, s(SOLID, 1), s(RED, 0))
    assert blocks(q, s(SOLID, 1), s(GHOST, 0)) and not blocks(q, s(SOLID, 0), s(GHOST, 1))
    assert blocks(q, s(GHOST, 0), s(SOLID, 1))


lam_cases = st.tuples(st.integers(2, 4), st.integers(0, 7)).flatmap(
    lambda t: st.tuples(st.sampled_from(list(partitions_of(t[1]))), st.integers(0, t[0]), st.just(t[0]))
)


@given(lam_cases)
def test_normalize_fixes_idempotents_and_is_idempotent(case):
    lam, rho, e = case
    load = idempotent_loading(Multipartition((lam,)), Charge.of(rho), Quiver(e))
    once = normalize_right(load)
    assert not isinstance(once, Unsteady)
    assert signature(once) == signature(load)
    assert signature(normalize_right(once)) == signature(once)


@given(st.integers(1, 4).flatmap(lambda n: st.sampled_from(list(multipartitions_of(n, 2)))), st.integers(0, 2), st.integers(0, 2))
def test_normalize_fixes_level_two_idempotents(lam, r1, r2):
    ch = Charge((r1, r2), (0, 2 * lam.size + 1))
    load = idempotent_loading(lam, ch, Quiver(2))
    assert signature(normalize_right(load)) == signature(load)


# ---------------------------------------------------------------- degrees


def test_crossing_weights():
    q = Quiver(3)
    s = lambda k, r: StringDesc(k, r, F(0), ("x",))
    assert crossing_weight(q, s(SOLID, 2), s(SOLID, 2)) == -2
    assert crossing_weight(q, s(SOLID, 2), s(SOLID, 3)) == 0
    assert crossing_weight(q, s(SOLID, 2), s(RED, 2)) == 1
    assert crossing_weight(q, s(GHOST, 1), s(SOLID, 2)) == 1
    assert crossing_weight(q, s(SOLID, 2), s(GHOST, 1)) == 1
    assert crossing_weight(q, s(GHOST, 2), s(SOLID, 1)) == 0


def test_identity_has_degree_zero():
    load = idempotent_loading(Multipartition.parse("3,1"), Charge.of(0), Quiver(2))
    assert degree(straight_diagram(load, load)) == 0


def test_swap_of_equal_residues():
    shifts = unit_shifts(2)
    bottom = build_loading(2, [(("a",), 0, F(0)), (("b",), 0, F(1, 2))], [], shifts, F(1, 100))
    d = straight_diagram(bottom, bottom, {("a",): ("b",), ("b",): ("a",)})
    # the solids cross (-2) and so do the ghosts, which carry no weight
    assert degree(d) == -2
    assert degree(d.reversed()) == -2


def test_straight_diagram_validation():
    shifts = unit_shifts(2)
    a = build_loading(2, [(("a",), 0, F(0))], [], shifts, F(1, 100))
    b = build_loading(2, [(("a",), 1, F(0))], [], shifts, F(1, 100))
    with pytest.raises(ValueError, match="residue"):
        straight_diagram(a, b)
    with pytest.raises(ValueError, match="bijection"):
        straight_diagram(a, a, {("a",): ("z",)})


# ---------------------------------------------------------------- tableaux


def _candidates(path):
    obj = json.loads(path.read_text())
    ch = Charge(tuple(obj["rho"]), tuple(obj["kappa"]))
    lam, mu = Multipartition.parse(obj["lam"]), Multipartition.parse(obj["mu"])
    out = {}
    for c in obj["candidates"]:
        t = make_tableau(lam, mu, ch, obj["e"] + 1, {Node(*a): Node(*b) for a, b in c["target"]})
        out[c["name"]] = t
    return out


def test_positioning_trio_t(data_dir):
    tabs = _candidates(data_dir / "positioning_trio_T.json")
    assert {k: is_semistandard(t) for k, t in tabs.items()} == {"T": True, "T'": False, "T''": False}


def test_positioning_trio_s(data_dir):
    tabs = _candidates(data_dir / "positioning_trio_S.json")
    assert {k: is_semistandard(t) for k, t in tabs.items()} == {"S": True, "S'": False, "S''": False}


def test_violation_messages():
    ch = Charge.of(0)
    vals = {Node(1, 1, 1): F(5), Node(1, 1, 2): F(7)}
    msgs = semistandard_violations(vals, ch)
    assert any("kappa" in m for m in msgs) and any("below" in m for m in msgs)


def test_make_tableau_rejects_non_bijection():
    lam = Multipartition.parse("2")
    with pytest.raises(ValueError):
        make_tableau(lam, lam, Charge.of(0), 3, {Node(1, 1, 1): Node(1, 1, 1), Node(1, 1, 2): Node(1, 1, 1)})


@pytest.mark.parametrize(
    "lam, rho, e_prime",
    [("2,1", 0, 3), ("3,1", 1, 3), ("2,2", 2, 4), ("1|1", None, 3), ("2|1", None, 4)],
)
def test_enumeration_matches_brute_force(lam, rho, e_prime):
    lam = Multipartition.parse(lam)
    ch = Charge.of(rho) if rho is not None else Charge((0, 1), (0, 2))
    for mu in multipartitions_of(lam.size, lam.level):
        a = sorted(t.target for t in enumerate_sstd(lam, mu, ch, e_prime))
        b = sorted(t.target for t in brute_force_sstd(lam, mu, ch, e_prime))
        assert a == b


def test_canonical_tableau_is_semistandard_identity():
    t = canonical_tableau(Multipartition.parse("3,2"), Charge.of(1), 3)
    assert is_semistandard(t)
    assert tableau_permutation(t) == tuple(range(1, 6))
    assert degree(tableau_diagram(t)) == 0


def test_inversions():
    assert inversions((2, 3, 1)) == 2 and inversions((1, 2, 3)) == 0


@pytest.mark.parametrize(
    "lam, rho, e_prime, text",
    [
        # frozen from the enumeration, which is checked against the brute-force filter above
        ("2,1", 0, 3, "2 + q"),
        ("3,1", 0, 3, "2q^-1 + 3 + 2q"),
        ("2,2", 0, 3, "3 + q"),
        ("3", 0, 3, "1 + 2q"),
        ("1,1,1", 0, 3, "1"),
        ("3,1", 1, 4, "4 + 3q"),
    ],
)
def test_graded_dimensions(lam, rho, e_prime, text):
    g = graded_cell_dim(Multipartition.parse(lam), Charge.of(rho), e_prime)
    assert str(g) == text
    assert g.at_one() == len(enumerate_sstd(Multipartition.parse(lam), None, Charge.of(rho), e_prime))


def test_graded_dim_text():
    assert str(GradedDim()) == "0"
    assert str(GradedDim.from_counter({-2: 1, 0: 0, 3: 2})) == "q^-2 + 2q^3"
    assert GradedDim.from_counter({1: 4})[1] == 4


@given(
    st.integers(1, 5).flatmap(lambda n: st.tuples(st.sampled_from(list(partitions_of(n))), st.sampled_from(list(partitions_of(n))))),
    st.integers(0, 3),
)
def test_dominance_matches_brute_force(pair, rho):
    lam, mu = (Multipartition((p,)) for p in pair)
    ch = Charge.of(rho)
    assert dominates(lam, mu, ch, 4) == brute_force_dominates(lam, mu, ch, 4)
