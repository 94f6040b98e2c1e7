import pytest
from hypothesis import given, strategies as st

from klrw_subdivision.abacus import (
    AbacusConfig,
    from_abacus,
    insert_runner_direct,
    k_lambda,
    lambda_plus_abacus,
    lambda_plus_formula,
    max_truncation_N0,
    shift_beads,
    to_abacus,
)
from klrw_subdivision.partitions import Partition, partitions_of


def test_display_of_432():
    a = to_abacus(Partition((4, 3, 2)), 3, 4, N=-1)
    assert max_truncation_N0(Partition((4, 3, 2)), 3, 4) == 0
    assert k_lambda(Partition((4, 3, 2)), 3, 4) == 0
    assert a.rows() == ["bbbb", "..b.", "b.b."]
    ins = lambda_plus_abacus(Partition((4, 3, 2)), 3, 4, side="right", N=-1)
    assert ins.after.rows() == ["bbbbb", "..b..", "b.b.."]
    assert ins.partition == Partition((5, 4, 2))
    assert ins.charge == 3


def test_display_of_4444():
    lam = Partition((4, 4, 4, 4))
    assert max_truncation_N0(lam, 1, 4) == -1
    assert k_lambda(lam, 1, 4) == 1
    assert to_abacus(lam, 1, 4, N=-2).rows() == ["bbbb", "b...", ".bbb", "b..."]
    ins = lambda_plus_abacus(lam, 1, 4, side="right", N=-2)
    assert ins.after.rows() == ["bbbbb", "b...b", ".bbb.", "b...."]
    assert ins.partition == Partition((5, 4, 4, 4, 3))
    assert ins.charge == 1


def test_empty_partition():
    a = to_abacus(Partition(), 0, 3)
    p, rho = from_abacus(a)
    assert p == Partition() and rho == 0
    assert all(set(row) <= {"b", "."} for row in a.rows())


def test_truncation_above_N0_rejected():
    with pytest.raises(ValueError, match="N0"):
        to_abacus(Partition((4, 3, 2)), 3, 4, N=1)


def test_json_round_trip():
    a = to_abacus(Partition((5, 3, 3, 2, 1)), 2, 4)
    assert AbacusConfig.from_json(a.to_json()) == a


def test_render_has_runner_header():
    text = to_abacus(Partition((2, 1)), 0, 3).render()
    assert text.splitlines()[0].split() == ["0", "1", "2"]


def test_shift_left_needs_margin():
    a = to_abacus(Partition((1,)), 0, 3, N=max_truncation_N0(Partition((1,)), 0, 3))
    if a.N * 3 not in a.beads:
        with pytest.raises(ValueError):
            shift_beads(a, -1)


def test_side_validation():
    with pytest.raises(ValueError):
        lambda_plus_abacus(Partition((1,)), 0, 3, side="middle")
    with pytest.raises(ValueError):
        lambda_plus_abacus(Partition((1,)), 0, 3, edge=3)


small = st.tuples(st.integers(1, 5), st.integers(0, 8)).flatmap(
    lambda t: st.tuples(st.sampled_from(list(partitions_of(t[1]))), st.integers(-3, 3 * (t[0] + 1)), st.just(t[0] + 1))
)


@given(small)
def test_round_trip_and_bead_count(case):
    lam, rho, e_prime = case
    n0 = max_truncation_N0(lam, rho, e_prime)
    for N in (n0, n0 - 1, n0 - 3):
        a = to_abacus(lam, rho, e_prime, N)
        assert len(a.beads) == rho - N * e_prime
        assert from_abacus(a) == (lam, rho)


@given(small)
def test_bead_shift_keeps_partition(case):
    lam, rho, e_prime = case
    a = to_abacus(lam, rho, e_prime)
    right = shift_beads(a, 1)
    assert from_abacus(right) == (lam, rho + 1)
    assert from_abacus(shift_beads(right, -1)) == (lam, rho)


@given(small)
def test_closed_form_matches_right_insertion(case):
    lam, rho, e_prime = case
    assert lambda_plus_formula(lam, rho, e_prime) == lambda_plus_abacus(lam, rho, e_prime, side="right").partition


@given(small, st.data())
def test_left_and_right_insertion_agree(case, data):
    lam, rho, e_prime = case
    edge = data.draw(st.integers(0, e_prime - 1))
    left = lambda_plus_abacus(lam, rho, e_prime, edge, "left")
    right = lambda_plus_abacus(lam, rho, e_prime, edge, "right")
    assert left.partition == right.partition
    assert insert_runner_direct(lam, rho, e_prime, edge).partition == left.partition
