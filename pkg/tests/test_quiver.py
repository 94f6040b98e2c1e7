import pytest

from klrw_subdivision.quiver import Quiver, cartan_pairing, subdivide_quiver


def test_edges_form_a_cycle():
    q = Quiver(3)
    assert list(q.edges()) == [(0, 1), (1, 2), (2, 3), (3, 0)]
    assert q.size == 4


@pytest.mark.parametrize("e", [2, 3, 5])
def test_cartan_matrix_type_a(e):
    q = Quiver(e)
    for i in q.vertices:
        assert cartan_pairing(q, i, i) == 2
        assert cartan_pairing(q, i, i + 1) == -1
        assert cartan_pairing(q, i + 1, i) == -1
    assert cartan_pairing(q, 0, 2) == (0 if e > 2 else -1)


def test_e_one_has_doubled_edge():
    assert cartan_pairing(Quiver(1), 0, 1) == -2


def test_rejects_e_zero():
    with pytest.raises(ValueError):
        Quiver(0)


@pytest.mark.parametrize("edge", [0, 1, 2, 3])
def test_subdivision_relabels(edge):
    new, m = subdivide_quiver(Quiver(3), edge)
    assert new.e == 4
    assert m.inserted == edge + 1
    images = [m(r) for r in range(4)]
    assert sorted(images + [m.inserted]) == list(range(5))
    for r in range(4):
        assert m.inverse(m(r)) == r
    # every old edge r -> r+1 other than the subdivided one survives
    for a, b in Quiver(3).edges():
        if a != edge:
            assert new.has_edge(m(a), m(b))
    assert new.has_edge(m(edge), m.inserted) and new.has_edge(m.inserted, m(edge + 1 if edge < 3 else 0))


def test_inverse_of_inserted_vertex_fails():
    _, m = subdivide_quiver(Quiver(2), 0)
    with pytest.raises(ValueError):
        m.inverse(1)
