"""Affine type A quivers, the Cartan pairing and edge subdivision."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

Residue = int


@dataclass(frozen=True)
class Quiver:
    """The cyclic quiver of affine type A_e.

    Vertices are ``0..e`` and the edges are ``i -> i+1`` read modulo ``e+1``.
    For ``e == 1`` the two edges ``0 -> 1`` and ``1 -> 0`` are parallel, which
    doubles the off-diagonal Cartan entry.
    """

    e: int

    def __post_init__(self) -> None:
        if not isinstance(self.e, int) or self.e < 1:
            raise ValueError(f"quiver needs e >= 1, got {self.e!r}")

    @property
    def size(self) -> int:
        """Number of vertices, written e' elsewhere."""
        return self.e + 1

    @property
    def vertices(self) -> range:
        return range(self.size)

    def edges(self) -> Iterator[tuple[Residue, Residue]]:
        for i in self.vertices:
            yield i, (i + 1) % self.size

    def norm(self, r: int) -> Residue:
        return r % self.size

    def has_edge(self, i: Residue, j: Residue) -> bool:
        """True when there is an arrow i -> j."""
        return self.norm(i + 1) == self.norm(j)

    def cartan_pairing(self, i: Residue, j: Residue) -> int:
        return cartan_pairing(self, i, j)


def cartan_pairing(q: Quiver, i: Residue, j: Residue) -> int:
    i, j = q.norm(i), q.norm(j)
    if i == j:
        return 2
    if q.e == 1:
        return -2
    if q.has_edge(i, j) or q.has_edge(j, i):
        return -1
    return 0


@dataclass(frozen=True)
class RelabelMap:
    """Vertex relabelling produced by subdividing the edge ``edge -> edge+1``.

    Old vertices ``r <= edge`` keep their label, the others move up by one, and
    the new vertex is ``edge + 1``.
    """

    old: Quiver
    edge: Residue

    @property
    def new(self) -> Quiver:
        return Quiver(self.old.e + 1)

    @property
    def inserted(self) -> Residue:
        return self.edge + 1

    def __call__(self, r: Residue) -> Residue:
        return relabel_residue(self, r)

    def inverse(self, r: Residue) -> Residue:
        """Old label of a new vertex; the inserted vertex has no preimage."""
        r = self.new.norm(r)
        if r == self.inserted:
            raise ValueError(f"vertex {r} is the inserted vertex")
        return r if r <= self.edge else r - 1

    def as_dict(self) -> dict[int, int]:
        return {r: self(r) for r in self.old.vertices}


def subdivide_quiver(q: Quiver, edge: Residue) -> tuple[Quiver, RelabelMap]:
    if not 0 <= edge <= q.e:
        raise ValueError(f"edge must lie in 0..{q.e}, got {edge}")
    m = RelabelMap(q, edge)
    return m.new, m


def relabel_residue(m: RelabelMap, r: Residue) -> Residue:
    r = m.old.norm(r)
    return r if r <= m.edge else r + 1
