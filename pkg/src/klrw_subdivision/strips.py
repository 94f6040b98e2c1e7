"""Maximal (i, i+1)-strips and the box construction of lambda^+.

Nodes of residue i and i+1 sit on pairs of adjacent diagonals.  Walking a pair
from its north-west end, an i-node steps right to an (i+1)-node and an
(i+1)-node steps down to an i-node, so every pair of diagonals with contents
(d, d+1), res(d) = i, carries exactly one staircase.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Any, Iterable

from .abacus import k_lambda, lambda_plus_abacus
from .partitions import Charge, Multipartition, Node, Partition, residue

_TYPES = {(0, 0): "a", (0, 1): "b", (1, 1): "c", (1, 0): "d"}


@dataclass(frozen=True)
class Strip:
    nodes: tuple[Node, ...]
    steps: tuple[str, ...]
    start_res: int
    end_res: int
    type: str
    edge: int

    @property
    def trivial(self) -> bool:
        return len(self.nodes) == 1

    @property
    def component(self) -> int:
        return self.nodes[0].m

    def to_json(self) -> dict[str, Any]:
        return {
            "nodes": [list(n) for n in self.nodes],
            "steps": list(self.steps),
            "start_res": self.start_res,
            "end_res": self.end_res,
            "type": self.type,
            "trivial": self.trivial,
        }


def _strip_type(start_is_lower: bool, end_is_lower: bool) -> str:
    return _TYPES[(0 if start_is_lower else 1, 0 if end_is_lower else 1)]


def _component_strips(p: Partition, m: int, rho: int, e_prime: int, i: int) -> list[Strip]:
    j = (i + 1) % e_prime
    res = {(r, c): residue((m, r, c), rho, e_prime) for r, c in p.cells()}
    starts = []
    for (r, c), x in res.items():
        if x == i:
            prev = (r - 1, c)  # only an (i+1)-node above can precede an i-node
            if not (prev in res and res[prev] == j):
                starts.append((r, c))
        elif x == j:
            prev = (r, c - 1)  # only an i-node on the left can precede an (i+1)-node
            if not (prev in res and res[prev] == i):
                starts.append((r, c))
    out = []
    for start in sorted(starts):
        nodes = [start]
        steps: list[str] = []
        while True:
            r, c = nodes[-1]
            if res[(r, c)] == i and (r, c + 1) in res and res[(r, c + 1)] == j:
                nodes.append((r, c + 1))
                steps.append("right")
            elif res[(r, c)] == j and (r + 1, c) in res and res[(r + 1, c)] == i:
                nodes.append((r + 1, c))
                steps.append("down")
            else:
                break
        s_res, e_res = res[nodes[0]], res[nodes[-1]]
        out.append(
            Strip(
                tuple(Node(m, r, c) for r, c in nodes),
                tuple(steps),
                s_res,
                e_res,
                _strip_type(s_res == i, e_res == i),
                i,
            )
        )
    return out


def maximal_strips(lam: Multipartition, charge: Charge, e_prime: int, edge: int = 0) -> list[Strip]:
    """All maximal strips, component by component, north-west ends in reading order."""
    lam = Multipartition.coerce(lam)
    out: list[Strip] = []
    for m, p in enumerate(lam.components, 1):
        out.extend(_component_strips(p, m, charge.rho[m - 1], e_prime, edge % e_prime))
    return out


@dataclass(frozen=True)
class BoxImage:
    """lambda^+ as an annotated node map: new position -> new residue."""

    partition: Partition
    rho_plus: int
    fill: dict[tuple[int, int], int]
    inserted: frozenset[tuple[int, int]]


def _relabel(x: int, edge: int) -> int:
    return x if x <= edge else x + 1


def _component_plus_box(p: Partition, rho: int, e_prime: int, edge: int) -> BoxImage:
    """Apply every strip replacement at once.

    For a strip starting at an edge-node (types a, b) each edge-node receives a
    new node directly to its right, pushing the rest of its row right.  For a
    strip starting at an (edge+1)-node (types c, d) each edge-node receives a new
    node directly above it, pushing the rest of its column down.  All other
    residues move up by one past the edge.
    """
    strips = _component_strips(p, 1, rho, e_prime, edge)
    in_row: set[tuple[int, int]] = set()
    in_col: set[tuple[int, int]] = set()
    for s in strips:
        target = in_row if s.type in "ab" else in_col
        for n in s.nodes:
            if residue(n, rho, e_prime) == edge:
                target.add((n.r, n.c))
    def moved(r: int, c: int) -> tuple[int, int]:
        dc = sum(1 for (zr, zc) in in_row if zr == r and zc < c)
        dr = sum(1 for (zr, zc) in in_col if zc == c and zr <= r)
        if dc and dr:
            raise AssertionError(f"node {(r, c)} pushed both right and down")
        return r + dr, c + dc

    fill: dict[tuple[int, int], int] = {}
    for r, c in p.cells():
        fill[moved(r, c)] = _relabel(residue((1, r, c), rho, e_prime), edge)
    inserted = set()
    for r, c in in_row:
        nr, nc = moved(r, c)
        inserted.add((nr, nc + 1))
    for r, c in in_col:
        nr, nc = moved(r, c)
        inserted.add((nr - 1, nc))
    if inserted & fill.keys() or len(inserted) != len(in_row) + len(in_col):
        raise AssertionError("inserted nodes collide")
    for pos in inserted:
        fill[pos] = edge + 1

    lengths = Counter(r for r, _ in fill)
    n_rows = max(lengths, default=0)
    parts = tuple(lengths[r] for r in range(1, n_rows + 1))
    for (r, c) in fill:
        if c > lengths[r]:
            raise AssertionError(f"row {r} of the image is not left-justified")
    new = Partition.of(parts)  # raises if the rows fail to decrease
    rho_plus = _relabel(rho % e_prime, edge)
    e2 = e_prime + 1
    for (r, c), x in fill.items():
        if (c - r + rho_plus) % e2 != x:
            raise AssertionError(f"residue {x} at {(r, c)} does not match the charge {rho_plus}")
    return BoxImage(new, rho_plus, fill, frozenset(inserted))


def lambda_plus_box(
    lam: Multipartition, charge: Charge, e_prime: int, edge: int = 0
) -> tuple[Multipartition, tuple[int, ...]]:
    lam = Multipartition.coerce(lam)
    imgs = [_component_plus_box(p, r, e_prime, edge) for p, r in zip(lam.components, charge.rho)]
    return Multipartition(tuple(i.partition for i in imgs)), tuple(i.rho_plus for i in imgs)


def box_image(p: Partition, rho: int, e_prime: int, edge: int = 0) -> BoxImage:
    return _component_plus_box(p, rho, e_prime, edge)


class ConstructionMismatch(AssertionError):
    pass


@dataclass(frozen=True)
class LambdaPlus:
    partition: Multipartition
    rho_plus: tuple[int, ...]
    left_charges: tuple[int, ...]
    right_charges: tuple[int, ...]
    agreement: bool

    def to_json(self) -> dict[str, Any]:
        return {
            "lambda_plus": self.partition.to_json(),
            "text": str(self.partition),
            "rho_plus": list(self.rho_plus),
            "left_charges": list(self.left_charges),
            "right_charges": list(self.right_charges),
            "agreement": self.agreement,
        }


def lambda_plus(lam: Multipartition, charge: Charge, e_prime: int, edge: int = 0, strict: bool = True) -> LambdaPlus:
    """lambda^+ from the box and abacus constructions, checked against each other."""
    lam = Multipartition.coerce(lam)
    box, rho_plus = lambda_plus_box(lam, charge, e_prime, edge)
    lefts = [lambda_plus_abacus(p, r, e_prime, edge, "left") for p, r in zip(lam.components, charge.rho)]
    rights = [lambda_plus_abacus(p, r, e_prime, edge, "right") for p, r in zip(lam.components, charge.rho)]
    ok = all(
        b == lf.partition == rt.partition for b, lf, rt in zip(box.components, lefts, rights)
    )
    # the left charge is the residue-fill charge whenever the component has a node
    ok = ok and all(
        (lf.charge - rp) % (e_prime + 1) == 0
        for p, lf, rp in zip(lam.components, lefts, rho_plus)
        if p
    )
    if strict and not ok:
        raise ConstructionMismatch(
            f"lambda={lam} rho={charge.rho} e'={e_prime} edge={edge}: box={box} "
            f"left={[str(x.partition) for x in lefts]} right={[str(x.partition) for x in rights]} "
            f"charges box={rho_plus} left={[x.charge for x in lefts]}"
        )
    return LambdaPlus(
        box, rho_plus, tuple(x.charge for x in lefts), tuple(x.charge for x in rights), ok
    )


def strip_type_counts(strips: Iterable[Strip]) -> Counter:
    return Counter(s.type for s in strips)


def nontrivial_lower_start_count(lam: Partition, rho: int, e_prime: int, edge: int = 0) -> int:
    """Number of nontrivial strips starting at an (edge+1)-node; equals k(lambda) at edge 0."""
    return sum(
        1
        for s in _component_strips(lam, 1, rho, e_prime, edge)
        if s.type in "cd" and not s.trivial
    )


__all__ = [
    "Strip",
    "BoxImage",
    "LambdaPlus",
    "ConstructionMismatch",
    "maximal_strips",
    "lambda_plus_box",
    "lambda_plus",
    "box_image",
    "strip_type_counts",
    "nontrivial_lower_start_count",
    "k_lambda",
]
