"""Partitions, multipartitions, charges, residues and beta numbers.

Nodes are 1-based triples ``(m, r, c)``: component, row, column.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, NamedTuple, Sequence

_EMPTY_TOKENS = {"", "0", "-", "∅", "()"}
_TERM = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


class Node(NamedTuple):
    m: int
    r: int
    c: int

    @property
    def content(self) -> int:
        return self.c - self.r


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, parts: Iterable[int]) -> "Partition":
        """Build from any sequence, dropping trailing zeros."""
        parts = list(parts)
        while parts and parts[-1] == 0:
            parts.pop()
        return cls(tuple(parts))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        text = text.strip()
        if text in _EMPTY_TOKENS:
            return cls()
        parts: list[int] = []
        for term in text.split(","):
            m = _TERM.match(term)
            if not m:
                raise ValueError(f"bad partition term {term!r} in {text!r}")
            parts.extend([int(m.group(1))] * int(m.group(2) or 1))
        return cls.of(parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __bool__(self) -> bool:
        return bool(self.parts)

    def part(self, i: int) -> int:
        """The 1-based part lambda_i, zero beyond the length."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def cells(self) -> Iterator[tuple[int, int]]:
        for r, p in enumerate(self.parts, 1):
            for c in range(1, p + 1):
                yield r, c

    def __contains__(self, rc: object) -> bool:
        r, c = rc  # type: ignore[misc]
        return 1 <= c <= self.part(r)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p >= c) for c in range(1, self.parts[0] + 1)))

    def __str__(self) -> str:
        return ",".join(map(str, self.parts))


@dataclass(frozen=True)
class Multipartition:
    components: tuple[Partition, ...]

    def __post_init__(self) -> None:
        comps = tuple(p if isinstance(p, Partition) else Partition.of(p) for p in self.components)
        if not comps:
            raise ValueError("a multipartition needs at least one component")
        object.__setattr__(self, "components", comps)

    @classmethod
    def of(cls, *components: Iterable[int] | Partition) -> "Multipartition":
        return cls(tuple(c if isinstance(c, Partition) else Partition.of(c) for c in components))

    @classmethod
    def parse(cls, text: str) -> "Multipartition":
        return cls(tuple(Partition.parse(t) for t in text.split("|")))

    @classmethod
    def coerce(cls, value: "Multipartition | Partition | str | Sequence[int]") -> "Multipartition":
        if isinstance(value, Multipartition):
            return value
        if isinstance(value, Partition):
            return cls((value,))
        if isinstance(value, str):
            return cls.parse(value)
        return cls((Partition.of(value),))

    @property
    def level(self) -> int:
        return len(self.components)

    @property
    def size(self) -> int:
        return sum(p.size for p in self.components)

    def __getitem__(self, m: int) -> Partition:
        """1-based component access."""
        return self.components[m - 1]

    def nodes(self) -> Iterator[Node]:
        for m, p in enumerate(self.components, 1):
            for r, c in p.cells():
                yield Node(m, r, c)

    def __contains__(self, node: object) -> bool:
        m, r, c = node  # type: ignore[misc]
        return 1 <= m <= self.level and (r, c) in self.components[m - 1]

    def padded(self, level: int) -> "Multipartition":
        if level < self.level:
            raise ValueError("cannot pad to a smaller level")
        return Multipartition(self.components + (Partition(),) * (level - self.level))

    def __str__(self) -> str:
        return "|".join(str(p) for p in self.components)

    def to_json(self) -> dict[str, Any]:
        return {"components": [list(p.parts) for p in self.components]}

    @classmethod
    def from_json(cls, obj: dict[str, Any] | str) -> "Multipartition":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(tuple(Partition.of(c) for c in obj["components"]))


@dataclass(frozen=True)
class Charge:
    """Residue labels ``rho`` and red-string positions ``kappa``.

    ``rho`` entries are arbitrary integers; they are reduced modulo e' only when
    a residue is needed.  When ``kappa`` is omitted it defaults to ``0, 1, ..``.
    """

    rho: tuple[int, ...]
    kappa: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        rho = tuple(int(r) for r in self.rho)
        kappa = tuple(self.kappa) if self.kappa else tuple(range(len(rho)))
        if not rho:
            raise ValueError("charge needs at least one entry")
        if len(kappa) != len(rho):
            raise ValueError("rho and kappa must have the same length")
        if any(a >= b for a, b in zip(kappa, kappa[1:])):
            raise ValueError(f"kappa must be strictly increasing: {kappa}")
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "kappa", kappa)

    @classmethod
    def of(cls, rho: int | Sequence[int], kappa: Sequence[int] | None = None) -> "Charge":
        if isinstance(rho, int):
            rho = (rho,)
        return cls(tuple(rho), tuple(kappa) if kappa else ())

    @property
    def level(self) -> int:
        return len(self.rho)

    def to_json(self) -> dict[str, Any]:
        return {"rho": list(self.rho), "kappa": list(self.kappa)}


def residue(node: Node | tuple[int, int, int], rho: int, e_prime: int) -> int:
    _, r, c = node
    return (c - r + rho) % e_prime


@dataclass(frozen=True)
class ResidueDiagram:
    lam: Multipartition
    e_prime: int
    fill: dict[Node, int]

    def __getitem__(self, node: Node) -> int:
        return self.fill[node]

    def __len__(self) -> int:
        return len(self.fill)

    def rows(self) -> list[list[list[int]]]:
        """Residues per component, per row."""
        return [
            [[self.fill[Node(m, r, c)] for c in range(1, p + 1)] for r, p in enumerate(comp.parts, 1)]
            for m, comp in enumerate(self.lam.components, 1)
        ]

    def render(self) -> str:
        blocks = []
        for comp in self.rows():
            blocks.append("\n".join(" ".join(str(x) for x in row) for row in comp) or "(empty)")
        return "\n--\n".join(blocks)


def residue_diagram(lam: Multipartition, charge: Charge, e_prime: int) -> ResidueDiagram:
    lam = Multipartition.coerce(lam)
    if charge.level != lam.level:
        raise ValueError("charge level differs from the multipartition level")
    fill = {node: residue(node, charge.rho[node.m - 1], e_prime) for node in lam.nodes()}
    return ResidueDiagram(lam, e_prime, fill)


@dataclass(frozen=True)
class BetaSequence:
    beta: tuple[int, ...]
    e_prime: int

    def decomposition(self, i: int) -> tuple[int, int]:
        """(a_i, b_i) with beta_i = a_i e' + b_i and 0 <= b_i < e'."""
        return divmod(self.beta[i - 1], self.e_prime)


def beta(lam: Partition, rho: int, i: int) -> int:
    return lam.part(i) + rho - i


def beta_numbers(lam: Partition, rho: int, count: int, e_prime: int = 1) -> BetaSequence:
    if count < lam.length:
        raise ValueError("count must be at least the length of the partition")
    return BetaSequence(tuple(beta(lam, rho, i) for i in range(1, count + 1)), e_prime)


def count_residue_nodes(lam: Multipartition, charge: Charge, e_prime: int, i: int) -> int:
    lam = Multipartition.coerce(lam)
    i %= e_prime
    return sum(1 for node in lam.nodes() if residue(node, charge.rho[node.m - 1], e_prime) == i)


def partitions_of(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of n in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield Partition()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            yield Partition((first,) + rest.parts)


def multipartitions_of(n: int, level: int) -> Iterator[Multipartition]:
    if level == 1:
        for p in partitions_of(n):
            yield Multipartition((p,))
        return
    for k in range(n, -1, -1):
        for p in partitions_of(k):
            for rest in multipartitions_of(n - k, level - 1):
                yield Multipartition((p,) + rest.components)
