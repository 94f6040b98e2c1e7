"""Truncated abacus displays and the runner-insertion construction of lambda_+.

A bead at integer position ``p`` sits on runner ``p mod e'`` at level
``p // e'``; levels grow downwards.  Every position below the truncation level
``N`` is implicitly occupied, so only beads at level ``>= N`` are stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Literal

from .partitions import Charge, Multipartition, Partition, beta

Side = Literal["left", "right"]


@dataclass(frozen=True)
class AbacusConfig:
    e_prime: int
    N: int
    beads: frozenset[int]

    def __post_init__(self) -> None:
        if self.e_prime < 1:
            raise ValueError("an abacus needs at least one runner")
        beads = frozenset(int(p) for p in self.beads)
        low = self.N * self.e_prime
        bad = sorted(p for p in beads if p < low)
        if bad:
            raise ValueError(f"beads {bad} lie above the truncation level {self.N}")
        object.__setattr__(self, "beads", beads)

    @property
    def charge(self) -> int:
        return len(self.beads) + self.N * self.e_prime

    @property
    def top(self) -> int:
        """Lowest displayed level index (the bottom-most row of the display)."""
        if not self.beads:
            return self.N
        return max(self.N, max(self.beads) // self.e_prime)

    def level_row(self, level: int) -> str:
        base = level * self.e_prime
        return "".join("b" if base + b in self.beads else "." for b in range(self.e_prime))

    def rows(self, last: int | None = None) -> list[str]:
        last = self.top if last is None else last
        return [self.level_row(a) for a in range(self.N, last + 1)]

    def render(self, last: int | None = None) -> str:
        width = max(len(str(self.e_prime - 1)), 1)
        head = " ".join(str(b).rjust(width) for b in range(self.e_prime))
        lines = [" " * 5 + head]
        for a, row in zip(range(self.N, (self.top if last is None else last) + 1), self.rows(last)):
            lines.append(f"{a:>4} " + " ".join(ch.rjust(width) for ch in row))
        return "\n".join(lines)

    def to_json(self) -> dict[str, Any]:
        return {"e_prime": self.e_prime, "N": self.N, "beads": sorted(self.beads, reverse=True)}

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> "AbacusConfig":
        return cls(int(obj["e_prime"]), int(obj["N"]), frozenset(obj["beads"]))

    def decoded(self) -> tuple[Partition, int]:
        return from_abacus(self)


def max_truncation_N0(lam: Partition, rho: int, e_prime: int) -> int:
    """Largest N for which the truncated display still records every part.

    With beta_{t+1} = a e' + b this is a+1 when b = e'-1 and a otherwise.
    """
    a, b = divmod(beta(lam, rho, lam.length + 1), e_prime)
    return a + 1 if b == e_prime - 1 else a


def default_truncation(lam: Partition, rho: int, e_prime: int) -> int:
    return max_truncation_N0(lam, rho, e_prime) - 2


def to_abacus(lam: Partition, rho: int, e_prime: int, N: int | None = None) -> AbacusConfig:
    n0 = max_truncation_N0(lam, rho, e_prime)
    if N is None:
        N = n0 - 2
    if N > n0:
        raise ValueError(f"truncation level {N} exceeds N0 = {n0} and would lose parts of {lam}")
    low = N * e_prime
    beads = set()
    i = 1
    while True:
        b = beta(lam, rho, i)
        if b < low:
            break
        beads.add(b)
        i += 1
    return AbacusConfig(e_prime, N, frozenset(beads))


def from_abacus(a: AbacusConfig) -> tuple[Partition, int]:
    rho = a.charge
    ordered = sorted(a.beads, reverse=True)
    parts = [p - rho + i for i, p in enumerate(ordered, 1)]
    return Partition.of(parts), rho


def k_lambda(lam: Partition, rho: int, e_prime: int) -> int:
    """#{i >= 1 : i = rho mod e', lambda_{i+1} > 0}."""
    return sum(1 for i in range(1, lam.length) if (i - rho) % e_prime == 0)


def shift_beads(a: AbacusConfig, delta: int) -> AbacusConfig:
    """Move every bead one position right (+1) or left (-1).

    Shifting right pulls the implicit bead at ``N e' - 1`` into view.  Shifting
    left needs the first displayed position to hold a bead, otherwise the gap
    would fall below the truncation level.
    """
    low = a.N * a.e_prime
    if delta == 1:
        return AbacusConfig(a.e_prime, a.N, frozenset({p + 1 for p in a.beads} | {low}))
    if delta == -1:
        if low not in a.beads:
            raise ValueError(
                "not enough truncation margin to shift left; rebuild the abacus with a smaller N"
            )
        return AbacusConfig(a.e_prime, a.N, frozenset(p - 1 for p in a.beads if p != low))
    raise ValueError("delta must be +1 or -1")


def _insert_runner(a: AbacusConfig, slot: int, last_level: int) -> AbacusConfig:
    """Insert an empty runner before runner ``slot`` and bead it down to ``last_level``.

    ``slot == e'`` appends the runner on the right.
    """
    e1 = a.e_prime + 1
    beads = set()
    for p in a.beads:
        lev, run = divmod(p, a.e_prime)
        beads.add(lev * e1 + run + (1 if run >= slot else 0))
    for lev in range(a.N, last_level + 1):
        beads.add(lev * e1 + slot)
    return AbacusConfig(e1, a.N, frozenset(beads))


@dataclass(frozen=True)
class RunnerInsertion:
    partition: Partition
    charge: int
    side: str
    before: AbacusConfig
    after: AbacusConfig


def _conjugated_charge(rho: int, e_prime: int, edge: int) -> int:
    r = rho % e_prime
    return r - edge if r >= edge else r + e_prime - edge


def lambda_plus_abacus(
    lam: Partition,
    rho: int,
    e_prime: int,
    edge: int = 0,
    side: Side = "left",
    N: int | None = None,
) -> RunnerInsertion:
    """lambda_+ by adding a runner to the abacus of (lam, rho).

    ``right`` appends a runner after runner e'-1 holding k + N0 - N beads;
    ``left`` prepends one holding k + N0 - N + 1.  For a nonzero edge the charge
    is first moved so that the edge becomes ``0 -> 1``, the construction runs
    there, and the charge is moved back.  The returned charge is the integer
    charge of the final display.
    """
    if not 0 <= edge < e_prime:
        raise ValueError(f"edge must lie in 0..{e_prime - 1}")
    r0 = _conjugated_charge(rho, e_prime, edge) if edge else rho
    n0 = max_truncation_N0(lam, r0, e_prime)
    k = k_lambda(lam, r0, e_prime)
    if N is None:
        N = n0 - 2
    before = to_abacus(lam, r0, e_prime, N)
    if side == "right":
        after = _insert_runner(before, e_prime, n0 + k - 1)
        charge = r0 + n0 + k
    elif side == "left":
        after = _insert_runner(before, 0, n0 + k)
        charge = r0 + n0 + k + 1
    else:
        raise ValueError(f"side must be left or right, got {side!r}")
    if after.charge != charge:
        raise AssertionError("bead count disagrees with the charge formula")
    part, _ = from_abacus(after)
    if edge:
        # undo the conjugation: the frame display is the direct one moved sideways
        r = rho % e_prime
        charge += (rho // e_prime) * (e_prime + 1) + (edge if r >= edge else edge - e_prime - 1)
    return RunnerInsertion(part, charge, side, before, after)


def insert_runner_direct(lam: Partition, rho: int, e_prime: int, edge: int, N: int | None = None) -> RunnerInsertion:
    """lambda_+ for the edge ``edge -> edge+1`` without moving the charge.

    A runner is placed between runners edge-1 and edge, and it receives the
    beads the empty partition of the same charge would have there: every
    position of the new runner below ``rho``.
    """
    if not 0 <= edge < e_prime:
        raise ValueError(f"edge must lie in 0..{e_prime - 1}")
    if N is None:
        N = min(default_truncation(lam, rho, e_prime), rho // e_prime - 2)
    before = to_abacus(lam, rho, e_prime, N)
    e1 = e_prime + 1
    last = rho // e_prime - (0 if rho % e_prime > edge else 1)
    after = _insert_runner(before, edge, last)
    part, charge = from_abacus(after)
    return RunnerInsertion(part, charge, "direct", before, after)


def lambda_plus_formula(lam: Partition, rho: int, e_prime: int) -> Partition:
    """Closed form of right insertion at edge 0, row by row.

    An old bead at level a keeps its place in the order after the j new beads on
    levels a..N0+k-1, and its row grows by max(a - N0 - k, 0).  A new bead at
    level L gives the row (L+1)(e'+1) - 1 - rho_+ + index.
    """
    n0 = max_truncation_N0(lam, rho, e_prime)
    k = k_lambda(lam, rho, e_prime)
    top_new = n0 + k - 1
    rows: dict[int, int] = {}
    old_levels = []
    i = 1
    while True:
        b = beta(lam, rho, i)
        a = b // e_prime
        if a < n0:
            break
        old_levels.append(a)
        j = max(0, top_new - a + 1) if a <= top_new else 0
        rows[i + j] = lam.part(i) + max(a - n0 - k, 0)
        i += 1
    rho_plus = rho + n0 + k
    for L in range(n0, top_new + 1):
        idx = sum(1 for a in old_levels if a > L) + (top_new - L) + 1
        rows[idx] = L * (e_prime + 1) + e_prime - rho_plus + idx
    parts = [rows[x] for x in sorted(rows)]
    return Partition.of(parts)


def lambda_plus_abacus_multi(
    lam: Multipartition, charge: Charge, e_prime: int, edge: int = 0, side: Side = "left"
) -> tuple[Multipartition, tuple[int, ...]]:
    lam = Multipartition.coerce(lam)
    out = [lambda_plus_abacus(p, r, e_prime, edge, side) for p, r in zip(lam.components, charge.rho)]
    return Multipartition(tuple(o.partition for o in out)), tuple(o.charge for o in out)
