"""Loadings of weighted KLRW diagrams in affine type A.

A loading is a finite set of solid, ghost and red strings at pairwise distinct
rational x-coordinates.  A straight diagram joins two loadings by straight
segments; its degree only depends on which pairs of strings swap order.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Iterator, Mapping, Sequence

from .partitions import Charge, Multipartition, Node, multipartitions_of, residue
from .quiver import Quiver

SOLID, GHOST, RED = "solid", "ghost", "red"
_ABBREV = {SOLID: "s", GHOST: "g", RED: "r"}

Key = tuple


# ---------------------------------------------------------------- affine data


@dataclass(frozen=True)
class AffineData:
    n: int
    level: int
    e_prime: int
    l_hat: int
    kappa_hat: tuple[int, ...]
    rho_hat: tuple[int, ...]


def affine_extend(charge: Charge, n: int, e_prime: int) -> AffineData:
    """Extend (rho, kappa) to l_hat = l + n e' components.

    Beyond the l given components kappa continues as kappa_l + 2n(m-l) and rho
    as floor((m-l-1)/n) mod e'.
    """
    l = charge.level
    l_hat = l + n * e_prime
    k_last = charge.kappa[-1]
    kappa = list(charge.kappa) + [k_last + 2 * n * (m - l) for m in range(l + 1, l_hat + 1)]
    rho = [r % e_prime for r in charge.rho] + [((m - l - 1) // n) % e_prime for m in range(l + 1, l_hat + 1)]
    return AffineData(n, l, e_prime, l_hat, tuple(kappa), tuple(rho))


def default_eps(aff: AffineData) -> Fraction:
    return Fraction(1, 4 * max(aff.n, 1) * aff.l_hat)


def position(node: Node | tuple[int, int, int], aff: AffineData, eps: Fraction | None = None) -> Fraction:
    m, r, c = node
    if eps is None:
        eps = default_eps(aff)
    eps = Fraction(eps)
    if not 0 < eps < Fraction(1, 2 * max(aff.n, 1) * aff.l_hat):
        raise ValueError(f"eps={eps} outside (0, 1/(2 n l_hat))")
    if not 1 <= m <= aff.l_hat:
        raise ValueError(f"component {m} outside 1..{aff.l_hat}")
    return aff.kappa_hat[m - 1] + (c - r) - Fraction(m, aff.l_hat) - (c + r) * eps


# ---------------------------------------------------------------- loadings


@dataclass(frozen=True)
class StringDesc:
    kind: str
    residue: int
    x: Fraction
    key: Key
    host: Key | None = None

    @property
    def label(self) -> str:
        return f"{_ABBREV[self.kind]}{self.residue}"


@dataclass(frozen=True)
class Loading:
    """Strings sorted by x.  ``shifts[i]`` is the ghost offset of a solid of residue i."""

    e: int
    strings: tuple[StringDesc, ...]
    shifts: tuple[Fraction, ...]
    eps: Fraction

    def __post_init__(self) -> None:
        xs = [s.x for s in self.strings]
        if any(a >= b for a, b in zip(xs, xs[1:])):
            if len(set(xs)) != len(xs):
                dup = [x for x, k in Counter(xs).items() if k > 1]
                raise ValueError(f"coordinate collision at {dup}")
            raise ValueError("strings must be sorted by x")
        if len(self.shifts) != self.e + 1:
            raise ValueError("one ghost shift per vertex is needed")

    @property
    def quiver(self) -> Quiver:
        return Quiver(self.e)

    def of_kind(self, kind: str) -> list[StringDesc]:
        return [s for s in self.strings if s.kind == kind]

    def by_key(self) -> dict[Key, StringDesc]:
        return {s.key: s for s in self.strings}

    def min_gap(self) -> Fraction | None:
        xs = [s.x for s in self.strings]
        return min((b - a for a, b in zip(xs, xs[1:])), default=None)

    def __len__(self) -> int:
        return len(self.strings)


def ghost_key(solid_key: Key) -> Key:
    return ("ghost",) + tuple(solid_key)


def build_loading(
    e: int,
    solids: Iterable[tuple[Key, int, Fraction]],
    reds: Iterable[tuple[Key, int, Fraction]],
    shifts: Sequence[Fraction],
    eps: Fraction,
) -> Loading:
    """Assemble a loading from solid and red strings; ghosts are derived."""
    strings = []
    size = e + 1
    for key, res, x in solids:
        res %= size
        strings.append(StringDesc(SOLID, res, Fraction(x), key))
        strings.append(StringDesc(GHOST, res, Fraction(x) + shifts[res], ghost_key(key), key))
    for key, res, x in reds:
        strings.append(StringDesc(RED, res % size, Fraction(x), key))
    strings.sort(key=lambda s: s.x)
    return Loading(e, tuple(strings), tuple(Fraction(s) for s in shifts), Fraction(eps))


def solids_and_reds(load: Loading) -> tuple[list[tuple[Key, int, Fraction]], list[tuple[Key, int, Fraction]]]:
    solids = [(s.key, s.residue, s.x) for s in load.strings if s.kind == SOLID]
    reds = [(s.key, s.residue, s.x) for s in load.strings if s.kind == RED]
    return solids, reds


def unit_shifts(e: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(1) for _ in range(e + 1))


def _check_quiver(q: Quiver) -> None:
    if q.e < 2:
        raise ValueError("diagrams need e >= 2 (e = 1 has two ghosts per solid)")


def node_key(node: Node) -> Key:
    return ("node",) + tuple(node)


def red_key(m: int) -> Key:
    return ("red", m)


def idempotent_loading(
    lam: Multipartition,
    charge: Charge,
    quiver: Quiver,
    ghost_shifts: Sequence[Fraction] | None = None,
    eps: Fraction | None = None,
    exceptional: int | None = None,
) -> Loading:
    """The idempotent 1_lambda: solids at c_hat(node), ghosts, and reds at kappa.

    ``exceptional`` names a vertex whose ghosts sit at a small offset instead of
    one unit: an eighth of the smallest gap of the unit-shift loading.
    """
    _check_quiver(quiver)
    lam = Multipartition.coerce(lam)
    if lam.level != charge.level:
        raise ValueError("the multipartition and the charge have different levels")
    e_prime = quiver.size
    aff = affine_extend(charge, lam.size, e_prime)
    eps = default_eps(aff) if eps is None else Fraction(eps)
    solids = [
        (node_key(nd), residue(nd, charge.rho[nd.m - 1], e_prime), position(nd, aff, eps)) for nd in lam.nodes()
    ]
    reds = [(red_key(m), charge.rho[m - 1], Fraction(k)) for m, k in enumerate(charge.kappa, 1)]
    shifts = list(ghost_shifts) if ghost_shifts is not None else list(unit_shifts(quiver.e))
    load = build_loading(quiver.e, solids, reds, shifts, eps)
    if exceptional is not None:
        gap = load.min_gap() or Fraction(1)
        shifts[exceptional % e_prime] = gap / 8
        load = realize_order(load, shifts)
    return load


class InfeasibleOrder(ValueError):
    pass


def realize_order(load: Loading, shifts: Sequence[Fraction], move_reds: bool | None = None) -> Loading:
    """Move the solids so every ghost sits at its new shift and no two strings swap.

    Reds stay where they are when possible; otherwise (or with
    ``move_reds=True``) they only keep their place in the order.  Consecutive
    strings are kept a fixed small distance apart, which turns the problem into
    a system of difference constraints solved by Bellman-Ford.
    """
    if move_reds is None:
        try:
            return realize_order(load, shifts, False)
        except InfeasibleOrder:
            return realize_order(load, shifts, True)
    shifts = tuple(Fraction(x) for x in shifts)
    groups = _groups(load)
    owner = {m.key: g for g, ms in groups.items() for m in ms}
    off = {}
    for g, ms in groups.items():
        off[ms[0].key] = Fraction(0)
        for m in ms[1:]:
            off[m.key] = shifts[m.residue]
    small = min([x for x in shifts if x > 0] + [load.min_gap() or Fraction(1)])
    eta = small / (2 * (len(load.strings) + 2))
    zero: Key = ("zero",)
    if move_reds:
        var = {s.key: (s.key if s.kind == RED else owner[s.key]) for s in load.strings}
        const = {s.key: (Fraction(0) if s.kind == RED else off[s.key]) for s in load.strings}
    else:
        var = {s.key: (zero if s.kind == RED else owner[s.key]) for s in load.strings}
        const = {s.key: (s.x if s.kind == RED else off[s.key]) for s in load.strings}
    # edges u -> v with weight w encode x_v - x_u <= w
    edges: list[tuple[Key, Key, Fraction]] = []
    for a, b in zip(load.strings, load.strings[1:]):
        # x_b - x_a >= eta  <=>  var_a - var_b <= const_b - const_a - eta
        edges.append((var[b.key], var[a.key], const[b.key] - const[a.key] - eta))
    nodes = [zero] + list(groups) + ([s.key for s in load.strings if s.kind == RED] if move_reds else [])
    dist = {v: Fraction(0) for v in nodes}
    for _ in range(len(nodes) + 1):
        changed = False
        for u, v, w in edges:
            if dist[u] + w < dist[v]:
                dist[v] = dist[u] + w
                changed = True
        if not changed:
            break
    else:
        raise InfeasibleOrder("the string order cannot be kept with these ghost shifts")
    for u, v, w in edges:
        if u == v and w < 0:
            raise InfeasibleOrder("a ghost would have to pass its own solid")
    solids = [(g, ms[0].residue, dist[g] - dist[zero]) for g, ms in groups.items()]
    _, reds = solids_and_reds(load)
    if move_reds:
        reds = [(k, r, dist[k] - dist[zero]) for k, r, _ in reds]
    out = build_loading(load.e, solids, reds, shifts, load.eps)
    if [s.key for s in out.strings] != [s.key for s in load.strings]:
        raise InfeasibleOrder("realized order differs")
    return out


# ---------------------------------------------------------------- pulling right


@dataclass(frozen=True)
class Unsteady:
    """A solid string (with its ghost) that nothing stops from moving right."""

    key: Key
    residue: int
    loading: Loading

    def __bool__(self) -> bool:
        return False


def blocks(q: Quiver, mover: StringDesc, other: StringDesc) -> bool:
    """True when ``mover`` cannot be pulled past ``other`` from the left."""
    if mover.kind == SOLID:
        if other.kind in (SOLID, RED):
            return other.residue == mover.residue
        return other.kind == GHOST and q.has_edge(other.residue, mover.residue)
    if mover.kind == GHOST:
        return other.kind == SOLID and q.has_edge(mover.residue, other.residue)
    return True


class NormalizationError(RuntimeError):
    pass


def _groups(load: Loading) -> dict[Key, list[StringDesc]]:
    groups: dict[Key, list[StringDesc]] = {}
    for s in load.strings:
        if s.kind == SOLID:
            groups.setdefault(s.key, []).insert(0, s)
        elif s.kind == GHOST:
            groups.setdefault(s.host, []).append(s)
    return groups


def normalize_right(load: Loading) -> Loading | Unsteady:
    """Pull every solid (dragging its ghosts) as far right as the blocking rules allow.

    Pairs of strings that block each other keep their order and reds stay put,
    so the reachable configurations form a convex set whose greatest point is
    found by relaxing upper bounds, one per group.  In that limit a blocked
    string touches its blocker; it is placed a little to the left, by an amount
    growing with the length of the chain of touching groups in front of it.
    Strings that are free to pass each other and land on the same spot are
    ordered by kind, then residue.  A group with no bound makes the loading
    unsteady.
    """
    q = load.quiver
    groups = _groups(load)
    owner = {m.key: g for g, ms in groups.items() for m in ms}
    base = {g: ms[0].x for g, ms in groups.items()}
    reds = [s for s in load.strings if s.kind == RED]

    # (group, offset of the moving member, target group or None, bound)
    cons: list[tuple[Key, Fraction, Key | None, Fraction]] = []
    for a in load.strings:
        if a.kind == RED:
            continue
        g = owner[a.key]
        off_a = a.x - base[g]
        for b in load.strings:
            if b.x <= a.x or not blocks(q, a, b):
                continue
            if b.kind == RED:
                cons.append((g, off_a, None, b.x))
            elif owner[b.key] != g:
                h = owner[b.key]
                cons.append((g, off_a, h, b.x - base[h]))

    upper: dict[Key, Fraction | None] = {g: None for g in groups}
    for _ in range(len(groups) + 2):
        changed = False
        for g, off_a, h, off_b in cons:
            if h is None:
                cand = off_b - off_a
            elif upper[h] is None:
                continue
            else:
                cand = upper[h] + off_b - off_a
            if upper[g] is None or cand < upper[g]:
                upper[g] = cand
                changed = True
        if not changed:
            break
    else:
        raise NormalizationError("upper bounds did not settle")
    free = [g for g, u in upper.items() if u is None]
    if free:
        g = max(free, key=lambda k: base[k])
        return Unsteady(g, groups[g][0].residue, load)

    # chain depth through tight constraints; reds have depth 0
    tight: dict[Key, list[Key | None]] = {g: [] for g in groups}
    for g, off_a, h, off_b in cons:
        target = off_b - off_a + (0 if h is None else upper[h])
        if target == upper[g]:
            tight[g].append(h)
    depth: dict[Key, int] = {}

    def dep(g: Key, seen: frozenset = frozenset()) -> int:
        if g in depth:
            return depth[g]
        if g in seen:
            raise NormalizationError("cycle of touching strings")
        d = 1 + max((0 if h is None else dep(h, seen | {g}) for h in tight[g]), default=0)
        depth[g] = d
        return d

    for g in groups:
        dep(g)
    slacks = [
        off_b - off_a + (0 if h is None else upper[h]) - upper[g]
        for g, off_a, h, off_b in cons
        if off_b - off_a + (0 if h is None else upper[h]) != upper[g]
    ]
    gap = load.min_gap() or Fraction(1)
    unit = min([gap] + slacks) / (4 * (max(depth.values(), default=0) + 2))
    order = sorted(groups, key=lambda g: (upper[g] - unit * depth[g], groups[g][0].residue, base[g]))
    nudge = unit / (4 * (len(groups) + 1))
    rank = {g: i for i, g in enumerate(order)}

    placed: list[StringDesc] = list(reds)
    for g, ms in groups.items():
        x0 = upper[g] - unit * depth[g] + nudge * rank[g]
        for m in ms:
            placed.append(replace_x(m, x0 + (m.x - base[g])))
    kind_rank = {SOLID: 0, GHOST: 1, RED: 2}
    placed.sort(key=lambda s: (s.x, kind_rank[s.kind], s.residue))
    return Loading(load.e, tuple(placed), load.shifts, load.eps)


def replace_x(s: StringDesc, x: Fraction) -> StringDesc:
    return StringDesc(s.kind, s.residue, x, s.key, s.host)


def signature(load: Loading | Unsteady) -> tuple[tuple[str, int], ...]:
    if isinstance(load, Unsteady):
        load = load.loading
    return tuple((s.kind, s.residue) for s in load.strings)


def format_signature(sig: Iterable[tuple[str, int]]) -> str:
    return " ".join(f"{_ABBREV[k]}{r}" for k, r in sig)


def parse_signature(text: str) -> tuple[tuple[str, int], ...]:
    rev = {v: k for k, v in _ABBREV.items()}
    return tuple((rev[tok[0]], int(tok[1:])) for tok in text.replace("|", " ").split())


# ---------------------------------------------------------------- straight diagrams


@dataclass(frozen=True)
class StraightDiagram:
    bottom: Loading
    top: Loading
    match: tuple[tuple[Key, Key], ...]

    def strands(self) -> list[tuple[StringDesc, StringDesc]]:
        """(bottom end, top end) for every string, ghosts and reds included."""
        b, t = self.bottom.by_key(), self.top.by_key()
        out = []
        for bk, tk in self.match:
            out.append((b[bk], t[tk]))
            out.append((b[ghost_key(bk)], t[ghost_key(tk)]))
        for s in self.bottom.strings:
            if s.kind == RED:
                out.append((s, t[s.key]))
        return out

    def reversed(self) -> "StraightDiagram":
        return StraightDiagram(self.top, self.bottom, tuple((t, b) for b, t in self.match))


def straight_diagram(bottom: Loading, top: Loading, match: Mapping[Key, Key] | None = None) -> StraightDiagram:
    if bottom.e != top.e:
        raise ValueError("loadings live over different quivers")
    b, t = bottom.by_key(), top.by_key()
    b_solids = [s.key for s in bottom.strings if s.kind == SOLID]
    t_solids = {s.key for s in top.strings if s.kind == SOLID}
    if match is None:
        match = {k: k for k in b_solids}
    if set(match) != set(b_solids) or set(match.values()) != t_solids or len(set(match.values())) != len(match):
        raise ValueError("match must be a bijection between the solid strings")
    for bk, tk in match.items():
        if b[bk].residue != t[tk].residue:
            raise ValueError(f"match {bk} -> {tk} changes the residue")
    b_reds = {s.key: s.residue for s in bottom.strings if s.kind == RED}
    t_reds = {s.key: s.residue for s in top.strings if s.kind == RED}
    if b_reds != t_reds:
        raise ValueError("red strings differ between bottom and top")
    return StraightDiagram(bottom, top, tuple(sorted(match.items())))


def crosses(a: tuple[StringDesc, StringDesc], b: tuple[StringDesc, StringDesc]) -> bool:
    return (a[0].x - b[0].x) * (a[1].x - b[1].x) < 0


def crossing_weight(q: Quiver, s: StringDesc, u: StringDesc) -> int:
    """Degree of a single crossing between strings s and u.

    A ghost i crossing a solid j with an arrow i -> j contributes the negated
    Cartan entry, i.e. +1 in type A with e >= 2.
    """
    kinds = {s.kind, u.kind}
    if s.kind == SOLID and u.kind == SOLID:
        return -2 if s.residue == u.residue else 0
    if kinds == {SOLID, RED}:
        return 1 if s.residue == u.residue else 0
    if kinds == {SOLID, GHOST}:
        g, sol = (s, u) if s.kind == GHOST else (u, s)
        return -q.cartan_pairing(g.residue, sol.residue) if q.has_edge(g.residue, sol.residue) else 0
    return 0


def crossing_pairs(d: StraightDiagram) -> Iterator[tuple[tuple[StringDesc, StringDesc], tuple[StringDesc, StringDesc]]]:
    st = d.strands()
    for a, b in itertools.combinations(st, 2):
        if crosses(a, b):
            yield a, b


def degree(d: StraightDiagram, quiver: Quiver | None = None) -> int:
    q = quiver or d.bottom.quiver
    return sum(crossing_weight(q, a[0], b[0]) for a, b in crossing_pairs(d))


# ---------------------------------------------------------------- tableaux


@dataclass(frozen=True)
class Tableau:
    """A bijection from the nodes of lam onto the coordinates c_hat(mu).

    ``target`` maps each node of lam to the node of mu whose coordinate it takes.
    """

    lam: Multipartition
    mu: Multipartition
    charge: Charge
    e_prime: int
    target: tuple[tuple[Node, Node], ...]
    eps: Fraction | None = None

    @property
    def aff(self) -> AffineData:
        return affine_extend(self.charge, self.lam.size, self.e_prime)

    @property
    def epsilon(self) -> Fraction:
        return self.eps if self.eps is not None else default_eps(self.aff)

    def values(self) -> dict[Node, Fraction]:
        aff, eps = self.aff, self.epsilon
        return {a: position(b, aff, eps) for a, b in self.target}

    def as_dict(self) -> dict[Node, Node]:
        return dict(self.target)

    def to_json(self) -> dict[str, Any]:
        vals = self.values()
        return {
            "lam": self.lam.to_json(),
            "mu": self.mu.to_json(),
            "assignment": [
                {"node": list(a), "target": list(b), "value": [vals[a].numerator, vals[a].denominator]}
                for a, b in self.target
            ],
        }


def _aligned(lam: Multipartition, mu: Multipartition) -> tuple[Multipartition, Multipartition]:
    lev = max(lam.level, mu.level)
    return lam.padded(lev), mu.padded(lev)


def make_tableau(
    lam: Multipartition,
    mu: Multipartition,
    charge: Charge,
    e_prime: int,
    target: Mapping[Node, Node],
    eps: Fraction | None = None,
) -> Tableau:
    lam, mu = _aligned(Multipartition.coerce(lam), Multipartition.coerce(mu))
    if lam.size != mu.size:
        raise ValueError("lam and mu must have the same size")
    nodes = list(lam.nodes())
    if set(target) != set(nodes) or sorted(target.values()) != sorted(mu.nodes()):
        raise ValueError("target must be a bijection from the nodes of lam to the nodes of mu")
    return Tableau(lam, mu, charge, e_prime, tuple((a, target[a]) for a in nodes), eps)


def canonical_tableau(lam: Multipartition, charge: Charge, e_prime: int) -> Tableau:
    lam = Multipartition.coerce(lam)
    return make_tableau(lam, lam, charge, e_prime, {a: a for a in lam.nodes()})


def semistandard_violations(values: Mapping[Node, Fraction], charge: Charge) -> list[str]:
    bad = []
    for (m, r, c), x in values.items():
        if r == 1 and c == 1 and m <= charge.level and x > charge.kappa[m - 1]:
            bad.append(f"T{(m, r, c)}={x} exceeds kappa_{m}={charge.kappa[m - 1]}")
        up = Node(m, r - 1, c)
        if up in values and not x + 1 < values[up]:
            bad.append(f"T{(m, r, c)}+1 is not below T{tuple(up)}")
        left = Node(m, r, c - 1)
        if left in values and not x < values[left] + 1:
            bad.append(f"T{(m, r, c)} is not below T{tuple(left)}+1")
    return bad


def is_semistandard(t: Tableau) -> bool:
    return not semistandard_violations(t.values(), t.charge)


def enumerate_sstd(
    lam: Multipartition,
    mu: Multipartition | None,
    charge: Charge,
    e_prime: int,
) -> list[Tableau]:
    """All semistandard lam-tableaux of type mu (every mu of the charge's level if None).

    Nodes are filled in reading order so that the cell above and the cell to the
    left are always known; each tries the unused coordinates of mu in order.
    """
    lam = Multipartition.coerce(lam)
    if mu is None:
        out: list[Tableau] = []
        for nu in multipartitions_of(lam.size, charge.level):
            out.extend(enumerate_sstd(lam, nu, charge, e_prime))
        return out
    lam, mu = _aligned(lam, Multipartition.coerce(mu))
    if lam.size != mu.size:
        return []
    aff = affine_extend(charge, lam.size, e_prime)
    eps = default_eps(aff)
    coords = sorted((position(b, aff, eps), b) for b in mu.nodes())
    nodes = sorted(lam.nodes())
    chosen: dict[Node, Fraction] = {}
    picked: dict[Node, Node] = {}
    used = [False] * len(coords)
    results: list[Tableau] = []

    def ok(node: Node, x: Fraction) -> bool:
        m, r, c = node
        if r == 1 and c == 1 and m <= charge.level and x > charge.kappa[m - 1]:
            return False
        up = Node(m, r - 1, c)
        if up in chosen and not x + 1 < chosen[up]:
            return False
        left = Node(m, r, c - 1)
        if left in chosen and not x < chosen[left] + 1:
            return False
        return True

    def rec(i: int) -> None:
        if i == len(nodes):
            results.append(Tableau(lam, mu, charge, e_prime, tuple((a, picked[a]) for a in nodes)))
            return
        node = nodes[i]
        for j, (x, b) in enumerate(coords):
            if used[j] or not ok(node, x):
                continue
            used[j] = True
            chosen[node], picked[node] = x, b
            rec(i + 1)
            used[j] = False
            del chosen[node], picked[node]

    rec(0)
    return results


def brute_force_sstd(lam: Multipartition, mu: Multipartition, charge: Charge, e_prime: int) -> list[Tableau]:
    """Every bijection filtered by the three conditions; an oracle for small sizes."""
    lam, mu = _aligned(Multipartition.coerce(lam), Multipartition.coerce(mu))
    if lam.size != mu.size:
        return []
    nodes = sorted(lam.nodes())
    out = []
    for perm in itertools.permutations(sorted(mu.nodes())):
        t = Tableau(lam, mu, charge, e_prime, tuple(zip(nodes, perm)))
        if is_semistandard(t):
            out.append(t)
    return out


def tableau_permutation(t: Tableau) -> tuple[int, ...]:
    """w_T as a 1-based tuple: x^mu_{w(k)} = T(node sitting at x^lam_k)."""
    aff, eps = t.aff, t.epsilon
    vals = t.values()
    lam_sorted = sorted(t.lam.nodes(), key=lambda a: position(a, aff, eps))
    mu_x = sorted(position(b, aff, eps) for b in t.mu.nodes())
    index = {x: k for k, x in enumerate(mu_x, 1)}
    return tuple(index[vals[a]] for a in lam_sorted)


def inversions(w: Sequence[int]) -> int:
    return sum(1 for i, j in itertools.combinations(range(len(w)), 2) if w[i] > w[j])


def tableau_diagram(t: Tableau, quiver: Quiver | None = None) -> StraightDiagram:
    """D_T: from 1_lam at the bottom to the coordinates of mu at the top.

    The top strings keep the residues of the nodes of lam they come from.
    """
    q = quiver or Quiver(t.e_prime - 1)
    _check_quiver(q)
    if t.lam.level != t.charge.level:
        raise ValueError("tableau diagrams are built for multipartitions of the charge's level")
    bottom = idempotent_loading(t.lam, t.charge, q)
    vals = t.values()
    solids = [(s.key, s.residue, vals[Node(*s.key[1:])]) for s in bottom.strings if s.kind == SOLID]
    _, reds = solids_and_reds(bottom)
    top = build_loading(q.e, solids, reds, bottom.shifts, bottom.eps)
    return straight_diagram(bottom, top)


def tableau_degree(t: Tableau) -> int:
    return degree(tableau_diagram(t))


@dataclass(frozen=True)
class GradedDim:
    """Laurent polynomial in q with nonnegative integer coefficients."""

    coeffs: tuple[tuple[int, int], ...] = field(default=())

    @classmethod
    def from_counter(cls, c: Mapping[int, int]) -> "GradedDim":
        return cls(tuple(sorted((k, v) for k, v in c.items() if v)))

    def at_one(self) -> int:
        return sum(v for _, v in self.coeffs)

    def __getitem__(self, k: int) -> int:
        return dict(self.coeffs).get(k, 0)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k, v in self.coeffs:
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            if not mono:
                terms.append(str(v))
            else:
                terms.append(mono if v == 1 else f"{v}{mono}")
        return " + ".join(terms)

    def to_json(self) -> dict[str, Any]:
        return {"coefficients": {str(k): v for k, v in self.coeffs}}


def graded_cell_dim(lam: Multipartition, charge: Charge, e_prime: int) -> GradedDim:
    degs = Counter(tableau_degree(t) for t in enumerate_sstd(lam, None, charge, e_prime))
    return GradedDim.from_counter(degs)


# ---------------------------------------------------------------- dominance


def dominates(lam: Multipartition, mu: Multipartition, charge: Charge, e_prime: int) -> bool:
    """True when lam is dominated by mu.

    A bijection d with c_hat(a) <= c_hat(d(a)) exists exactly when the sorted
    coordinates of lam lie termwise below the sorted coordinates of mu.
    """
    lam, mu = _aligned(Multipartition.coerce(lam), Multipartition.coerce(mu))
    if lam.size != mu.size:
        raise ValueError("dominance compares multipartitions of the same size")
    aff = affine_extend(charge, lam.size, e_prime)
    eps = default_eps(aff)
    xs = sorted(position(a, aff, eps) for a in lam.nodes())
    ys = sorted(position(b, aff, eps) for b in mu.nodes())
    return all(x <= y for x, y in zip(xs, ys))


def brute_force_dominates(lam: Multipartition, mu: Multipartition, charge: Charge, e_prime: int) -> bool:
    lam, mu = _aligned(Multipartition.coerce(lam), Multipartition.coerce(mu))
    if lam.size != mu.size:
        raise ValueError("dominance compares multipartitions of the same size")
    aff = affine_extend(charge, lam.size, e_prime)
    eps = default_eps(aff)
    xs = [position(a, aff, eps) for a in lam.nodes()]
    ys = [position(b, aff, eps) for b in mu.nodes()]
    return any(all(x <= y for x, y in zip(xs, perm)) for perm in itertools.permutations(ys))
