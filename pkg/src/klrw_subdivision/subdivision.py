"""Close tuples, the subdivision map on loadings and diagrams, and the checks built on it."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Literal, Sequence

from .diagram import (
    GHOST,
    RED,
    InfeasibleOrder,
    SOLID,
    Loading,
    StraightDiagram,
    StringDesc,
    Unsteady,
    build_loading,
    degree,
    enumerate_sstd,
    format_signature,
    ghost_key,
    idempotent_loading,
    make_tableau,
    normalize_right,
    signature,
    straight_diagram,
    tableau_diagram,
)
from .partitions import Charge, Multipartition, count_residue_nodes, multipartitions_of, partitions_of
from .quiver import Quiver, subdivide_quiver
from .strips import lambda_plus
from .parallel import ordered_map

Side = Literal["auto", "left", "right"]
_TYPES = {(0, 0): "a", (0, 1): "b", (1, 1): "c", (1, 0): "d"}


@dataclass(frozen=True)
class CloseTuple:
    strings: tuple[StringDesc, ...]
    type: str
    edge: int

    @property
    def start_res(self) -> int:
        return self.strings[-1].residue

    @property
    def end_res(self) -> int:
        return self.strings[0].residue

    @property
    def trivial(self) -> bool:
        return len(self.strings) == 1

    def text(self) -> str:
        return " ".join(s.label for s in self.strings)


def _member(s: StringDesc, lo: int, hi: int) -> bool:
    return (s.kind == GHOST and s.residue == lo) or (s.kind == SOLID and s.residue == hi)


def close_tuples(load: Loading, edge: int = 0, closeness: Fraction | None = None) -> list[CloseTuple]:
    """Maximal runs of alternating ghost-edge / solid-(edge+1) strings.

    Two members are close when they are neighbours in the loading and their gap
    is below ``closeness`` (twice the loading's eps by default).  Anything else in
    between, a red string included, ends the run.
    """
    size = load.e + 1
    lo, hi = edge % size, (edge + 1) % size
    closeness = 2 * load.eps if closeness is None else Fraction(closeness)
    out: list[CloseTuple] = []
    run: list[StringDesc] = []

    def flush() -> None:
        if run:
            start_lower = run[-1].kind == GHOST
            end_lower = run[0].kind == GHOST
            out.append(CloseTuple(tuple(run), _TYPES[(0 if start_lower else 1, 0 if end_lower else 1)], lo))
            run.clear()

    for s in load.strings:
        if not _member(s, lo, hi):
            flush()
            continue
        if run and (run[-1].kind == s.kind or s.x - run[-1].x >= closeness):
            flush()
        run.append(s)
    flush()
    return out


@dataclass(frozen=True)
class SubdivisionParams:
    edge: int
    t: Fraction
    eps_prime: Fraction

    def __post_init__(self) -> None:
        if not 0 < self.eps_prime < self.t:
            raise ValueError("need 0 < eps_prime < t")


def params_for(loads: Loading | Iterable[Loading], edge: int = 0) -> SubdivisionParams:
    """t and eps' from the smallest gap: a quarter and an eighth of it."""
    if isinstance(loads, Loading):
        loads = [loads]
    gaps = [g for g in (ld.min_gap() for ld in loads) if g is not None]
    gap = min(gaps, default=Fraction(1))
    return SubdivisionParams(edge, gap / 4, gap / 8)


def rotate_loading(load: Loading, k: int) -> Loading:
    """Apply the quiver automorphism r -> r + k to every string."""
    size = load.e + 1
    strings = tuple(StringDesc(s.kind, (s.residue + k) % size, s.x, s.key, s.host) for s in load.strings)
    shifts = tuple(load.shifts[(r - k) % size] for r in range(size))
    return Loading(load.e, strings, shifts, load.eps)


def new_key(host_solid: tuple) -> tuple:
    return ("new",) + tuple(host_solid)


def _subdivide_edge0(load: Loading, p: SubdivisionParams, side: Side) -> Loading:
    q_new, relabel = subdivide_quiver(load.quiver, 0)
    gap = load.min_gap()
    if gap is not None and not p.t + p.eps_prime < gap:
        raise ValueError("t and eps_prime are too large for this loading")
    solids, reds = [], []
    for s in load.strings:
        if s.kind == SOLID:
            solids.append((s.key, relabel(s.residue), s.x))
        elif s.kind == RED:
            reds.append((s.key, relabel(s.residue), s.x))
    for tup in close_tuples(load, 0):
        go_left = tup.type in "ab" if side == "auto" else side == "left"
        for s in tup.strings:
            if s.kind == GHOST:
                x = s.x - p.t if go_left else s.x + p.t
                solids.append((new_key(s.host), relabel.inserted, x))
    shifts = [Fraction(0)] * q_new.size
    for r in load.quiver.vertices:
        shifts[relabel(r)] = load.shifts[r]
    shifts[relabel.inserted] = p.eps_prime
    xs = {s.x for s in load.strings}
    for key, _, x in solids:
        if key[0] == "new" and (x in xs or x + p.eps_prime in xs):
            raise ValueError("subdivision parameters collide with existing coordinates")
    return build_loading(q_new.e, solids, reds, shifts, load.eps)


def subdivide_idempotent(
    load: Loading,
    p: SubdivisionParams | None = None,
    *,
    edge: int | None = None,
    side: Side = "auto",
    unsafe: bool = False,
) -> Loading:
    """S_{t,eps'} on a loading, for the edge ``edge -> edge+1``.

    A new solid of the inserted residue goes t to the left of each ghost-edge
    string in a tuple of type a or b, t to the right in types c and d; its ghost
    sits eps' further right.  A nonzero edge is handled by rotating it to 0,
    subdividing there and rotating back.  ``side`` forces one side for every
    tuple; that choice can break steadiness and needs ``unsafe=True``.
    """
    if side != "auto" and not unsafe:
        raise ValueError("one-sided insertion is known to be wrong; pass unsafe=True to use it")
    if p is None:
        p = params_for(load, edge or 0)
    elif edge is not None and edge != p.edge:
        raise ValueError("edge disagrees with the parameters")
    size = load.e + 1
    i = p.edge % size
    if i == 0:
        return _subdivide_edge0(load, p, side)
    framed = _subdivide_edge0(rotate_loading(load, -i), p, side)
    return rotate_loading(framed, i)


def subdivide_diagram(
    d: StraightDiagram, p: SubdivisionParams | None = None, *, edge: int = 0, side: Side = "auto", unsafe: bool = False
) -> StraightDiagram:
    """Subdivide both ends; each new solid runs alongside its host ghost."""
    if p is None:
        p = params_for([d.bottom, d.top], edge)
    bottom = subdivide_idempotent(d.bottom, p, side=side, unsafe=unsafe)
    top = subdivide_idempotent(d.top, p, side=side, unsafe=unsafe)
    match = dict(d.match)
    b_new = {s.key for s in bottom.strings if s.kind == SOLID and s.key[0] == "new"}
    for k in b_new:
        match[k] = new_key(match[k[1:]])
    return straight_diagram(bottom, top, match)


# ---------------------------------------------------------------- reports


@dataclass
class VerificationReport:
    name: str
    case: dict[str, Any]
    passed: bool
    expected: Any = None
    actual: Any = None
    detail: str = ""
    checked: int = 1
    failures: list[dict[str, Any]] = field(default_factory=list)

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "case": self.case,
            "passed": self.passed,
            "checked": self.checked,
            "failed": self.failed,
            "expected": self.expected,
            "actual": self.actual,
            "detail": self.detail,
            "failures": self.failures,
        }

    @property
    def failed(self) -> int:
        return len(self.failures) if self.failures else int(not self.passed)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: {self.checked} checked, {self.failed} failed"


def merge_reports(name: str, reports: Sequence[VerificationReport], case: dict[str, Any] | None = None) -> VerificationReport:
    failures = []
    for r in reports:
        if r.failures:
            failures.extend(r.failures)
        elif not r.passed:
            failures.append({"case": r.case, "expected": r.expected, "actual": r.actual, "detail": r.detail})
    checked = sum(r.checked for r in reports)
    return VerificationReport(name, case or {}, not failures, checked=checked, failures=failures)


# ---------------------------------------------------------------- idempotents


def plus_charge(charge: Charge, rho_plus: Sequence[int]) -> Charge:
    return Charge(tuple(rho_plus), charge.kappa)


def verify_idempotent_correspondence(lam: Multipartition, charge: Charge, e_prime: int, edge: int = 0) -> VerificationReport:
    """Compare S(1_lam) with 1_{lam+} after pulling both to the right."""
    lam = Multipartition.coerce(lam)
    case = {
        "lam": str(lam),
        "rho": list(charge.rho),
        "kappa": list(charge.kappa),
        "e_prime": e_prime,
        "edge": edge,
        "asymptotic": is_asymptotic(charge, lam.size),
    }
    q = Quiver(e_prime - 1)
    load = idempotent_loading(lam, charge, q)
    subdivided = normalize_right(subdivide_idempotent(load, edge=edge))
    lp = lambda_plus(lam, charge, e_prime, edge)
    case["lam_plus"] = str(lp.partition)
    try:
        built = idempotent_loading(
            lp.partition, plus_charge(charge, lp.rho_plus), Quiver(e_prime), exceptional=edge + 1
        )
    except InfeasibleOrder as exc:
        return VerificationReport("idempotent", case, False, detail=f"1_lam+ cannot be built: {exc}")
    target = normalize_right(built)
    if isinstance(subdivided, Unsteady) or isinstance(target, Unsteady):
        which = "S(1_lam)" if isinstance(subdivided, Unsteady) else "1_lam+"
        return VerificationReport("idempotent", case, False, detail=f"{which} is unsteady")
    a, b = format_signature(signature(subdivided)), format_signature(signature(target))
    return VerificationReport("idempotent", case, a == b, expected=b, actual=a)


def _idem_case(args: tuple) -> VerificationReport:
    lam, rho, kappa, e_prime, edge = args
    return verify_idempotent_correspondence(Multipartition.parse(lam), Charge(tuple(rho), tuple(kappa)), e_prime, edge)


def idempotent_grid(n_max: int, e_values: Iterable[int], edges: str | Iterable[int] = (0,)) -> list[tuple]:
    """Level one cases (lam, rho, kappa, e', edge) with 1 <= |lam| <= n_max and every rho."""
    cases = []
    for e in e_values:
        e_prime = e + 1
        edge_list = range(e_prime) if edges == "all" else list(edges)
        for n in range(0, n_max + 1):
            for p in partitions_of(n):
                for rho in range(e_prime):
                    for i in edge_list:
                        cases.append((str(p), (rho,), (0,), e_prime, i))
    return cases


def is_asymptotic(charge: Charge, n: int) -> bool:
    """Reds at least 2n apart, so that no component reaches past another's red."""
    return all(b - a >= 2 * n for a, b in zip(charge.kappa, charge.kappa[1:]))


def sampled_level_two(count: int, n_max: int, e_values: Sequence[int], seed: int = 0) -> list[tuple]:
    """Random level two cases with an asymptotic charge."""
    rng = random.Random(seed)
    cases = []
    for _ in range(count):
        e = rng.choice(list(e_values))
        n = rng.randint(1, n_max)
        lams = list(multipartitions_of(n, 2))
        lam = rng.choice(lams)
        rho = (rng.randrange(e + 1), rng.randrange(e + 1))
        k1 = rng.randint(-3, 3)
        kappa = (k1, k1 + 2 * n + rng.randint(0, n))
        cases.append((str(lam), rho, kappa, e + 1, 0))
    return cases


def verify_idempotent_batch(cases: Sequence[tuple], workers: int | None = None) -> VerificationReport:
    reports = ordered_map(_idem_case, cases, workers)
    return merge_reports("idempotent correspondence", reports, {"cases": len(cases)})


# ---------------------------------------------------------------- degrees


def insertion_sides(load: Loading, edge: int = 0) -> dict[tuple, str]:
    """Host solid key -> side ("left"/"right") of the string inserted next to its ghost."""
    out = {}
    for tup in close_tuples(load, edge):
        for s in tup.strings:
            if s.kind == GHOST:
                out[s.host] = "left" if tup.type in "ab" else "right"
    return out


def side_switches(d: StraightDiagram, edge: int = 0) -> int:
    """New strings that sit on one side of their host ghost at the bottom and the other at the top.

    Each such string has to cross its host ghost once, and that crossing has
    degree one.
    """
    bottom, top = insertion_sides(d.bottom, edge), insertion_sides(d.top, edge)
    match = dict(d.match)
    return sum(1 for host, side in bottom.items() if top[match[host]] != side)


def verify_degree_preservation(
    diagrams: Iterable[StraightDiagram], edge: int = 0, side: Side = "auto"
) -> VerificationReport:
    reports = []
    for k, d in enumerate(diagrams):
        before = degree(d)
        after = degree(subdivide_diagram(d, edge=edge, side=side, unsafe=side != "auto"))
        detail = ""
        if before != after and side == "auto":
            detail = f"{side_switches(d, edge)} inserted string(s) change side"
        reports.append(
            VerificationReport("degree", {"index": k}, before == after, expected=before, actual=after, detail=detail)
        )
    return merge_reports("degree preservation", reports)


def verify_degree_defect(diagrams: Iterable[StraightDiagram], edge: int = 0) -> VerificationReport:
    """deg S(D) - deg D against the number of inserted strings that change side."""
    reports = []
    for k, d in enumerate(diagrams):
        gained = degree(subdivide_diagram(d, edge=edge)) - degree(d)
        sw = side_switches(d, edge)
        reports.append(VerificationReport("degree defect", {"index": k}, gained == sw, expected=sw, actual=gained))
    return merge_reports("degree defect", reports)


def tableau_diagrams(lam: Multipartition, charge: Charge, e_prime: int) -> list[StraightDiagram]:
    return [tableau_diagram(t) for t in enumerate_sstd(lam, None, charge, e_prime)]


def random_diagram(lam: Multipartition, mu: Multipartition, charge: Charge, e_prime: int, rng: random.Random) -> StraightDiagram:
    """D for a uniformly random bijection from the nodes of lam to the coordinates of mu."""
    lam, mu = Multipartition.coerce(lam), Multipartition.coerce(mu)
    targets = list(mu.nodes())
    rng.shuffle(targets)
    t = make_tableau(lam, mu, charge, e_prime, dict(zip(lam.nodes(), targets)))
    return tableau_diagram(t)


def _case_diagrams(args: tuple) -> list[StraightDiagram]:
    kind, lam, mu, rho, kappa, e_prime, seed, _ = args
    charge = Charge(tuple(rho), tuple(kappa))
    lam = Multipartition.parse(lam)
    if kind == "sstd":
        return tableau_diagrams(lam, charge, e_prime)
    return [random_diagram(lam, Multipartition.parse(mu), charge, e_prime, random.Random(seed))]


def _label_failures(rep: VerificationReport, args: tuple) -> VerificationReport:
    _, lam, mu, rho, _, e_prime, seed, edge = args
    for f in rep.failures:
        f["case"] = {"lam": lam, "mu": mu, "rho": list(rho), "e_prime": e_prime, "edge": edge, "seed": seed, **f["case"]}
    rep.case = {"lam": lam, "rho": list(rho), "e_prime": e_prime}
    return rep


def _degree_case(args: tuple, side: Side = "auto") -> VerificationReport:
    return _label_failures(verify_degree_preservation(_case_diagrams(args), args[-1], side), args)


def _degree_case_left(args: tuple) -> VerificationReport:
    return _degree_case(args, "left")


def _degree_case_right(args: tuple) -> VerificationReport:
    return _degree_case(args, "right")


def _defect_case(args: tuple) -> VerificationReport:
    return _label_failures(verify_degree_defect(_case_diagrams(args), args[-1]), args)


def degree_grid(n_max: int, e_values: Iterable[int], edges: Iterable[int] = (0,)) -> list[tuple]:
    cases = []
    for e in e_values:
        for n in range(1, n_max + 1):
            for p in partitions_of(n):
                for rho in range(e + 1):
                    for i in edges:
                        cases.append(("sstd", str(p), None, (rho,), (0,), e + 1, None, i))
    return cases


def random_degree_cases(count: int, n_max: int, e_values: Sequence[int], seed: int = 0) -> list[tuple]:
    rng = random.Random(seed)
    cases = []
    for k in range(count):
        e = rng.choice(list(e_values))
        n = rng.randint(1, n_max)
        level = rng.choice((1, 2))
        lam = rng.choice(list(multipartitions_of(n, level)))
        mu = rng.choice(list(multipartitions_of(n, level)))
        rho = tuple(rng.randrange(e + 1) for _ in range(level))
        kappa = tuple(range(level))
        cases.append(("random", str(lam), str(mu), rho, kappa, e + 1, rng.randrange(2**31), rng.randrange(e + 1)))
    return cases


_DEGREE_WORKERS = {"auto": _degree_case, "left": _degree_case_left, "right": _degree_case_right}


def verify_degree_batch(cases: Sequence[tuple], workers: int | None = None, side: Side = "auto") -> VerificationReport:
    name = "degree preservation" if side == "auto" else f"degree preservation ({side} insertion)"
    reports = ordered_map(_DEGREE_WORKERS[side], cases, workers)
    return merge_reports(name, reports, {"cases": len(cases), "side": side})


def verify_defect_batch(cases: Sequence[tuple], workers: int | None = None) -> VerificationReport:
    return merge_reports("degree defect", ordered_map(_defect_case, cases, workers), {"cases": len(cases)})


# ---------------------------------------------------------------- lambda plus


def _equiv_case(args: tuple) -> VerificationReport:
    lam, rho, e_prime, edge = args
    m = Multipartition.parse(lam)
    charge = Charge(tuple(rho))
    lp = lambda_plus(m, charge, e_prime, edge, strict=False)
    case = {"lam": lam, "rho": list(rho), "e_prime": e_prime, "edge": edge}
    return VerificationReport("lambda_plus", case, lp.agreement, actual=lp.to_json())


def equivalence_grid(n_max: int, e_values: Iterable[int], level: int = 1, edges: str | Iterable[int] = (0,)) -> list[tuple]:
    cases = []
    for e in e_values:
        e_prime = e + 1
        edge_list = range(e_prime) if edges == "all" else list(edges)
        charges = [()]
        for _ in range(level):
            charges = [c + (r,) for c in charges for r in range(e_prime)]
        for n in range(n_max + 1):
            for lam in multipartitions_of(n, level):
                for rho in charges:
                    for i in edge_list:
                        cases.append((str(lam), rho, e_prime, i))
    return cases


def verify_equivalence_batch(
    n_max: int,
    e_set: Iterable[int],
    level: int = 1,
    edges: str | Iterable[int] = (0,),
    workers: int | None = None,
) -> VerificationReport:
    """Box and abacus constructions of lambda^+ over a whole grid."""
    e_set = list(e_set)
    cases = equivalence_grid(n_max, e_set, level, edges)
    reports = ordered_map(_equiv_case, cases, workers, chunksize=256)
    return merge_reports(
        "lambda_plus equivalence", reports, {"n_max": n_max, "e": e_set, "level": level, "cases": len(cases)}
    )


# ---------------------------------------------------------------- label transport


@dataclass(frozen=True)
class TransportedLabels:
    lam_plus: Multipartition
    mu_plus: Multipartition
    rho_plus: tuple[int, ...]
    hypothesis_ok: bool

    def to_json(self) -> dict[str, Any]:
        return {
            "lam_plus": str(self.lam_plus),
            "mu_plus": str(self.mu_plus),
            "rho_plus": list(self.rho_plus),
            "hypothesis_ok": self.hypothesis_ok,
        }


def transport_labels(
    lam: Multipartition, mu: Multipartition, charge: Charge, e_prime: int, edge: int = 0
) -> TransportedLabels:
    """Images of a pair of labels; the flag says whether each has at most one edge-node.

    Only the labels are moved.  No decomposition number is computed.
    """
    lam, mu = Multipartition.coerce(lam), Multipartition.coerce(mu)
    if lam.size != mu.size:
        raise ValueError("lam and mu must have the same size")
    a = lambda_plus(lam, charge, e_prime, edge)
    b = lambda_plus(mu, charge, e_prime, edge)
    ok = count_residue_nodes(lam, charge, e_prime, edge) <= 1 and count_residue_nodes(mu, charge, e_prime, edge) <= 1
    return TransportedLabels(a.partition, b.partition, a.rho_plus, ok)


__all__ = [
    "CloseTuple",
    "SubdivisionParams",
    "VerificationReport",
    "TransportedLabels",
    "close_tuples",
    "params_for",
    "subdivide_idempotent",
    "subdivide_diagram",
    "verify_idempotent_correspondence",
    "verify_idempotent_batch",
    "verify_degree_preservation",
    "verify_degree_defect",
    "side_switches",
    "verify_degree_batch",
    "verify_defect_batch",
    "degree_grid",
    "random_degree_cases",
    "idempotent_grid",
    "sampled_level_two",
    "equivalence_grid",
    "tableau_diagrams",
    "random_diagram",
    "insertion_sides",
    "rotate_loading",
    "merge_reports",
    "is_asymptotic",
    "verify_equivalence_batch",
    "transport_labels",
    "ghost_key",
]
