"""Command line interface.

Every command builds a JSON payload, validates it against the shipped schema
and then prints it as JSON, as text or (where it makes sense) as TikZ.  The
text and TikZ renderings read nothing but the payload.

Exit codes: 0 success, 1 a verification failed, 2 bad usage.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Sequence

from .abacus import AbacusConfig, insert_runner_direct, k_lambda, lambda_plus_abacus, max_truncation_N0, to_abacus, from_abacus
from .diagram import (
    InfeasibleOrder,
    Unsteady,
    canonical_tableau,
    enumerate_sstd,
    format_signature,
    idempotent_loading,
    make_tableau,
    normalize_right,
    semistandard_violations,
    signature,
    tableau_diagram,
    tableau_degree,
    tableau_permutation,
    GradedDim,
)
from .parallel import WORKERS_ENV, worker_count
from .partitions import Charge, Multipartition, Node, Partition, count_residue_nodes, residue_diagram, partitions_of
from .quiver import Quiver
from .render import (
    ascii_signature,
    diagram_from_json,
    diagram_json,
    loading_json,
    text_diagram,
    tikz_diagram,
    tikz_loading,
)
from .strips import lambda_plus, maximal_strips
from .subdivision import (
    VerificationReport,
    close_tuples,
    degree_grid,
    idempotent_grid,
    merge_reports,
    plus_charge,
    random_degree_cases,
    random_diagram,
    sampled_level_two,
    side_switches,
    subdivide_diagram,
    subdivide_idempotent,
    transport_labels,
    verify_defect_batch,
    verify_degree_batch,
    verify_equivalence_batch,
    verify_idempotent_batch,
)
from .validation import validate

PROG = "klrw"


class UsageError(Exception):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


@dataclass
class Result:
    payload: dict[str, Any]
    text: Callable[[dict[str, Any]], str]
    tikz: Callable[[dict[str, Any]], str] | None = None
    code: int = 0


# ---------------------------------------------------------------- argument parsing


def parse_lam(text: str, field: str = "--lam") -> Multipartition:
    try:
        return Multipartition.parse(text)
    except ValueError as exc:
        raise UsageError(field, str(exc)) from None


def parse_ints(text: str, field: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise UsageError(field, f"expected comma separated integers, got {text!r}") from None


def parse_charge(args: argparse.Namespace, level: int | None = None) -> Charge:
    rho = parse_ints(args.rho, "--rho")
    if not rho:
        raise UsageError("--rho", "at least one residue is needed")
    kappa = parse_ints(args.kappa, "--kappa") if getattr(args, "kappa", None) else ()
    if level is not None and len(rho) != level:
        raise UsageError("--rho", f"{len(rho)} entries given but the multipartition has {level} components")
    try:
        return Charge(rho, kappa)
    except ValueError as exc:
        raise UsageError("--kappa", str(exc)) from None


def check_e(e: int, minimum: int = 1) -> int:
    if e < minimum:
        raise UsageError("--e", f"must be at least {minimum}, got {e}")
    return e


def check_edge(edge: int, e: int) -> int:
    if not 0 <= edge <= e:
        raise UsageError("--edge", f"must lie in 0..{e}, got {edge}")
    return edge


def parse_edges(text: str, e: int) -> list[int]:
    if text == "all":
        return list(range(e + 1))
    return [check_edge(i, e) for i in parse_ints(text, "--edges")]


# ---------------------------------------------------------------- renderers


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def text_lamplus(p: dict[str, Any]) -> str:
    return "\n".join(
        [
            p["text"],
            f"rho+: {','.join(map(str, p['rho_plus']))}",
            f"left charges: {','.join(map(str, p['left_charges']))}",
            f"right charges: {','.join(map(str, p['right_charges']))}",
            f"agreement: {_yes(p['agreement'])}",
        ]
    )


def text_abacus(p: dict[str, Any]) -> str:
    a = p["abacus"]
    lines = [
        f"lam = {p['lam'] or '()'}, rho = {p['rho']}, N0 = {p['N0']}, k = {p['k']}",
        AbacusConfig.from_json(a).render(),
        f"decoded: {p['decoded'] or '()'} (round trip {'ok' if p['roundtrip'] else 'FAILED'})",
    ]
    for ins in p["insertions"]:
        lines.append("")
        lines.append(f"{ins['side']} insertion at edge {p['edge']}: {ins['lambda_plus'] or '()'}, charge {ins['charge']}")
        lines.append(AbacusConfig.from_json(ins["abacus"]).render())
    return "\n".join(lines)


def _grid(rows: list[list[list[int]]], cell: Callable[[int, int, int, int], str]) -> str:
    blocks = []
    for m, comp in enumerate(rows, 1):
        text = "\n".join(" ".join(cell(m, r, c, x) for c, x in enumerate(row, 1)) for r, row in enumerate(comp, 1))
        blocks.append(text or "()")
    return "\n--\n".join(blocks)


def text_residues(p: dict[str, Any]) -> str:
    width = len(str(len(p["counts"]) - 1))
    grid = _grid(p["rows"], lambda m, r, c, x: str(x).rjust(width))
    counts = ", ".join(f"{i}: {n}" for i, n in enumerate(p["counts"]))
    return f"{grid}\nnodes per residue: {counts}"


def text_strips(p: dict[str, Any]) -> str:
    owner = {}
    for s in p["strips"]:
        for n in s["nodes"]:
            owner[tuple(n)] = s["type"]
    grid = _grid(p["rows"], lambda m, r, c, x: f"{x}{owner.get((m, r, c), '.')}")
    lines = [grid, ""]
    for s in p["strips"]:
        path = " ".join("({},{},{})".format(*n) for n in s["nodes"])
        lines.append(f"type {s['type']}{' (trivial)' if s['trivial'] else ''}: {path}")
    lines.append("counts: " + ", ".join(f"{k}={v}" for k, v in p["type_counts"].items()))
    return "\n".join(lines)


def text_idem(p: dict[str, Any]) -> str:
    lines = [
        f"1_lam:               {ascii_signature(p['idempotent'])}",
        f"pulled right:        {ascii_signature(p['normalized'])}"
        + ("" if p["normalized"]["steady"] else "  (unsteady)"),
    ]
    tuples = "; ".join(f"{' '.join(t['strings'])} [{t['type']}]" for t in p["close_tuples"]) or "none"
    lines.append(f"close tuples (edge {p['edge']}): {tuples}")
    sub = p["subdivision"]
    if sub is not None:
        lines.append(f"S(1_lam):            {ascii_signature(sub['subdivided'])}")
        lines.append(f"S(1_lam) pulled:     {ascii_signature(sub['subdivided_normalized'])}")
        label = f"1_lam+ ({sub['lam_plus'] or '()'})"
        if sub["target"] is None:
            lines.append(f"{label}: {sub['detail']}")
        else:
            lines.append(f"{label + ':':<21}{ascii_signature(sub['target'])}")
            lines.append(f"1_lam+ pulled:       {ascii_signature(sub['target_normalized'])}")
        lines.append(f"equal: {_yes(sub['equal'])}")
    return "\n".join(lines)


def tikz_idem(p: dict[str, Any]) -> str:
    return tikz_loading(p["idempotent"])


def text_subdivide(p: dict[str, Any]) -> str:
    return "\n".join(
        [
            "D",
            text_diagram(p["diagram"]),
            "",
            f"S(D), {p['side']} insertion",
            text_diagram(p["subdivided"]),
            "",
            f"degree {p['degree_before']} -> {p['degree_after']}, side switches {p['side_switches']}",
        ]
    )


def tikz_subdivide(p: dict[str, Any]) -> str:
    return tikz_diagram(p["subdivided"])


def text_tableaux(p: dict[str, Any]) -> str:
    shape = f"shape {p['lam'] or '()'}" + (f" and type {p['mu']}" if p["mu"] else "")
    if p["enumerated"]:
        lines = [f"{p['count']} semistandard tableau(x) of {shape}"]
    else:
        lines = [f"candidates of {shape} (enumeration skipped)"]
    for k, t in enumerate(p["tableaux"]):
        deg = "?" if t["degree"] is None else t["degree"]
        lines.append(f"  [{k}] type {t['mu'] or '()'}  degree {deg}  w = {tuple(t['permutation'])}")
    if p["graded_dim"] is not None:
        lines.append(f"graded dimension: {p['graded_dim']['text']}")
    for c in p.get("candidates", []):
        verdict = "semistandard" if c["semistandard"] else "not semistandard: " + c["violations"][0]
        lines.append(f"{c['name']}: {verdict}")
    if "semistandard" in p:
        lines.append("semistandard candidates: " + (", ".join(p["semistandard"]) or "none"))
    return "\n".join(lines)


def text_transport(p: dict[str, Any]) -> str:
    return "\n".join(
        [
            f"lam+ = {p['lam_plus'] or '()'}",
            f"mu+  = {p['mu_plus'] or '()'}",
            f"rho+ = {','.join(map(str, p['rho_plus']))}",
            f"edge nodes: lam {p['edge_nodes'][0]}, mu {p['edge_nodes'][1]}",
            f"at most one edge node each: {_yes(p['hypothesis_ok'])}",
        ]
    )


def text_verify(p: dict[str, Any]) -> str:
    r = p["report"]
    status = "PASS" if r["passed"] else "FAIL"
    lines = [f"{status} {r['name']}: {r['checked']} checked, {r['failed']} failed ({p['elapsed']:.1f}s)"]
    for f in r["failures"][:20]:
        lines.append("  " + json.dumps(f, sort_keys=True))
    if len(r["failures"]) > 20:
        lines.append(f"  ... {len(r['failures']) - 20} more in the JSON report")
    return "\n".join(lines)


# ---------------------------------------------------------------- commands


def cmd_lamplus(args: argparse.Namespace) -> Result:
    e = check_e(args.e)
    edge = check_edge(args.edge, e)
    lam = parse_lam(args.lam)
    charge = parse_charge(args, lam.level)
    lp = lambda_plus(lam, charge, e + 1, edge, strict=False)
    payload = {"command": "lamplus", "e": e, "edge": edge, "lam": str(lam), "rho": list(charge.rho)}
    payload.update(lp.to_json())
    return Result(payload, text_lamplus, code=0 if lp.agreement else 1)


def cmd_abacus(args: argparse.Namespace) -> Result:
    e = check_e(args.e)
    edge = check_edge(args.edge, e)
    lam = parse_lam(args.lam)
    if lam.level != 1:
        raise UsageError("--lam", "the abacus takes a single partition")
    rho = parse_ints(args.rho, "--rho")
    if len(rho) != 1:
        raise UsageError("--rho", "the abacus takes a single integer charge")
    p, r, e_prime = lam[1], rho[0], e + 1
    try:
        ab = to_abacus(p, r, e_prime, args.N)
    except ValueError as exc:
        raise UsageError("--N", str(exc)) from None
    decoded, charge = from_abacus(ab)
    inserts = []
    for side in ("left", "right"):
        ins = lambda_plus_abacus(p, r, e_prime, edge, side)
        inserts.append({"side": side, "abacus": ins.after.to_json(), "lambda_plus": str(ins.partition), "charge": ins.charge})
    direct = insert_runner_direct(p, r, e_prime, edge)
    inserts.append(
        {"side": "direct", "abacus": direct.after.to_json(), "lambda_plus": str(direct.partition), "charge": direct.charge}
    )
    payload = {
        "command": "abacus",
        "e": e,
        "edge": edge,
        "lam": str(p),
        "rho": r,
        "N0": max_truncation_N0(p, r, e_prime),
        "k": k_lambda(p, r, e_prime),
        "abacus": ab.to_json(),
        "decoded": str(decoded),
        "roundtrip": decoded == p and charge == r,
        "insertions": inserts,
    }
    return Result(payload, text_abacus, code=0 if payload["roundtrip"] else 1)


def cmd_residues(args: argparse.Namespace) -> Result:
    e = check_e(args.e)
    lam = parse_lam(args.lam)
    charge = parse_charge(args, lam.level)
    rd = residue_diagram(lam, charge, e + 1)
    counts = Counter(rd.fill.values())
    payload = {
        "command": "residues",
        "e": e,
        "lam": str(lam),
        "rho": list(charge.rho),
        "rows": rd.rows(),
        "counts": [counts[i] for i in range(e + 1)],
    }
    return Result(payload, text_residues)


def cmd_strips(args: argparse.Namespace) -> Result:
    e = check_e(args.e)
    edge = check_edge(args.edge, e)
    lam = parse_lam(args.lam)
    charge = parse_charge(args, lam.level)
    strips = maximal_strips(lam, charge, e + 1, edge)
    counts = Counter(s.type for s in strips)
    payload = {
        "command": "strips",
        "e": e,
        "edge": edge,
        "lam": str(lam),
        "rho": list(charge.rho),
        "rows": residue_diagram(lam, charge, e + 1).rows(),
        "strips": [{"component": s.component, **s.to_json()} for s in strips],
        "type_counts": {k: counts[k] for k in "abcd"},
    }
    return Result(payload, text_strips)


def cmd_idem(args: argparse.Namespace) -> Result:
    e = check_e(args.e, 2)
    edge = check_edge(args.edge, e)
    lam = parse_lam(args.lam)
    charge = parse_charge(args, lam.level)
    load = idempotent_loading(lam, charge, Quiver(e))
    payload: dict[str, Any] = {
        "command": "idem",
        "e": e,
        "edge": edge,
        "lam": str(lam),
        "rho": list(charge.rho),
        "kappa": list(charge.kappa),
        "idempotent": loading_json(load),
        "signature": format_signature(signature(load)),
        "normalized": loading_json(normalize_right(load)),
        "close_tuples": [
            {"strings": [s.label for s in t.strings], "type": t.type} for t in close_tuples(load, edge)
        ],
        "subdivision": None,
    }
    if not args.no_subdivide:
        sub = subdivide_idempotent(load, edge=edge)
        sub_n = normalize_right(sub)
        lp = lambda_plus(lam, charge, e + 1, edge, strict=False)
        target = target_n = None
        detail = ""
        try:
            built = idempotent_loading(lp.partition, plus_charge(charge, lp.rho_plus), Quiver(e + 1), exceptional=edge + 1)
            target, target_n = built, normalize_right(built)
        except InfeasibleOrder as exc:
            detail = f"cannot be built: {exc}"
        equal = (
            target_n is not None
            and not isinstance(sub_n, Unsteady)
            and not isinstance(target_n, Unsteady)
            and signature(sub_n) == signature(target_n)
        )
        payload["subdivision"] = {
            "lam_plus": str(lp.partition),
            "rho_plus": list(lp.rho_plus),
            "subdivided": loading_json(sub),
            "subdivided_normalized": loading_json(sub_n),
            "target": None if target is None else loading_json(target),
            "target_normalized": None if target_n is None else loading_json(target_n),
            "equal": equal,
            "detail": detail,
        }
    return Result(payload, text_idem, tikz_idem)


def _source_diagram(args: argparse.Namespace, e: int):
    if args.input:
        try:
            obj = json.loads(Path(args.input).read_text())
            d = diagram_from_json(obj.get("diagram", obj))
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise UsageError("--input", str(exc)) from None
        if d.bottom.e != e:
            raise UsageError("--e", f"the diagram lives over e = {d.bottom.e}")
        return d, {"kind": "file", "path": str(args.input)}
    if args.lam is None or args.rho is None:
        raise UsageError("--lam", "give --lam and --rho, or --input")
    lam = parse_lam(args.lam)
    charge = parse_charge(args, lam.level)
    if args.random:
        mu = parse_lam(args.mu, "--mu") if args.mu is not None else lam
        if mu.size != lam.size:
            raise UsageError("--mu", "must have the same size as --lam")
        d = random_diagram(lam, mu, charge, e + 1, random.Random(args.seed))
        return d, {"kind": "random", "lam": str(lam), "mu": str(mu), "rho": list(charge.rho), "seed": args.seed}
    if args.tableau is not None:
        mu = parse_lam(args.mu, "--mu") if args.mu is not None else None
        tabs = enumerate_sstd(lam, mu, charge, e + 1)
        if not 0 <= args.tableau < len(tabs):
            raise UsageError("--tableau", f"index must lie in 0..{len(tabs) - 1}")
        d = tableau_diagram(tabs[args.tableau])
        return d, {"kind": "tableau", "lam": str(lam), "rho": list(charge.rho), "index": args.tableau}
    d = tableau_diagram(canonical_tableau(lam, charge, e + 1))
    return d, {"kind": "identity", "lam": str(lam), "rho": list(charge.rho)}


def cmd_subdivide(args: argparse.Namespace) -> Result:
    e = check_e(args.e, 2)
    edge = check_edge(args.edge, e)
    if args.side != "auto" and not args.unsafe:
        raise UsageError("--side", "one-sided insertion needs --unsafe")
    d, source = _source_diagram(args, e)
    sd = subdivide_diagram(d, edge=edge, side=args.side, unsafe=args.unsafe)
    dj, sj = diagram_json(d), diagram_json(sd)
    payload = {
        "command": "subdivide",
        "e": e,
        "edge": edge,
        "side": args.side,
        "source": source,
        "diagram": dj,
        "subdivided": sj,
        "degree_before": dj["degree"],
        "degree_after": sj["degree"],
        "side_switches": side_switches(d, edge),
    }
    return Result(payload, text_subdivide, tikz_subdivide)


def _tableau_json(t, with_degree: bool) -> dict[str, Any]:
    j = t.to_json()
    return {
        "mu": str(t.mu),
        "assignment": j["assignment"],
        "degree": tableau_degree(t) if with_degree else None,
        "permutation": list(tableau_permutation(t)),
    }


def _read_candidates(path: str) -> list[dict[str, Any]]:
    try:
        obj = json.loads(Path(path).read_text())
        cands = obj["candidates"]
        return [
            {"name": str(c["name"]), "target": {Node(*a): Node(*b) for a, b in c["target"]}} for c in cands
        ]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError("--check", f"cannot read candidates: {exc}") from None


def cmd_tableaux(args: argparse.Namespace) -> Result:
    e = check_e(args.e, 2)
    lam = parse_lam(args.lam)
    charge = parse_charge(args)
    if lam.level < charge.level:
        lam = lam.padded(charge.level)
    mu = parse_lam(args.mu, "--mu") if args.mu is not None else None
    if mu is not None and mu.size != lam.size:
        raise UsageError("--mu", "must have the same size as --lam")
    with_degree = lam.level == charge.level
    payload: dict[str, Any] = {
        "command": "tableaux",
        "e": e,
        "lam": str(lam),
        "mu": None if mu is None else str(mu),
        "rho": list(charge.rho),
        "kappa": list(charge.kappa),
    }
    if args.check:
        if mu is None:
            raise UsageError("--mu", "candidates need the type --mu")
        cands = []
        for c in _read_candidates(args.check):
            try:
                t = make_tableau(lam, mu, charge, e + 1, c["target"])
            except ValueError as exc:
                raise UsageError("--check", f"candidate {c['name']}: {exc}") from None
            bad = semistandard_violations(t.values(), charge)
            cands.append({"name": c["name"], "semistandard": not bad, "violations": bad})
        payload["candidates"] = cands
        payload["semistandard"] = [c["name"] for c in cands if c["semistandard"]]
    tabs = [] if args.no_enumerate else enumerate_sstd(lam, mu, charge, e + 1)
    payload["enumerated"] = not args.no_enumerate
    payload["count"] = len(tabs)
    payload["tableaux"] = [_tableau_json(t, with_degree) for t in tabs]
    gd = None
    if mu is None and with_degree and not args.no_enumerate:
        g = GradedDim.from_counter(Counter(t["degree"] for t in payload["tableaux"]))
        gd = {"text": str(g), "coefficients": g.to_json()["coefficients"]}
    payload["graded_dim"] = gd
    return Result(payload, text_tableaux)


def cmd_transport(args: argparse.Namespace) -> Result:
    e = check_e(args.e)
    edge = check_edge(args.edge, e)
    lam = parse_lam(args.lam)
    mu = parse_lam(args.mu, "--mu")
    charge = parse_charge(args, lam.level)
    if mu.level != lam.level:
        raise UsageError("--mu", "must have as many components as --lam")
    if mu.size != lam.size:
        raise UsageError("--mu", "must have the same size as --lam")
    tl = transport_labels(lam, mu, charge, e + 1, edge)
    payload = {
        "command": "transport",
        "e": e,
        "edge": edge,
        "lam": str(lam),
        "mu": str(mu),
        "rho": list(charge.rho),
        **tl.to_json(),
        "edge_nodes": [count_residue_nodes(x, charge, e + 1, edge) for x in (lam, mu)],
    }
    return Result(payload, text_transport)


# ---------------------------------------------------------------- verify


def _progress(target: str, label: str, rep: VerificationReport, t0: float) -> None:
    print(f"[verify {target}] {label}: {rep.checked} checked, {rep.failed} failed ({time.perf_counter() - t0:.1f}s)",
          file=sys.stderr, flush=True)


def _transport_case(lam: Partition, mu: Partition, rho: int, e: int, edge: int) -> VerificationReport:
    charge = Charge((rho,))
    tl = transport_labels(lam, mu, charge, e + 1, edge)
    want_l = lambda_plus(lam, charge, e + 1, edge).partition
    want_m = lambda_plus(mu, charge, e + 1, edge).partition
    flag = max(count_residue_nodes(Multipartition.coerce(x), charge, e + 1, edge) for x in (lam, mu)) <= 1
    ok = tl.lam_plus == want_l and tl.mu_plus == want_m and tl.hypothesis_ok == flag
    case = {"lam": str(lam), "mu": str(mu), "rho": [rho], "e_prime": e + 1, "edge": edge}
    return VerificationReport("transport", case, ok, expected=[str(want_l), str(want_m), flag], actual=tl.to_json())


def cmd_verify(args: argparse.Namespace) -> Result:
    e_set = list(parse_ints(args.e_set, "--e-set"))
    if not e_set:
        raise UsageError("--e-set", "no values given")
    minimum = 1 if args.target in ("equiv", "transport") else 2
    for e in e_set:
        if e < minimum:
            raise UsageError("--e-set", f"{args.target} needs e >= {minimum}, got {e}")
    if args.n_max < 0:
        raise UsageError("--n-max", "must be nonnegative")
    if args.level not in (1, 2):
        raise UsageError("--level", "only levels 1 and 2 are swept")
    if args.samples < 0:
        raise UsageError("--samples", "must be nonnegative")
    if args.side != "auto" and args.target != "degree":
        raise UsageError("--side", "only the degree check takes a side")
    try:
        workers = worker_count(args.workers)
    except ValueError as exc:
        raise UsageError(f"--workers/{WORKERS_ENV}", str(exc)) from None
    edges_by_e = {e: parse_edges(args.edges, e) for e in e_set}

    t0 = time.perf_counter()
    parts: list[VerificationReport] = []
    target = args.target
    for e in e_set:
        edges = edges_by_e[e]
        if target == "equiv":
            rep = verify_equivalence_batch(args.n_max, [e], args.level, edges, workers)
        elif target == "idem":
            cases = [] if args.level == 2 else idempotent_grid(args.n_max, [e], edges)
            rep = verify_idempotent_batch(cases, workers)
        elif target in ("degree", "defect"):
            cases = [] if args.level == 2 else degree_grid(args.n_max, [e], edges)
            rep = verify_degree_batch(cases, workers, args.side) if target == "degree" else verify_defect_batch(cases, workers)
        else:
            reps = [
                _transport_case(lam, mu, rho, e, i)
                for n in range(args.n_max + 1)
                for lam in partitions_of(n)
                for mu in partitions_of(n)
                for rho in range(e + 1)
                for i in edges
            ]
            rep = merge_reports("transport", reps)
        _progress(target, f"e={e}", rep, t0)
        parts.append(rep)
    if args.samples or args.level == 2:
        n_samples = args.samples or 50
        if target == "idem":
            rep = verify_idempotent_batch(sampled_level_two(n_samples, args.n_max, e_set, args.seed), workers)
            _progress(target, f"{n_samples} level two samples", rep, t0)
            parts.append(rep)
        elif target in ("degree", "defect"):
            cases = random_degree_cases(n_samples, args.n_max, e_set, args.seed)
            rep = verify_degree_batch(cases, workers, args.side) if target == "degree" else verify_defect_batch(cases, workers)
            _progress(target, f"{n_samples} random diagrams", rep, t0)
            parts.append(rep)
    names = {"equiv": "lambda_plus equivalence", "idem": "idempotent correspondence", "degree": "degree preservation",
             "defect": "degree defect", "transport": "label transport"}
    name = names[target] if args.side == "auto" else f"{names[target]} ({args.side} insertion)"
    report = merge_reports(name, parts)
    params = {
        "n_max": args.n_max,
        "e_set": e_set,
        "level": args.level,
        "edges": args.edges,
        "samples": args.samples,
        "seed": args.seed,
        "side": args.side,
        "workers": workers,
    }
    payload = {
        "command": "verify",
        "target": target,
        "params": params,
        "elapsed": round(time.perf_counter() - t0, 3),
        "report": report.to_json(),
    }
    if args.report:
        try:
            Path(args.report).write_text(json.dumps(payload, indent=2) + "\n")
        except OSError as exc:
            raise UsageError("--report", str(exc)) from None
    return Result(payload, text_verify, code=0 if report.passed else 1)


# ---------------------------------------------------------------- parser


def _common(p: argparse.ArgumentParser, *, edge: bool = True, rho: bool = True, kappa: bool = False, tikz: bool = False) -> None:
    p.add_argument("--e", type=int, default=3, help="quiver A_e^(1) with e+1 vertices (default 3)")
    if edge:
        p.add_argument("--edge", type=int, default=0, help="subdivided edge i -> i+1 (default 0)")
    if rho:
        p.add_argument("--rho", required=True, help="charge residues, comma separated, one per component")
    if kappa:
        p.add_argument("--kappa", default=None, help="red string positions, comma separated (default 0,1,..)")
    formats = ["json", "text", "tikz"] if tikz else ["json", "text"]
    p.add_argument("--format", choices=formats, default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=PROG, description="Subdivision combinatorics of weighted KLRW algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lamplus", help="lambda^+ by the box and abacus constructions")
    _common(p)
    p.add_argument("--lam", required=True, help='multipartition such as "4,3,2", "3,1,1|4" or "1^9"')
    p.set_defaults(func=cmd_lamplus)

    p = sub.add_parser("abacus", help="abacus display and runner insertion")
    _common(p)
    p.add_argument("--lam", required=True)
    p.add_argument("--N", type=int, default=None, help="truncation level (default N0 - 2)")
    p.set_defaults(func=cmd_abacus)

    p = sub.add_parser("residues", help="residue filling")
    _common(p, edge=False)
    p.add_argument("--lam", required=True)
    p.set_defaults(func=cmd_residues)

    p = sub.add_parser("strips", help="maximal strips for an edge")
    _common(p)
    p.add_argument("--lam", required=True)
    p.set_defaults(func=cmd_strips)

    p = sub.add_parser("idem", help="the idempotent loading 1_lam and its subdivision")
    _common(p, kappa=True, tikz=True)
    p.add_argument("--lam", required=True)
    p.add_argument("--no-subdivide", action="store_true", help="skip the comparison with 1_lam+")
    p.set_defaults(func=cmd_idem)

    p = sub.add_parser("subdivide", help="subdivide a straight diagram")
    _common(p, kappa=True, tikz=True)
    p.set_defaults(rho=None)
    for a in p._actions:
        if a.dest == "rho":
            a.required = False
    p.add_argument("--lam", default=None)
    p.add_argument("--mu", default=None, help="type of the tableau or target of a random diagram")
    p.add_argument("--tableau", type=int, default=None, help="index into the semistandard tableaux")
    p.add_argument("--random", action="store_true", help="random bijection onto the coordinates of --mu")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--input", default=None, help="diagram JSON file")
    p.add_argument("--side", choices=["auto", "left", "right"], default="auto")
    p.add_argument("--unsafe", action="store_true", help="allow one-sided insertion")
    p.set_defaults(func=cmd_subdivide)

    p = sub.add_parser("tableaux", help="semistandard tableaux, degrees and candidate checks")
    _common(p, edge=False, kappa=True)
    p.add_argument("--lam", required=True)
    p.add_argument("--mu", default=None)
    p.add_argument("--check", default=None, help="JSON file of named candidate tableaux")
    p.add_argument("--no-enumerate", action="store_true")
    p.set_defaults(func=cmd_tableaux)

    p = sub.add_parser("transport", help="move a pair of labels across the subdivision")
    _common(p)
    p.add_argument("--lam", required=True)
    p.add_argument("--mu", required=True)
    p.set_defaults(func=cmd_transport)

    p = sub.add_parser("verify", help="batch verification with a JSON report")
    p.add_argument("target", choices=["equiv", "idem", "degree", "defect", "transport"])
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--e-set", default="2,3")
    p.add_argument("--level", type=int, default=1)
    p.add_argument("--edges", default="0", help='comma separated edges or "all"')
    p.add_argument("--samples", type=int, default=0, help="extra randomized cases")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--side", choices=["auto", "left", "right"], default="auto")
    p.add_argument("--workers", type=int, default=None, help=f"worker processes (default ${WORKERS_ENV} or 1)")
    p.add_argument("--report", default=None, help="write the JSON report here")
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.set_defaults(func=cmd_verify)
    for sp in sub.choices.values():
        sp.set_defaults(parser=sp)
    return parser


def render(result: Result, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(result.payload, indent=2)
    if fmt == "tikz":
        assert result.tikz is not None
        return result.tikz(result.payload)
    return result.text(result.payload)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # argparse exits with 2 on its own errors
    try:
        result = args.func(args)
    except UsageError as exc:
        args.parser.print_usage(sys.stderr)
        print(f"{PROG} {args.command}: error: {exc}", file=sys.stderr)
        return 2
    validate(result.payload, args.command)
    print(render(result, args.format))
    return result.code


__all__ = ["main", "build_parser", "render", "UsageError", "Result"]
