"""JSON payloads and the text / TikZ renderings built from them.

The ``*_json`` functions turn library objects into plain JSON data.  Every
``text_*`` and ``tikz_*`` function reads only such a payload, so a rendering
can be regenerated from a saved report.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Mapping, Sequence

from .diagram import (
    GHOST,
    RED,
    SOLID,
    Loading,
    StraightDiagram,
    Unsteady,
    build_loading,
    degree,
    straight_diagram,
)

_ABBREV = {SOLID: "s", GHOST: "g", RED: "r"}


def frac_json(x: Fraction | int) -> list[int]:
    x = Fraction(x)
    return [x.numerator, x.denominator]


def frac_of(pair: Sequence[int]) -> Fraction:
    return Fraction(int(pair[0]), int(pair[1]))


def key_json(key: tuple) -> list:
    return [k if isinstance(k, (str, int)) else int(k) for k in key]


# ---------------------------------------------------------------- payloads


def loading_json(load: Loading | Unsteady) -> dict[str, Any]:
    steady = True
    if isinstance(load, Unsteady):
        steady, load = False, load.loading
    return {
        "e": load.e,
        "eps": frac_json(load.eps),
        "shifts": [frac_json(s) for s in load.shifts],
        "steady": steady,
        "strings": [
            {"kind": s.kind, "residue": s.residue, "x": frac_json(s.x), "key": key_json(s.key)}
            for s in load.strings
        ],
    }


def diagram_json(d: StraightDiagram) -> dict[str, Any]:
    return {
        "bottom": loading_json(d.bottom),
        "top": loading_json(d.top),
        "match": [[key_json(b), key_json(t)] for b, t in d.match],
        "degree": degree(d),
    }


def loading_from_json(obj: Mapping[str, Any]) -> Loading:
    """Rebuild a loading; ghosts are recomputed from the shifts and must agree."""
    solids, reds = [], []
    for s in obj["strings"]:
        if s["kind"] == SOLID:
            solids.append((tuple(s["key"]), s["residue"], frac_of(s["x"])))
        elif s["kind"] == RED:
            reds.append((tuple(s["key"]), s["residue"], frac_of(s["x"])))
    load = build_loading(
        int(obj["e"]), solids, reds, [frac_of(x) for x in obj["shifts"]], frac_of(obj["eps"])
    )
    given = sorted((s["kind"], s["residue"], frac_of(s["x"])) for s in obj["strings"])
    if given != sorted((s.kind, s.residue, s.x) for s in load.strings):
        raise ValueError("ghost strings do not sit at their solids plus the shift")
    return load


def diagram_from_json(obj: Mapping[str, Any]) -> StraightDiagram:
    match = {tuple(b): tuple(t) for b, t in obj["match"]}
    return straight_diagram(loading_from_json(obj["bottom"]), loading_from_json(obj["top"]), match)


# ---------------------------------------------------------------- text


def ascii_signature(payload: Mapping[str, Any]) -> str:
    """One-line signature with each red string fenced by bars: ``s0 g1 | r1 | s2``."""
    out: list[str] = []
    for s in payload["strings"]:
        tok = f"{_ABBREV[s['kind']]}{s['residue']}"
        out.extend(["|", tok, "|"] if s["kind"] == RED else [tok])
    text = " ".join(out)
    while "| |" in text:
        text = text.replace("| |", "|")
    return text


def text_loading(payload: Mapping[str, Any]) -> str:
    lines = [ascii_signature(payload)]
    if not payload.get("steady", True):
        lines.append("(unsteady)")
    for s in payload["strings"]:
        x = frac_of(s["x"])
        lines.append(f"  {_ABBREV[s['kind']]}{s['residue']:<3} x={float(x):+.4f}  ({x})")
    return "\n".join(lines)


def text_diagram(payload: Mapping[str, Any]) -> str:
    return "\n".join(
        [
            "top:    " + ascii_signature(payload["top"]),
            "bottom: " + ascii_signature(payload["bottom"]),
            f"degree: {payload['degree']}",
        ]
    )


# ---------------------------------------------------------------- tikz

_STYLE = {
    SOLID: "black, thick",
    GHOST: "gray, dashed",
    RED: "red, very thick",
}


def _tikz_doc(body: list[str]) -> str:
    return "\n".join(
        [
            r"\documentclass[tikz,border=4pt]{standalone}",
            r"\begin{document}",
            r"\begin{tikzpicture}[x=1.2cm, y=1cm]",
            *body,
            r"\end{tikzpicture}",
            r"\end{document}",
            "",
        ]
    )


def _label(s: Mapping[str, Any]) -> str:
    return f"${_ABBREV[s['kind']]}_{{{s['residue']}}}$"


def tikz_loading(payload: Mapping[str, Any], height: float = 1.5) -> str:
    body = []
    for s in payload["strings"]:
        x = float(frac_of(s["x"]))
        body.append(
            rf"\draw[{_STYLE[s['kind']]}] ({x:.4f},0) -- ({x:.4f},{height}) "
            rf"node[above, font=\tiny] {{{_label(s)}}};"
        )
    return _tikz_doc(body)


def tikz_diagram(payload: Mapping[str, Any], height: float = 3.0) -> str:
    """Straight strings from the bottom loading to the top loading."""
    top = {tuple(s["key"]): s for s in payload["top"]["strings"]}
    pairs = {tuple(b): tuple(t) for b, t in payload["match"]}
    body = []
    for s in payload["bottom"]["strings"]:
        key = tuple(s["key"])
        if s["kind"] == SOLID:
            tk = pairs[key]
        elif s["kind"] == GHOST:
            tk = ("ghost",) + pairs[key[1:]]
        else:
            tk = key
        t = top[tk]
        xb, xt = float(frac_of(s["x"])), float(frac_of(t["x"]))
        body.append(
            rf"\draw[{_STYLE[s['kind']]}] ({xb:.4f},0) node[below, font=\tiny] {{{_label(s)}}} "
            rf"-- ({xt:.4f},{height});"
        )
    return _tikz_doc(body)


__all__ = [
    "frac_json",
    "frac_of",
    "key_json",
    "loading_json",
    "diagram_json",
    "loading_from_json",
    "diagram_from_json",
    "ascii_signature",
    "text_loading",
    "text_diagram",
    "tikz_loading",
    "tikz_diagram",
]
