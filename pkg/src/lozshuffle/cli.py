"""Command-line front end.

    lozshuffle count   --spec JSON [--cs]
    lozshuffle formula NAME ARG...
    lozshuffle verify  THEOREM (--params JSON | --grid FILE) [--mutate NAME]
    lozshuffle sweep   --grid FILE [--mutate NAME]
    lozshuffle render  --spec JSON [--tiling K] --out PATH

Exit codes: 0 success, 1 verification failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import math
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import formulas, verifier
from .enumerator import count_cs_tilings, count_tilings, enumerate_tilings
from .regions import DOWN, UP, Cell, Fern, Region, RegionError, build_CS, spec_from_json

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _value(v) -> str:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return str(v)


def _load_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what} is not valid JSON: {exc}") from None


def _region(spec_text: str) -> tuple[object, Region]:
    spec = spec_from_json(_load_json(spec_text, "--spec"))
    return spec, spec.build()


# ---------------------------------------------------------------------------
# count


def cmd_count(spec_text: str, symmetric: bool = False) -> dict:
    spec, region = _region(spec_text)
    if symmetric:
        if region.center is None:
            raise InputError("region is not centrally symmetric")
        n = count_cs_tilings(region)
    else:
        n = count_tilings(region)
    return {"region": spec.to_json(), "symmetric": symmetric, "count": str(n)}


# ---------------------------------------------------------------------------
# formula


def _int(s: str) -> int:
    try:
        return int(s)
    except ValueError:
        raise InputError(f"expected an integer, got {s!r}") from None


def _set(s: str) -> tuple[int, ...]:
    """Index set from ``[1,3]``, ``1,3`` or an empty string."""
    s = s.strip()
    if s.startswith("["):
        vals = _load_json(s, "index set")
        if not isinstance(vals, list):
            raise InputError(f"index set must be a list, got {s!r}")
    else:
        vals = [v for v in s.split(",") if v.strip()]
    return tuple(sorted(_int(str(v)) for v in vals))


def _fern(s: str) -> Fern:
    return Fern.from_json(_load_json(s, "fern"))


# name -> (argument parsers, attribute of the formulas module); None parses a varargs int list
FORMULAS = {
    "pp": ((_int, _int, _int), "pp"),
    "hyperfactorial": ((_int,), "hyperfactorial"),
    "pochhammer": ((_int, _int), "pochhammer"),
    "delta": ((_set,), "delta_prod"),
    "clp": ((_int, _int, _set), "clp_count"),
    "s": (None, "s_fn"),
    "shuffle-ratio": ((_set, _set, _set, _set, _int), "shuffle_ratio"),
    "cs-shuffle-ratio": ((_int, _int, _set, _set, _set, _set), "cs_shuffle_ratio"),
    "mcB": ((_int, _int, _int, _int), "mc_B_closed"),
    "mcBprime": ((_int, _int, _int, _int), "mc_Bprime_closed"),
    "thm24": ((_int, _int, _fern, _fern), "thm24_rhs"),
    "thm25": ((_int, _int, _fern, _fern), "thm25_rhs"),
}


def cmd_formula(name: str, args: Sequence[str]) -> dict:
    if name not in FORMULAS:
        raise InputError(f"unknown formula {name!r}; choose from {', '.join(FORMULAS)}")
    parsers, attr = FORMULAS[name]
    fn = getattr(formulas, attr)
    if parsers is None:
        value = fn([_int(a) for a in args])
    else:
        if len(args) != len(parsers):
            raise InputError(f"{name} takes {len(parsers)} arguments, got {len(args)}")
        value = fn(*(p(a) for p, a in zip(parsers, args)))
    return {"formula": name, "args": list(args), "value": _value(value)}


# ---------------------------------------------------------------------------
# verify / sweep


VERIFY_THEOREMS = ("1.1", "1.2", "2.1", "2.2", "2.3", "2.4", "2.5", "kuo", "base", "recurrence")


def _sets(p: dict, *keys) -> list:
    return [tuple(p.get(k, ())) for k in keys]


def _verify_point(theorem: str, p: dict) -> list[verifier.CheckReport]:
    try:
        x, y = int(p["x"]), int(p["y"])
    except (KeyError, TypeError, ValueError):
        raise InputError("params need integer x and y") from None
    if theorem in ("1.1", "1.2"):
        U, D, B, U2, D2 = _sets(p, "U", "D", "B", "U2", "D2")
        check = verifier.check_shuffle_H if theorem == "1.1" else verifier.check_shuffle_CS
        return [check(x, y, U, D, B, U2, D2)]
    if theorem == "kuo":
        U, D, B = _sets(p, "U", "D", "B")
        region = build_CS(x, y, U, D, B)
        return [verifier.check_kuo(region, verifier.choose_kuo_vertices(region, p.get("case")))]
    if theorem == "base":
        U, D, B = _sets(p, "U", "D", "B")
        return [verifier.check_base_case(str(p.get("kind", "")), x, y, U, D, B)]
    if theorem == "recurrence":
        U, D, B = _sets(p, "U", "D", "B")
        case = int(p.get("case", verifier.recurrence_case(U, D, B)))
        return [verifier.check_recurrence(case, x, y, U, D, B)]
    ferns = p.get("ferns", [])
    return [verifier.check_fern_theorem(theorem, x, y, ferns, p.get("ferns2"), p.get("gaps", ()))]


def _read_grid(path: str) -> dict:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read grid {path!r}: {exc.strerror}") from None
    grid = _load_json(text, "grid file")
    if not isinstance(grid, dict):
        raise InputError("grid file must hold a JSON object")
    return grid


def _run_reports(run, mutate: Optional[str]) -> list[verifier.CheckReport]:
    ctx = contextlib.nullcontext()
    if mutate:
        try:
            ctx = verifier.mutated(mutate)
        except KeyError as exc:
            raise InputError(exc.args[0]) from None
    with ctx:
        return run()


def cmd_verify(theorem: str, params: Optional[str] = None, grid: Optional[str] = None,
               mutate: Optional[str] = None) -> list[verifier.CheckReport]:
    if theorem not in VERIFY_THEOREMS:
        raise InputError(f"unknown theorem {theorem!r}; choose from {', '.join(VERIFY_THEOREMS)}")
    if (params is None) == (grid is None):
        raise InputError("give exactly one of --params and --grid")
    if grid is not None:
        g = _read_grid(grid)
        g["theorem"] = theorem
        return _run_reports(lambda: verifier.sweep(g), mutate)
    p = _load_json(params, "--params")
    if not isinstance(p, dict):
        raise InputError("--params must be a JSON object")
    return _run_reports(lambda: _verify_point(theorem, p), mutate)


def cmd_sweep(grid: str, mutate: Optional[str] = None) -> list[verifier.CheckReport]:
    g = _read_grid(grid)
    if "theorem" not in g:
        raise InputError("grid file needs a 'theorem' key")
    return _run_reports(lambda: verifier.sweep(g), mutate)


def format_reports(reports, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["case", "status", "lhs", "rhs"])
        for r in reports:
            w.writerow([r.case_id, r.status, str(r.lhs), str(r.rhs)])
        return buf.getvalue()
    return "".join(json.dumps(r.to_json(), sort_keys=True) + "\n" for r in reports)


# ---------------------------------------------------------------------------
# render

SQ3 = math.sqrt(3) / 2
SCALE = 30.0
LOZENGE_FILL = {"vertical": "#f2c14e", "right": "#5b8e7d", "left": "#8cb8d9"}


def _xy(v) -> tuple[float, float]:
    i, r = v
    return (i + r / 2) * SCALE, -r * SQ3 * SCALE


def _pts(vs, dx: float, dy: float) -> str:
    return " ".join(f"{x + dx:.2f},{y + dy:.2f}" for x, y in (_xy(v) for v in vs))


def _holes(region: Region) -> list:
    """Cells inside the region's bounding hexagon that the region lacks (dents, fern holes)."""
    verts = [v for c in region.cells for v in c.vertices()]
    if not verts:
        return []
    i0, i1 = min(v[0] for v in verts), max(v[0] for v in verts)
    r0, r1 = min(v[1] for v in verts), max(v[1] for v in verts)
    s0, s1 = min(v[0] + v[1] for v in verts), max(v[0] + v[1] for v in verts)
    out = []
    for r in range(r0, r1):
        for p in range(s0 - r, i1 + 2):
            for o in (UP, DOWN):
                c = Cell(r, p, o)
                if c in region.cells:
                    continue
                if all(i0 <= i <= i1 and s0 <= i + rr <= s1 for i, rr in c.vertices()):
                    out.append(c)
    # dents at a corner of the axis can fall outside that hexagon
    for p in range(1, region.axis_len + 1):
        for c in (Cell(0, p, UP), Cell(-1, p, DOWN)):
            if c not in region.cells and c not in out and (c.row == 0 or r0 < 0):
                out.append(c)
    return sorted(out)


def _lozenge_kind(a, b) -> str:
    u, d = (a, b) if a.orient == UP else (b, a)
    if d.row == u.row - 1:
        return "vertical"
    return "right" if d.pos == u.pos else "left"


def render_svg(region: Region, tiling=None) -> str:
    """Deterministic SVG picture of a region, optionally with one tiling drawn."""
    cells = sorted(region.cells)
    holes = _holes(region)
    verts = [_xy(v) for c in cells + holes for v in c.vertices()] or [(0.0, 0.0)]
    pad = SCALE / 2
    minx, maxx = min(v[0] for v in verts), max(v[0] for v in verts)
    miny, maxy = min(v[1] for v in verts), max(v[1] for v in verts)
    dx, dy = pad - minx, pad - miny
    w, h = maxx - minx + 2 * pad, maxy - miny + 2 * pad
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.2f}" height="{h:.2f}" '
        f'viewBox="0 0 {w:.2f} {h:.2f}">',
        f'<rect width="{w:.2f}" height="{h:.2f}" fill="white"/>',
        '<g id="cells" stroke="#999999" stroke-width="0.6">',
    ]
    for c in cells:
        fill = "#ffffff" if c.orient == UP else "#eeeeee"
        out.append(f'<polygon class="{c.orient}" points="{_pts(c.vertices(), dx, dy)}" fill="{fill}"/>')
    out.append("</g>")
    out.append('<g id="dents" fill="black" stroke="black" stroke-width="0.6">')
    for c in holes:
        out.append(f'<polygon class="dent" points="{_pts(c.vertices(), dx, dy)}"/>')
    out.append("</g>")
    if tiling is not None:
        out.append('<g id="tiling" stroke="black" stroke-width="1.2">')
        for loz in sorted(tuple(sorted(t)) for t in tiling):
            a, b = loz
            va, vb = set(a.vertices()), set(b.vertices())
            shared = sorted(va & vb)
            quad = [next(iter(va - vb)), shared[0], next(iter(vb - va)), shared[1]]
            kind = _lozenge_kind(a, b)
            out.append(f'<polygon class="{kind}" points="{_pts(quad, dx, dy)}" fill="{LOZENGE_FILL[kind]}"/>')
        out.append("</g>")
    if region.axis_len:
        (x0, y0), (x1, _) = _xy((0, 0)), _xy((region.axis_len, 0))
        out.append(f'<line id="axis" x1="{x0 + dx:.2f}" y1="{y0 + dy:.2f}" x2="{x1 + dx:.2f}" '
                   f'y2="{y0 + dy:.2f}" stroke="#cc3333" stroke-width="1" stroke-dasharray="4 3"/>')
    for p in region.barriers:
        (x0, y0), (x1, _) = _xy((p - 1, 0)), _xy((p, 0))
        out.append(f'<line class="barrier" x1="{x0 + dx:.2f}" y1="{y0 + dy:.2f}" x2="{x1 + dx:.2f}" '
                   f'y2="{y0 + dy:.2f}" stroke="#1f4fd1" stroke-width="4"/>')
    if region.center is not None:
        P, hh = region.center
        cx, cy = _xy((P / 2, hh / 2))
        out.append(f'<circle id="center" cx="{cx + dx:.2f}" cy="{cy + dy:.2f}" r="3" fill="#cc3333"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def cmd_render(spec_text: str, out: str, tiling: Optional[int] = None) -> dict:
    spec, region = _region(spec_text)
    chosen = None
    if tiling is not None:
        if tiling < 0:
            raise InputError("tiling index must be nonnegative")
        for k, t in enumerate(enumerate_tilings(region)):
            if k == tiling:
                chosen = t
                break
        else:
            raise InputError(f"tiling index {tiling} out of range")
    svg = render_svg(region, chosen)
    try:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(svg)
    except OSError as exc:
        raise InputError(f"cannot write {out!r}: {exc.strerror}") from None
    return {"region": spec.to_json(), "out": out, "cells": len(region.cells),
            "tiling": tiling}


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lozshuffle", description="Exact lozenge tiling counts and identity checks.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count tilings of one region")
    p.add_argument("--spec", required=True)
    p.add_argument("--cs", action="store_true", help="count centrally symmetric tilings")

    p = sub.add_parser("formula", help="evaluate a closed form")
    p.add_argument("name")
    p.add_argument("args", nargs="*")

    for name in ("verify", "sweep"):
        p = sub.add_parser(name, help=f"{name} identities")
        if name == "verify":
            p.add_argument("theorem")
            p.add_argument("--params")
        p.add_argument("--grid", required=(name == "sweep"))
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--mutate", help="swap in a perturbed closed form (negative control)")

    p = sub.add_parser("render", help="write an SVG picture of a region")
    p.add_argument("--spec", required=True)
    p.add_argument("--tiling", type=int)
    p.add_argument("--out", required=True)
    return ap


def main(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        if ns.command in ("verify", "sweep"):
            if ns.command == "verify":
                reports = cmd_verify(ns.theorem, ns.params, ns.grid, ns.mutate)
            else:
                reports = cmd_sweep(ns.grid, ns.mutate)
            stdout.write(format_reports(reports, ns.format))
            return EXIT_FAIL if any(r.status == verifier.FAIL for r in reports) else EXIT_OK
        if ns.command == "count":
            result = cmd_count(ns.spec, ns.cs)
        elif ns.command == "formula":
            result = cmd_formula(ns.name, ns.args)
        else:
            result = cmd_render(ns.spec, ns.out, ns.tiling)
    except (InputError, RegionError, formulas.FormulaError, verifier.HypothesisError, ValueError) as exc:
        stdout.write(json.dumps({"error": str(exc)}) + "\n")
        return EXIT_INPUT
    stdout.write(json.dumps(result, sort_keys=True) + "\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
