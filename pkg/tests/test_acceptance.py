"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest -s tests/test_acceptance.py`` to see the summary lines.
The full suite takes several minutes on one core.
"""
import ast
import io
import itertools
import json
import re
from collections import Counter

import pytest

from lozshuffle import cli, formulas as F, verifier as V
from lozshuffle.enumerator import count_cs_tilings, count_tilings
from lozshuffle.regions import build_CS, build_H, build_S, build_T, build_hexagon, remove_forced

pytestmark = pytest.mark.acceptance


def report(n: int, title: str, ok: bool, detail: str = "") -> None:
    print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {title}" + (f" ({detail})" if detail else ""))
    assert ok, detail


def tally(reports) -> Counter:
    return Counter(r.status for r in reports)


def sequences(total: int):
    """Nonnegative sequences with positive ends, no two adjacent zeros, sum at most ``total``."""
    out = [(0,)]

    def grow(prefix, left):
        if prefix[-1] > 0:
            out.append(prefix)
        for v in range(left + 1):
            if v or prefix[-1]:
                grow(prefix + (v,), left - v)

    for first in range(1, total + 1):
        grow((first,), total - first)
    return out


def test_criterion_1_formulas_match_enumeration():
    bad = []
    n = 0
    for a, b, c in itertools.product(range(4), repeat=3):
        n += 1
        if F.pp(a, b, c) != count_tilings(build_hexagon(a, b, c)):
            bad.append(("pp", a, b, c))
    assert F.pp(2, 2, 2) == 20
    for a, b in itertools.product(range(4), repeat=2):
        for dents in itertools.combinations(range(1, a + b + 1), a):
            n += 1
            if F.clp_count(a, b, dents) != count_tilings(build_T(a, b, dents)):
                bad.append(("clp", a, b, dents))
    for seq in sequences(8):
        n += 1
        if F.s_fn(seq) != count_tilings(build_S(seq)):
            bad.append(("s", seq))
    report(1, "pp, clp_count and s_fn equal tiling counts", not bad, f"{n} cases, mismatches {bad[:3]}")


def test_criterion_2_shuffling_H():
    reps = V.sweep({"theorem": "1.1", "x": [0, 3], "y": [0, 3], "n": [0, 3], "b": [0, 1]})
    t = tally(reps)
    report(2, "shuffling identity for doubly-dented hexagons", len(reps) > 0 and t["fail"] == 0, dict(t).__repr__())


def _axis_len(case_id: str) -> int:
    m = re.match(r"CS x=(\d+) y=(\d+) U=\{([\d,]*)\} D=\{([\d,]*)\}", case_id)
    x, y = int(m[1]), int(m[2])
    W = {int(v) for part in (m[3], m[4]) if part for v in part.split(",")}
    return x + y + 2 * len(W)


def test_criterion_3_shuffling_CS():
    reps = V.sweep({"theorem": "1.2", "max_axis": 12, "b": [0, 6]})
    t = tally(reps)
    parities = {_axis_len(r.case_id) % 2 for r in reps if r.status == V.PASS}
    squares = all(r.witness["square_lhs"] == r.witness["square_rhs"] for r in reps)
    ok = t["fail"] == 0 and parities == {0, 1} and squares and t["pass"] > 0
    report(3, "shuffling identity for symmetric tilings, axis <= 12, both centre types", ok,
           f"{dict(t)}, axis parities {sorted(parities)}")


def test_criterion_4_kuo():
    reps = V.sweep({"theorem": "kuo", "max_axis": 10, "b": [0, 5]})
    seen = Counter()
    regions = set()
    for r in reps:
        if r.status != V.PASS:
            continue
        spec = ast.literal_eval(r.case_id.split(" ", 1)[1].split(" alpha")[0])
        regions.add(json.dumps(spec, sort_keys=True))
        N = spec["x"] + spec["y"] + 2 * len(set(spec["U"]) | set(spec["D"]))
        seen[(V.kuo_case(spec["U"], spec["D"]), N % 2)] += 1
    t = tally(reps)
    cover = {(c, p) for c, p in seen}
    ok = t["fail"] == 0 and len(regions) >= 50 and len({c for c, _ in cover}) == 4 and {p for _, p in cover} == {0, 1}
    report(4, "condensation identity on symmetric regions", ok,
           f"{len(regions)} regions, {dict(t)}, cases {sorted(cover)}")


def test_criterion_5_recurrences_and_base_cases():
    rec = V.sweep({"theorem": "recurrence", "max_axis": 12, "b": [0, 6]})
    terms = V.sweep({"theorem": "kuo-terms", "max_axis": 10, "b": [0, 5]})
    base = V.sweep({"theorem": "base", "max_axis": 12, "b": [0, 6]})
    kinds = Counter(r.case_id.split()[1] for r in base)
    cases = Counter(r.case_id.split()[1] for r in rec)
    t = tally(rec + terms + base)
    ok = t["fail"] == 0 and set(kinds) == {"y0", "x2b", "y1", "x2b1"} and {"1", "2", "3", "4"} <= set(cases)
    report(5, "recurrences and base-case bijections", ok,
           f"recurrence {dict(tally(rec))}, reduction {dict(tally(terms))}, base {dict(kinds)}")


def test_criterion_6_fern_closed_forms():
    reps = []
    for thm in ("2.4", "2.5"):
        reps += V.sweep({"theorem": thm, "x": [0, 4], "y": [0, 4], "max_total": 3, "max_len": 3})
    t = tally(reps)
    report(6, "closed forms for symmetric tilings of fern-cored hexagons", t["fail"] == 0 and t["pass"] > 0,
           repr(dict(t)))


def _structural_regions():
    for a, b, c in itertools.product(range(4), repeat=3):
        yield build_hexagon(a, b, c)
    for x, y in itertools.product(range(4), range(3)):
        for U in ([], [1], [1, 2]):
            A = x + y + len(U) + 1
            yield build_H(x, y, U, [A], [])
    for x, y in itertools.product(range(5), range(4)):
        for U, D, B in (([], [], []), ([1], [], []), ([1], [1], []), ([1, 2], [2], []), ([2], [], [1])):
            try:
                yield build_CS(x, y, U, D, B)
            except ValueError:
                pass


def test_criterion_7_structural_invariants():
    bad = []
    n_sym = n = 0
    for r in _structural_regions():
        n += 1
        m = count_tilings(r)
        if m != count_tilings(r, "backtrack") or m != count_tilings(remove_forced(r)):
            bad.append(r.spec)
        if r.center is not None:
            n_sym += 1
            mc = count_cs_tilings(r)
            if mc != count_cs_tilings(r, "backtrack") or (m - mc) % 2:
                bad.append(r.spec)
    report(7, "parity, strategy agreement and forced-lozenge removal", not bad,
           f"{n} regions, {n_sym} symmetric, bad {bad[:3]}")


MUTATION_GRIDS = {
    "pp-y": {"theorem": "1.1", "x": [0, 1], "y": [0, 1], "n": [0, 2], "b": [0, 0]},
    "delta-mirror": {"theorem": "1.2", "max_axis": 6},
    "mcB": {"theorem": "2.4", "x": [0, 2], "y": [0, 2], "max_total": 2, "max_len": 1},
    "hyperfactorial": {"theorem": "1.1", "x": [0, 1], "y": [0, 1], "n": [0, 3], "b": [0, 0]},
}


def test_criterion_8_negative_control(tmp_path):
    codes = {}
    for name in V.MUTATIONS:
        grid = tmp_path / f"{name}.json"
        grid.write_text(json.dumps(MUTATION_GRIDS[name]))
        clean = cli.main(["sweep", "--grid", str(grid)], stdout=io.StringIO())
        mutated = cli.main(["sweep", "--grid", str(grid), "--mutate", name], stdout=io.StringIO())
        codes[name] = (clean, mutated)
    ok = all(c == (0, 1) for c in codes.values()) and len(codes) >= 4
    report(8, "every mutation makes a sweep exit 1", ok, repr(codes))
