"""Numerical verification of the shuffling identities, Kuo condensation,
base cases and recurrences on small instances.

Every ratio identity is compared in cross-multiplied integer form.  A check
whose compared counts are all zero is reported as ``vacuous``.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

from . import formulas
from .enumerator import count_cs_tilings, count_cs_with_deletions, count_tilings
from .regions import (
    CSSpec,
    Cell,
    Fern,
    HSpec,
    Region,
    RegionError,
    build_CS,
    build_E,
    build_E_prime,
    build_R,
    build_S,
    build_T,
    cs_index_sets,
    down,
    e_ferns,
    index_set,
    mirror,
    reflect_cell,
    shift_left,
    up,
)

PASS, FAIL, VACUOUS = "pass", "fail", "vacuous"


class HypothesisError(ValueError):
    """Parameters fall outside the hypotheses of the requested check."""


@dataclass(frozen=True)
class CheckReport:
    case_id: str
    status: str
    lhs: int
    rhs: int
    witness: dict = field(default_factory=dict, compare=False)

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def to_json(self) -> dict:
        return {
            "case": self.case_id,
            "status": self.status,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "witness": {k: _jsonable(v) for k, v in self.witness.items()},
        }


def _jsonable(v):
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, (int, Fraction)):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(a) for a in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(a) for k, a in v.items()}
    return str(v)


def _report(case_id: str, lhs: int, rhs: int, counts: Iterable[int], **witness) -> CheckReport:
    if lhs != rhs:
        status = FAIL
    elif all(c == 0 for c in counts):
        status = VACUOUS
    else:
        status = PASS
    return CheckReport(case_id, status, lhs, rhs, witness)


def _fmt(S) -> str:
    return "{" + ",".join(map(str, S)) + "}"


# ---------------------------------------------------------------------------
# cached counts keyed by region spec


@lru_cache(maxsize=256)
def _build(spec) -> Region:
    return spec.build()


@lru_cache(maxsize=1 << 16)
def _M(spec) -> int:
    return count_tilings(_build(spec))


@lru_cache(maxsize=1 << 16)
def _Mc(spec) -> int:
    return count_cs_tilings(_build(spec))


def clear_caches() -> None:
    _build.cache_clear()
    _M.cache_clear()
    _Mc.cache_clear()


def _cs(x, y, U, D, B=()) -> CSSpec:
    cs_index_sets(x, y, U, D, B)
    return CSSpec(int(x), int(y), index_set(U), index_set(D), index_set(B))


# ---------------------------------------------------------------------------
# shuffling theorems


def check_shuffle_H(x: int, y: int, U, D, B, U2, D2) -> CheckReport:
    """M(H(U;D;B)) / M(H(U2;D2;B)) against the product ratio."""
    try:
        formulas.check_shuffle_hypothesis(U, D, U2, D2)
    except formulas.FormulaError as exc:
        raise HypothesisError(str(exc)) from None
    s1 = HSpec(x, y, index_set(U), index_set(D), index_set(B))
    s2 = HSpec(x, y, index_set(U2), index_set(D2), index_set(B))
    m1, m2 = _M(s1), _M(s2)
    r = formulas.shuffle_ratio(U, D, U2, D2, y)
    case = f"H x={x} y={y} U={_fmt(s1.U)} D={_fmt(s1.D)} B={_fmt(s1.B)} vs U'={_fmt(s2.U)} D'={_fmt(s2.D)}"
    return _report(case, m1 * r.denominator, m2 * r.numerator, (m1, m2), M=m1, M2=m2, ratio=r)


def check_shuffle_CS(x: int, y: int, U, D, B, U2, D2) -> CheckReport:
    """Both equalities for symmetric tilings: the Delta ratio and the square relation."""
    try:
        formulas.check_shuffle_hypothesis(U, D, U2, D2)
        s1, s2 = _cs(x, y, U, D, B), _cs(x, y, U2, D2, B)
    except (formulas.FormulaError, RegionError) as exc:
        raise HypothesisError(str(exc)) from None
    mc1, mc2 = _Mc(s1), _Mc(s2)
    m1, m2 = _M(s1), _M(s2)
    r = formulas.cs_shuffle_ratio(x, y, U, D, U2, D2)
    lhs, rhs = mc1 * r.denominator, mc2 * r.numerator
    sq_l, sq_r = mc1 * mc1 * m2, mc2 * mc2 * m1
    case = f"CS x={x} y={y} U={_fmt(s1.U)} D={_fmt(s1.D)} B={_fmt(s1.B)} vs U'={_fmt(s2.U)} D'={_fmt(s2.D)}"
    rep = _report(case, lhs, rhs, (mc1, mc2), Mc=mc1, Mc2=mc2, M=m1, M2=m2, ratio=r,
                  square_lhs=sq_l, square_rhs=sq_r)
    if sq_l != sq_r:
        return CheckReport(case, FAIL, lhs, rhs, rep.witness)
    return rep


# ---------------------------------------------------------------------------
# Kuo condensation


@dataclass(frozen=True)
class KuoVertices:
    a: tuple[Cell, Cell]
    b: tuple[Cell, Cell]
    c: tuple[Cell, Cell]
    d: tuple[Cell, Cell]
    alpha: int
    beta: int
    case: str

    def cells(self) -> frozenset:
        return frozenset(self.a + self.b + self.c + self.d)


KUO_CASES = ("UminusD", "DminusU", "neither", "both")


def kuo_case(U, D) -> str:
    U, D = set(U), set(D)
    if 1 in U and 1 in D:
        return "both"
    if 1 in U:
        return "UminusD"
    if 1 in D:
        return "DminusU"
    return "neither"


def obstacle_positions(x: int, y: int, U, D, B) -> set:
    """Axis positions carrying a dent or barrier, together with their mirror images."""
    N = x + y + 2 * len(set(U) | set(D))
    O = set(U) | set(D) | set(B)
    return O | set(mirror(O, N))


def alpha_beta(x: int, y: int, U, D, B) -> tuple[int, int]:
    """First free axis position, and the last free one before the centre."""
    N = x + y + 2 * len(set(U) | set(D))
    O = obstacle_positions(x, y, U, D, B)
    free = [p for p in range(1, N + 1) if p not in O]
    left = [p for p in free if 2 * p < N + 1]
    if not left:
        raise HypothesisError("no free axis position before the centre")
    return free[0], left[-1]


def _check_induction_hypotheses(x, y, U, D, B):
    if not set(U) | set(D):
        raise HypothesisError("u + d = 0 is a base case")
    if x < 2 * len(B) + 2:
        raise HypothesisError(f"x = {x} < 2b + 2 is a base case")
    if y < 2:
        raise HypothesisError(f"y = {y} < 2 is a base case")


def _spec_of(region: Region) -> CSSpec:
    spec = region.spec
    if not isinstance(spec, CSSpec):
        raise RegionError("Kuo vertices are chosen on CS regions only")
    return spec


def choose_kuo_vertices(region: Region, case: Optional[str] = None) -> KuoVertices:
    """The eight cells used to set up the recurrence for a CS region.

    a: up cell at the NE corner and its image; b: down cell at the NW corner
    and its image; c: up cell at the first free axis position and its image;
    d: down cell at the last free position before the centre and its image.
    When 1 lies in D but not U the choice is made on the mirror image across
    the axis (which swaps U and D) and mapped back.
    """
    spec = _spec_of(region)
    x, y, U, D, B = spec.x, spec.y, spec.U, spec.D, spec.B
    _check_induction_hypotheses(x, y, U, D, B)
    actual = kuo_case(U, D)
    if case is not None and case != actual:
        raise HypothesisError(f"region is in case {actual!r}, not {case!r}")
    if actual == "DminusU":
        flipped = build_CS(x, y, D, U, B)
        kv = choose_kuo_vertices(flipped)

        def back(pair):
            return (reflect_cell(pair[0]), reflect_cell(pair[1]))

        return KuoVertices(back(kv.a), back(kv.b), back(kv.c), back(kv.d), kv.alpha, kv.beta, actual)
    N = region.axis_len
    h = y + len(U) + len(D)
    alpha, beta = alpha_beta(x, y, U, D, B)
    sig = region.sigma
    a1 = up(h - 1, N - h + 1)
    b1 = down(h - 1, 1)
    c1 = up(0, alpha)
    d1 = down(-1, beta)
    kv = KuoVertices((a1, sig(a1)), (b1, sig(b1)), (c1, sig(c1)), (d1, sig(d1)), alpha, beta, actual)
    missing = kv.cells() - region.cells
    if missing:
        raise RegionError(f"Kuo cells outside the region: {sorted(missing)}")
    return kv


def check_kuo(region: Region, vertices: KuoVertices) -> CheckReport:
    """Mc(G) Mc(G_abcd) = Mc(G_ab) Mc(G_cd) + Mc(G_ac) Mc(G_bd) + Mc(G_ad) Mc(G_bc)."""
    if region.center is None:
        raise RegionError("Kuo condensation needs a centrally symmetric region")
    pairs = {"a": vertices.a, "b": vertices.b, "c": vertices.c, "d": vertices.d}
    for name, (p, q) in pairs.items():
        if region.sigma(p) != q:
            raise RegionError(f"{name}-vertices are not images of each other")
        if p not in region.cells or q not in region.cells:
            raise RegionError(f"{name}-vertices are not in the region")
    if len(vertices.cells()) != 8:
        raise RegionError("the eight Kuo vertices must be distinct")

    def mc(keys):
        gone = [c for k in keys for c in pairs[k]]
        return count_cs_with_deletions(region, gone)

    g, abcd = mc(""), mc("abcd")
    ab, cd, ac, bd, ad, bc = (mc(k) for k in ("ab", "cd", "ac", "bd", "ad", "bc"))
    lhs = g * abcd
    rhs = ab * cd + ac * bd + ad * bc
    spec = region.spec
    case = f"kuo {spec.to_json() if spec is not None else 'region'} alpha={vertices.alpha} beta={vertices.beta}"
    return _report(case, lhs, rhs, (g, abcd, ab, cd, ac, bd, ad, bc),
                   G=g, abcd=abcd, ab=ab, cd=cd, ac=ac, bd=bd, ad=ad, bc=bc)


# ---------------------------------------------------------------------------
# base cases


BASE_KINDS = ("y0", "x2b", "y1", "x2b1")


def base_case_T(kind: str, x: int, y: int, U, D, B=()):
    """The dented semihexagon ``(height, north, dents)`` matched to a base-case CS region."""
    U, D, B = index_set(U), index_set(D), index_set(B)
    N, UH, _, _ = cs_index_sets(x, y, U, D, B)
    b = len(B)
    free = sorted(set(range(1, N + 1)) - obstacle_positions(x, y, U, D, B))
    mid = (N + 1) // 2
    if kind == "y0":
        if y != 0:
            raise HypothesisError("y0 needs y = 0")
        dents = set(UH)
    elif kind == "x2b":
        if x != 2 * b:
            raise HypothesisError("x2b needs x = 2|B|")
        dents = set(free) | set(UH)
    elif kind == "y1":
        if y != 1 or N % 2 == 0:
            raise HypothesisError("y1 needs y = 1 and an odd axis")
        dents = set(UH) | {mid}
    elif kind == "x2b1":
        if x != 2 * b + 1 or N % 2 == 0:
            raise HypothesisError("x2b1 needs x = 2|B| + 1 and an odd axis")
        dents = (set(free) - {mid}) | set(UH)
    else:
        raise HypothesisError(f"unknown base case {kind!r}")
    dents = tuple(sorted(dents))
    return len(dents), N - len(dents), dents


def check_base_case(kind: str, x: int, y: int, U, D, B=()) -> CheckReport:
    """Mc of a base-case CS region equals the tiling count of one dented semihexagon."""
    try:
        spec = _cs(x, y, U, D, B)
    except RegionError as exc:
        raise HypothesisError(str(exc)) from None
    height, north, dents = base_case_T(kind, x, y, U, D, B)
    mc = _Mc(spec)
    m = count_tilings(build_T(height, north, dents))
    case = f"base {kind} x={x} y={y} U={_fmt(spec.U)} D={_fmt(spec.D)} B={_fmt(spec.B)} T_{height},{north}{_fmt(dents)}"
    return _report(case, mc, m, (mc, m), Mc=mc, M_T=m)


# ---------------------------------------------------------------------------
# recurrences


TERMS = ("G", "abcd", "ab", "cd", "ac", "bd", "ad", "bc")


def _add(S, *vals):
    return tuple(sorted(set(S) | set(vals)))


def _drop1(S):
    return tuple(v for v in S if v != 1)


def recurrence_terms(case: int, x: int, y: int, U, D, B=()) -> dict:
    """Parameters ``(x, y, U, D, B)`` of the CS regions named in each recurrence.

    ``case`` is 1 (1 in U minus D), 2 (1 in D minus U, handled on the mirror
    image across the axis), 3 (1 outside U, D and B) or 4 (1 in both U and D).
    """
    U, D, B = index_set(U), index_set(D), index_set(B)
    W = set(U) | set(D)
    if case == 2:
        if not (1 in D and 1 not in U):
            raise HypothesisError("case 2 needs 1 in D minus U")
        return recurrence_terms(1, x, y, D, U, B)
    al, be = alpha_beta(x, y, U, D, B)
    L = shift_left
    if case == 1:
        if not (1 in U and 1 not in D):
            raise HypothesisError("case 1 needs 1 in U minus D")
        aU1 = L(_drop1(_add(U, al)))
        return {
            "G": (x, y, U, D, B),
            "abcd": (x - 2, y - 2, aU1, L(_add(D, be)), L(B)),
            "ab": (x, y, L(_drop1(U)), L(D), L(B)),
            "cd": (x - 2, y - 2, _add(U, al), _add(D, be), B),
            "ac": (x, y - 2, _add(U, al), D, B),
            "bd": (x - 2, y, L(_drop1(U)), L(_add(D, be)), L(B)),
            "ad": (x, y - 2, U, _add(D, be), B),
            "bc": (x - 2, y, aU1, L(D), L(B)),
        }
    if case == 3:
        if 1 in W:
            raise HypothesisError("case 3 needs 1 outside U and D")
        if 1 in B:
            raise HypothesisError("case 3 with a barrier at 1 reduces by forcing, not by Kuo")
        return {
            "G": (x, y, U, D, B),
            "abcd": (x - 2, y - 2, L(U), L(_add(D, be)), L(B)),
            "ab": (x, y - 2, U, _add(D, 1), B),
            "cd": (x - 2, y - 2, _add(U, 1), _add(D, be), B),
            "ac": (x, y - 2, _add(U, 1), D, B),
            "bd": (x - 2, y - 2, U, _add(D, 1, be), B),
            "ad": (x, y - 2, U, _add(D, be), B),
            "bc": (x - 2, y, L(U), L(D), L(B)),
        }
    if case == 4:
        if not (1 in U and 1 in D):
            raise HypothesisError("case 4 needs 1 in both U and D")
        return {
            "G": (x, y, U, D, B),
            "abcd": (x - 2, y - 2, _drop1(_add(U, al)), _add(D, be), B),
            "ab": (x, y, _drop1(U), D, B),
            "cd": (x - 2, y - 2, _add(U, al), _add(D, be), B),
            "ac": (x, y - 2, _add(U, al), D, B),
            "bd": (x - 2, y, _drop1(U), _add(D, be), B),
            "ad": (x, y - 2, U, _add(D, be), B),
            "bc": (x - 2, y, _drop1(_add(U, al)), D, B),
        }
    raise HypothesisError(f"unknown recurrence case {case!r}")


def recurrence_case(U, D, B=()) -> int:
    return {"UminusD": 1, "DminusU": 2, "neither": 3, "both": 4}[kuo_case(U, D)]


def check_recurrence(case: int, x: int, y: int, U, D, B=()) -> CheckReport:
    """The three-term recurrence on Mc of the named CS regions.

    In case 3 with a barrier at position 1 the region reduces by forced
    lozenges; that reduction is checked instead.
    """
    U, D, B = index_set(U), index_set(D), index_set(B)
    try:
        base = _cs(x, y, U, D, B)
    except RegionError as exc:
        raise HypothesisError(str(exc)) from None
    if case != recurrence_case(U, D, B):
        raise HypothesisError(f"parameters belong to case {recurrence_case(U, D, B)}, not {case}")
    tag = f"x={x} y={y} U={_fmt(U)} D={_fmt(D)} B={_fmt(B)}"
    if case == 3 and 1 in B:
        if x < 2:
            raise HypothesisError("barrier at 1 needs x >= 2")
        red = _cs(x - 2, y, shift_left(U), shift_left(D), shift_left(_drop1(B)))
        g, r = _Mc(base), _Mc(red)
        return _report(f"recurrence 3 (barrier at 1) {tag}", g, r, (g, r), G=g, reduced=r)
    _check_induction_hypotheses(x, y, U, D, B)
    params = recurrence_terms(case, x, y, U, D, B)
    mc = {}
    for k in TERMS:
        try:
            mc[k] = _Mc(_cs(*params[k]))
        except RegionError as exc:
            raise HypothesisError(f"term {k}: {exc}") from None
    lhs = mc["G"] * mc["abcd"]
    rhs = mc["ab"] * mc["cd"] + mc["ac"] * mc["bd"] + mc["ad"] * mc["bc"]
    return _report(f"recurrence {case} {tag}", lhs, rhs, mc.values(), **mc)


def check_kuo_reduction(x: int, y: int, U, D, B=()) -> CheckReport:
    """Each Kuo-deleted graph has as many symmetric matchings as its named CS region."""
    U, D, B = index_set(U), index_set(D), index_set(B)
    region = build_CS(x, y, U, D, B)
    kv = choose_kuo_vertices(region)
    case = recurrence_case(U, D, B)
    params = recurrence_terms(case, x, y, U, D, B)
    pairs = {"a": kv.a, "b": kv.b, "c": kv.c, "d": kv.d}
    mism, deleted, named = [], {}, {}
    for k in TERMS:
        gone = [] if k == "G" else [c for ch in k for c in pairs[ch]]
        deleted[k] = count_cs_with_deletions(region, gone)
        named[k] = _Mc(_cs(*params[k]))
        if deleted[k] != named[k]:
            mism.append(k)
    tag = f"kuo-terms {case} x={x} y={y} U={_fmt(U)} D={_fmt(D)} B={_fmt(B)}"
    lhs = sum(deleted.values())
    rhs = sum(named.values())
    status = FAIL if mism else (VACUOUS if not any(deleted.values()) else PASS)
    return CheckReport(tag, status, lhs, rhs, {"deleted": deleted, "named": named, "mismatch": mism})


# ---------------------------------------------------------------------------
# Delta-ratio claims (pure arithmetic)


def _up_set(x, y, U, D) -> tuple[int, ...]:
    return formulas.cs_up_set(x, y, U, D)


def check_delta_claims(x: int, y: int, U, D, U2, D2, B=()) -> list[CheckReport]:
    """The three product identities behind each recurrence, on index sets only.

    With ``r(T) = Delta(up set of T for (U, D)) / Delta(up set of T for (U2, D2))``
    they read ``r(ab) r(cd) = r(ac) r(bd) = r(ad) r(bc) = r(G) r(abcd)``.
    """
    formulas.check_shuffle_hypothesis(U, D, U2, D2)
    case, case2 = recurrence_case(U, D, B), recurrence_case(U2, D2, B)
    if case != case2 and {case, case2} != {1, 2}:
        raise HypothesisError("both configurations must fall in the same recurrence case")
    if case in (1, 2) and case2 != case:
        raise HypothesisError("mixed cases 1 and 2 use different vertex choices")
    t1 = recurrence_terms(case, x, y, U, D, B)
    t2 = recurrence_terms(case, x, y, U2, D2, B)

    def r(k):
        (xa, ya, Ua, Da, _), (xb, yb, Ub, Db, _) = t1[k], t2[k]
        return Fraction(formulas.delta_prod(_up_set(xa, ya, Ua, Da)),
                        formulas.delta_prod(_up_set(xb, yb, Ub, Db)))

    target = r("G") * r("abcd")
    out = []
    for i, (p, q) in enumerate((("ab", "cd"), ("ac", "bd"), ("ad", "bc")), start=1):
        got = r(p) * r(q)
        tag = (f"claim {case}.{i} x={x} y={y} U={_fmt(U)} D={_fmt(D)} vs U'={_fmt(U2)} D'={_fmt(D2)}"
               f" B={_fmt(B)}")
        lhs = got.numerator * target.denominator
        rhs = target.numerator * got.denominator
        out.append(_report(tag, lhs, rhs, (1,), lhs_ratio=got, rhs_ratio=target))
    return out


# ---------------------------------------------------------------------------
# fern theorems


def _ferns(fs) -> tuple[Fern, ...]:
    return tuple(Fern.from_json(f) for f in fs)


def _same_shape(F, F2):
    if len(F) != len(F2) or any(a.total != b.total for a, b in zip(F, F2)):
        raise HypothesisError("ferns must occupy the same axis positions")


def _s_count(seq) -> int:
    return count_tilings(build_S(seq)) if any(seq) else 1


def check_fern_theorem(theorem: str, x: int, y: int, ferns, ferns2=None, gaps=()) -> CheckReport:
    """Fern versions of the shuffling theorems and the two closed forms.

    ``theorem`` is one of "2.1" ... "2.5".  For 2.4 and 2.5 ``ferns`` holds the
    two ferns (F1, F2); ``ferns2`` and ``gaps`` are ignored.
    """
    theorem = str(theorem)
    F = _ferns(ferns)
    if theorem in ("2.4", "2.5"):
        if len(F) != 2:
            raise HypothesisError("closed forms take exactly two ferns")
        if theorem == "2.4":
            if x % 2 or y % 2:
                raise HypothesisError("2.4 needs x and y even")
            region = build_E(x, y, F, [(x + y) // 2])
            rhs = formulas.thm24_rhs(x, y, F[0], F[1])
        else:
            if (x + y) % 2 == 0:
                raise HypothesisError("2.5 needs x + y odd")
            region = build_E_prime(x, y, F, [(x + y - 1) // 2])
            rhs = formulas.thm25_rhs(x, y, F[0], F[1])
        lhs = count_cs_tilings(region)
        tag = f"thm{theorem} x={x} y={y} F1={F[0].to_json()} F2={F[1].to_json()}"
        return _report(tag, lhs, rhs, (lhs, rhs), Mc=lhs, closed_form=rhs)
    F2 = _ferns(ferns2 if ferns2 is not None else ferns)
    gaps = tuple(int(g) for g in gaps)
    _same_shape(F, F2)
    tag = f"thm{theorem} x={x} y={y} F={[f.to_json() for f in F]} F'={[f.to_json() for f in F2]} gaps={list(gaps)}"
    if theorem == "2.1":
        r1, r2 = build_R(x, y, F, gaps), build_R(x, y, F2, gaps)
        m1, m2 = count_tilings(r1), count_tilings(r2)
        sp1, sm1 = formulas.above_profile(F, gaps), formulas.below_profile(F, gaps)
        sp2, sm2 = formulas.above_profile(F2, gaps), formulas.below_profile(F2, gaps)
        u1, d1 = sum(f.up_total for f in F), sum(f.down_total for f in F)
        u2, d2 = sum(f.up_total for f in F2), sum(f.down_total for f in F2)
        w1 = _s_count(sp1) * _s_count(sm1) * formulas.pp(u1, d1, y)
        w2 = _s_count(sp2) * _s_count(sm2) * formulas.pp(u2, d2, y)
        return _report(tag, m1 * w2, m2 * w1, (m1, m2), M=m1, M2=m2, S_plus=sp1, S_minus=sm1,
                       S2_plus=sp2, S2_minus=sm2)
    if theorem in ("2.2", "2.3"):
        if theorem == "2.2":
            if x % 2 or y % 2:
                raise HypothesisError("2.2 needs x and y even")
            build, prime = build_E, False
        else:
            if (x + y) % 2 == 0:
                raise HypothesisError("2.3 needs x + y odd")
            build, prime = build_E_prime, True
        e1, e2 = build(x, y, F, gaps), build(x, y, F2, gaps)
        mc1, mc2 = count_cs_tilings(e1), count_cs_tilings(e2)
        m1, m2 = count_tilings(e1), count_tilings(e2)
        s1 = _s_count(formulas.above_profile(*e_ferns(F, gaps, prime)))
        s2 = _s_count(formulas.above_profile(*e_ferns(F2, gaps, prime)))
        lhs, rhs = mc1 * s2, mc2 * s1
        rep = _report(tag, lhs, rhs, (mc1, mc2), Mc=mc1, Mc2=mc2, M=m1, M2=m2, S=s1, S2=s2)
        if mc1 * mc1 * m2 != mc2 * mc2 * m1:
            return CheckReport(tag, FAIL, lhs, rhs, rep.witness)
        return rep
    raise HypothesisError(f"unknown fern theorem {theorem!r}")


# ---------------------------------------------------------------------------
# grids and sweeps


def _rng(grid: dict, key: str, default: Sequence[int]) -> range:
    lo, hi = grid.get(key, default)
    return range(int(lo), int(hi) + 1)


def _splits(W: Sequence[int]) -> Iterator[tuple[tuple, tuple]]:
    """All (U, D) with U u D = W, grouped by the intersection U n D."""
    for k in range(len(W) + 1):
        for inter in itertools.combinations(W, k):
            free = [w for w in W if w not in inter]
            group = []
            for mask in range(1 << len(free)):
                U = tuple(sorted(set(inter) | {w for j, w in enumerate(free) if mask >> j & 1}))
                D = tuple(sorted(set(inter) | {w for j, w in enumerate(free) if not mask >> j & 1}))
                group.append((U, D))
            yield inter, group


def _left_sets(N: int, k: int, avoid=()) -> Iterator[tuple]:
    """k-subsets of the positions strictly left of the centre, avoiding ``avoid``."""
    left = [p for p in range(1, N // 2 + 1) if p not in avoid]
    return itertools.combinations(left, k)


def _cs_configs(grid: dict) -> Iterator[tuple]:
    """Canonical CS parameters ``(x, y, W, B)`` with W and B left of the centre.

    Index sets reaching past the centre describe the same regions as their
    mirrored counterparts (with U and D exchanged), so they are skipped.
    """
    max_axis = int(grid.get("max_axis", 12))
    for x in _rng(grid, "x", (0, max_axis)):
        for y in _rng(grid, "y", (0, max_axis)):
            for n in _rng(grid, "n", (0, max_axis)):
                N = x + y + 2 * n
                if N > max_axis:
                    continue
                for W in _left_sets(N, n):
                    bmax = min(x // 2, int(grid.get("b", (0, x))[1]))
                    for nb in range(int(grid.get("b", (0, 0))[0]), bmax + 1):
                        for B in _left_sets(N, nb, avoid=W):
                            yield x, y, W, B


def _task_shuffle_H(args):
    x, y, W, B = args
    out = []
    for _, group in _splits(W):
        for (U, D), (U2, D2) in itertools.combinations(group, 2):
            out.append(check_shuffle_H(x, y, U, D, B, U2, D2))
    return out


def _task_shuffle_CS(args):
    x, y, W, B = args
    out = []
    for _, group in _splits(W):
        for (U, D), (U2, D2) in itertools.combinations(group, 2):
            out.append(check_shuffle_CS(x, y, U, D, B, U2, D2))
    return out


def _h_configs(grid: dict) -> Iterator[tuple]:
    for x in _rng(grid, "x", (0, 3)):
        for y in _rng(grid, "y", (0, 3)):
            for n in _rng(grid, "n", (0, 3)):
                A = x + y + n
                for W in itertools.combinations(range(1, A + 1), n):
                    rest = [p for p in range(1, A + 1) if p not in W]
                    bmax = min(x, int(grid.get("b", (0, 1))[1]))
                    for nb in range(int(grid.get("b", (0, 1))[0]), bmax + 1):
                        for B in itertools.combinations(rest, nb):
                            yield x, y, W, B


def _in_induction(x, y, W, B) -> bool:
    return bool(W) and x >= 2 * len(B) + 2 and y >= 2


def _task_kuo(args):
    x, y, W, B = args
    out = []
    for _, group in _splits(W):
        for U, D in group:
            region = build_CS(x, y, U, D, B)
            out.append(check_kuo(region, choose_kuo_vertices(region)))
    return out


def _task_recurrence(args):
    x, y, W, B = args
    out = []
    for _, group in _splits(W):
        for U, D in group:
            case = recurrence_case(U, D, B)
            if case == 3 and 1 in B:
                out.append(check_recurrence(case, x, y, U, D, B))
            elif _in_induction(x, y, W, B):
                out.append(check_recurrence(case, x, y, U, D, B))
    return out


def _task_kuo_terms(args):
    x, y, W, B = args
    out = []
    for _, group in _splits(W):
        for U, D in group:
            if recurrence_case(U, D, B) == 3 and 1 in B:
                continue
            out.append(check_kuo_reduction(x, y, U, D, B))
    return out


def _task_base(args):
    x, y, W, B = args
    out = []
    kinds = []
    if y == 0:
        kinds.append("y0")
    if x == 2 * len(B):
        kinds.append("x2b")
    N = x + y + 2 * len(W)
    if N % 2:
        if y == 1:
            kinds.append("y1")
        if x == 2 * len(B) + 1:
            kinds.append("x2b1")
    for kind in kinds:
        for _, group in _splits(W):
            for U, D in group:
                out.append(check_base_case(kind, x, y, U, D, B))
    return out


def _task_claims(args):
    x, y, W, B = args
    out = []
    if not _in_induction(x, y, W, B):
        return out
    for _, group in _splits(W):
        for (U, D), (U2, D2) in itertools.combinations(group, 2):
            c1, c2 = recurrence_case(U, D, B), recurrence_case(U2, D2, B)
            if c1 != c2 or (c1 == 3 and 1 in B):
                continue
            out.extend(check_delta_claims(x, y, U, D, U2, D2, B))
    return out


def _fern_list(max_total: int, max_len: int) -> list[Fern]:
    out = [Fern((), "up")]
    for m in range(1, max_len + 1):
        for ls in itertools.product(range(max_total + 1), repeat=m):
            if 0 < sum(ls) <= max_total and ls[-1] > 0 and ls[0] > 0:
                for first in ("up", "down"):
                    out.append(Fern(ls, first))
    return out


def _fern_tasks(grid: dict, theorem: str) -> Iterator[tuple]:
    max_total = int(grid.get("max_total", 3))
    max_len = int(grid.get("max_len", 2))
    ferns = _fern_list(max_total, max_len)
    for x in _rng(grid, "x", (0, 4)):
        for y in _rng(grid, "y", (0, 4)):
            if theorem in ("2.4", "2.2") and (x % 2 or y % 2):
                continue
            if theorem in ("2.5", "2.3") and (x + y) % 2 == 0:
                continue
            if theorem in ("2.4", "2.5"):
                for F1, F2 in itertools.product(ferns, repeat=2):
                    if F1.total + F2.total <= max_total:
                        yield theorem, x, y, (F1, F2)
            elif theorem in ("2.2", "2.3"):
                g = (x + y) // 2 if theorem == "2.2" else (x + y - 1) // 2
                for F1, F2 in itertools.product(ferns, repeat=2):
                    if F1.total + F2.total <= max_total:
                        yield theorem, x, y, (F1, F2), g
            else:
                for t1, t2 in itertools.product(range(max_total + 1), repeat=2):
                    if t1 + t2 > max_total or x + y == 0:
                        continue
                    yield theorem, x, y, (t1, t2), x + y


def _task_fern(args):
    theorem = args[0]
    if theorem in ("2.4", "2.5"):
        _, x, y, F = args
        return [check_fern_theorem(theorem, x, y, F)]
    if theorem in ("2.2", "2.3"):
        _, x, y, F, g = args
        base = (Fern((F[0].total,), "up"), Fern((F[1].total,), "up"))
        return [check_fern_theorem(theorem, x, y, F, base, (g,))]
    _, x, y, (t1, t2), g = args
    shapes = [[f for f in _fern_list(t, 2) if f.total == t] or [Fern((), "up")] for t in (t1, t2)]
    out = []
    base = [shapes[0][0], shapes[1][0]]
    for a, b in itertools.product(*shapes):
        out.append(check_fern_theorem(theorem, x, y, [a, b], base, (g,)))
    return out


SWEEPS = {
    "1.1": (_h_configs, _task_shuffle_H),
    "1.2": (_cs_configs, _task_shuffle_CS),
    "kuo": (_cs_configs, _task_kuo),
    "kuo-terms": (_cs_configs, _task_kuo_terms),
    "recurrence": (_cs_configs, _task_recurrence),
    "base": (_cs_configs, _task_base),
    "claims": (_cs_configs, _task_claims),
}
FERN_THEOREMS = ("2.1", "2.2", "2.3", "2.4", "2.5")


def _grid_tasks(grid: dict):
    theorem = str(grid.get("theorem", ""))
    if theorem in FERN_THEOREMS:
        return list(_fern_tasks(grid, theorem)), _task_fern
    if theorem not in SWEEPS:
        raise HypothesisError(f"unknown sweep {theorem!r}")
    gen, task = SWEEPS[theorem]
    configs = list(gen(grid))
    if theorem in ("kuo", "kuo-terms"):
        configs = [c for c in configs if _in_induction(*c)]
    return configs, task


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("TILINGS_THREADS", "1")))
    except ValueError:
        return 1


def sweep(grid: Optional[dict]) -> list[CheckReport]:
    """Run one checker over every point of a grid, in grid order.

    ``grid`` holds ``theorem`` plus parameter ranges such as ``"x": [0, 3]``
    and ``max_axis``.  An empty grid yields no reports.  Set
    ``TILINGS_THREADS`` to spread the points over worker processes; the
    report order does not depend on it.
    """
    if not grid:
        return []
    configs, task = _grid_tasks(grid)
    if grid.get("limit") is not None:
        configs = configs[: int(grid["limit"])]
    workers = _workers()
    if workers > 1 and len(configs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(task, configs, chunksize=max(1, len(configs) // (4 * workers))))
    else:
        chunks = [task(c) for c in configs]
    return [r for chunk in chunks for r in chunk]


# ---------------------------------------------------------------------------
# negative control


def _mutant_shuffle_ratio(U, D, U2, D2, y):
    formulas.check_shuffle_hypothesis(U, D, U2, D2)
    U, D, U2, D2 = (sorted(s) for s in (U, D, U2, D2))
    top = formulas._clp_ratio(U) * formulas._clp_ratio(D) * formulas.pp(len(U), len(D), y + 1)
    bottom = formulas._clp_ratio(U2) * formulas._clp_ratio(D2) * formulas.pp(len(U2), len(D2), y)
    return top / bottom


def _mutant_cs_shuffle_ratio(x, y, U, D, U2, D2):
    formulas.check_shuffle_hypothesis(U, D, U2, D2)
    n = len(set(U) | set(D))
    up1 = sorted(set(U) | set(mirror(D, x + y + 2 * n - 1)))
    up2 = formulas.cs_up_set(x, y, U2, D2)
    return Fraction(formulas.delta_prod(up1), formulas.delta_prod(up2))


_original_mc_B_closed = formulas.mc_B_closed


def _mutant_mc_B_closed(x, y, a, c):
    # one extra factor (x/2 + 1)_c / (1)_c, as if the first product ran one step longer
    return _original_mc_B_closed(x, y, a, c) * formulas.pochhammer(x // 2 + 1, c) // formulas.factorial(c)


def _mutant_hyperfactorial(n):
    return formulas.prod(formulas.factorial(k) for k in range(n + 1))


MUTATIONS = {
    "pp-y": ("shuffle_ratio", _mutant_shuffle_ratio),
    "delta-mirror": ("cs_shuffle_ratio", _mutant_cs_shuffle_ratio),
    "mcB": ("mc_B_closed", _mutant_mc_B_closed),
    "hyperfactorial": ("hyperfactorial", _mutant_hyperfactorial),
}


class mutated:
    """Context manager swapping one closed form for a perturbed version."""

    def __init__(self, name: str):
        if name not in MUTATIONS:
            raise KeyError(f"unknown mutation {name!r}; choose from {sorted(MUTATIONS)}")
        self.attr, self.fn = MUTATIONS[name]

    def __enter__(self):
        self.saved = getattr(formulas, self.attr)
        setattr(formulas, self.attr, self.fn)
        clear_caches()
        return self

    def __exit__(self, *exc):
        setattr(formulas, self.attr, self.saved)
        clear_caches()
        return False
