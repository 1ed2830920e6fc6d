"""Closed-form products, evaluated exactly over integers and rationals."""

from __future__ import annotations

from fractions import Fraction
from math import factorial, prod
from typing import Iterable, Sequence

from .regions import DOWN, UP, Fern, mirror


class FormulaError(ValueError):
    pass


def _exact(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise FormulaError(f"{what} is not an integer: {value}")
    return value.numerator


def pp(a: int, b: int, c: int) -> int:
    """MacMahon's box product: tilings of the hexagon a, b, c, a, b, c."""
    if min(a, b, c) < 0:
        raise FormulaError("pp needs nonnegative arguments")
    num = den = 1
    for i in range(1, a + 1):
        for j in range(1, b + 1):
            for k in range(1, c + 1):
                num *= i + j + k - 1
                den *= i + j + k - 2
    q, r = divmod(num, den)
    if r:
        raise FormulaError(f"pp({a},{b},{c}) is not an integer")
    return q


def hyperfactorial(n: int) -> int:
    """0! 1! ... (n-1)!"""
    if n < 0:
        raise FormulaError("hyperfactorial needs n >= 0")
    return prod(factorial(k) for k in range(n))


def pochhammer(x: int, n: int) -> int:
    """Rising factorial x (x+1) ... (x+n-1)."""
    if n < 0:
        raise FormulaError("pochhammer needs n >= 0")
    return prod(range(x, x + n))


def delta_prod(S: Iterable[int]) -> int:
    """Product of pairwise differences x_j - x_i over i < j."""
    xs = list(S)
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise FormulaError(f"delta_prod needs a strictly increasing set, got {xs}")
    return prod(xs[j] - xs[i] for j in range(len(xs)) for i in range(j))


def _clp_ratio(S: Sequence[int]) -> Fraction:
    return Fraction(delta_prod(S), hyperfactorial(len(S)))


def clp_count(a: int, b: int, dents: Iterable[int]) -> int:
    """Tilings of the dented semihexagon with ``a`` base dents (Cohn-Larsen-Propp)."""
    dents = sorted(dents)
    if len(dents) != a:
        raise FormulaError(f"need {a} dents, got {len(dents)}")
    if dents and (dents[0] < 1 or dents[-1] > a + b):
        raise FormulaError(f"dents must lie in [1, {a + b}]")
    return _exact(_clp_ratio(dents), "clp_count")


def s_fn(seq: Sequence[int]) -> int:
    """Tiling count of the generalized dented semihexagon S(seq), as a hyperfactorial product."""
    seq = [int(a) for a in seq]
    if not seq:
        raise FormulaError("s_fn needs a nonempty sequence")
    if len(seq) % 2 == 0:
        seq = seq[:-1]
    H = hyperfactorial
    value = Fraction(1, H(sum(seq[0::2])))
    n = len(seq)
    for i in range(n):
        window = 0
        for j in range(i, n):
            window += seq[j]
            if (j - i + 1) % 2:
                value *= H(window)
            else:
                value /= H(window)
    return _exact(value, f"s{tuple(seq)}")


def check_shuffle_hypothesis(U, D, U2, D2):
    U, D, U2, D2 = map(set, (U, D, U2, D2))
    if U | D != U2 | D2 or U & D != U2 & D2:
        raise FormulaError("shuffle needs U u D = U' u D' and U n D = U' n D'")


def shuffle_ratio(U, D, U2, D2, y: int) -> Fraction:
    """Predicted M(H(U;D)) / M(H(U';D')) for a shuffle of the dents."""
    check_shuffle_hypothesis(U, D, U2, D2)
    U, D, U2, D2 = (sorted(s) for s in (U, D, U2, D2))
    top = _clp_ratio(U) * _clp_ratio(D) * pp(len(U), len(D), y)
    bottom = _clp_ratio(U2) * _clp_ratio(D2) * pp(len(U2), len(D2), y)
    return top / bottom


def cs_up_set(x: int, y: int, U, D) -> tuple[int, ...]:
    """Up-dent positions ``U u ((x+y+2n+1) - D)`` of the CS region."""
    n = len(set(U) | set(D))
    N = x + y + 2 * n
    return tuple(sorted(set(U) | set(mirror(D, N))))


def cs_shuffle_ratio(x: int, y: int, U, D, U2, D2) -> Fraction:
    """Predicted M_c(CS(U;D;B)) / M_c(CS(U';D';B))."""
    check_shuffle_hypothesis(U, D, U2, D2)
    return Fraction(delta_prod(cs_up_set(x, y, U, D)), delta_prod(cs_up_set(x, y, U2, D2)))


def _half(v: int, what: str) -> int:
    if v % 2:
        raise FormulaError(f"{what} = {v} must be even")
    return v // 2


def mc_B_closed(x: int, y: int, a: int, c: int) -> int:
    """Closed form for the symmetric tilings of the B-region reached from E with single-triangle ferns.

    ``x`` and ``y`` must be even.
    """
    hx, hy = _half(x, "x"), _half(y, "y")
    big = hy + a + c
    val = Fraction(pp(big, hy, c))
    for i in range(1, hy + a + 1):
        val *= Fraction(pochhammer(hx + i, c), pochhammer(i, c))
    for i in range(1, hy + 1):
        val *= Fraction(pochhammer(hx + c + i, hy + a), pochhammer(c + i, hy + a))
        val *= Fraction(pochhammer(hx + c + i, big), pochhammer(c + i, big))
    return _exact(val, "mc_B_closed")


def mc_Bprime_closed(x: int, y: int, a: int, c: int, parity_case: str | None = None) -> int:
    """Closed form for the symmetric tilings of the B'-region reached from E'.

    ``parity_case`` is ``"a"`` (x odd, y even) or ``"b"`` (x even, y odd);
    it is inferred from the parities when omitted.
    """
    case = "a" if x % 2 else "b"
    if (x + y) % 2 == 0:
        raise FormulaError("x and y must have opposite parities")
    if parity_case is not None and parity_case != case:
        raise FormulaError(f"parity case {parity_case!r} does not match x={x}, y={y}")
    if case == "a":
        hx1 = (x - 1) // 2          # (x-1)/2
        hy = y // 2
        top = (x + 2 * c + 1) // 2  # (x+2c+1)/2
        shift = (y + 2 * a) // 2    # (y+2a)/2
        shift2 = shift + c          # (y+2a+2c)/2
        val = Fraction(pp(top, hy, c))
        for i in range(1, hx1 + 1):
            val *= Fraction(pochhammer(shift + i, c), pochhammer(i, c))
        for i in range(1, hy + 1):
            val *= Fraction(pochhammer(shift2 + i, hx1), pochhammer(c + i, hx1))
            val *= Fraction(pochhammer(shift2 + i, top), pochhammer(c + i, top))
        return _exact(val, "mc_Bprime_closed(a)")
    hx = x // 2
    h = (y - 1) // 2
    w = h + c + 1                   # (y+2c+1)/2
    val = Fraction(1)
    for i in range(1, h + 1):
        val *= Fraction(pochhammer(h + a + c + 1 + i, c), pochhammer(i, c))
    for i in range(1, hx + 1):
        val *= Fraction(pochhammer(h + a + i, w), pochhammer(i, w))
        val *= Fraction(pochhammer(h + a + 2 * c + 1 + i, h), pochhammer(c + i, h))
    return _exact(val, "mc_Bprime_closed(b)")


def _mc_Bprime_b_as_printed(x: int, y: int, a: int, c: int) -> Fraction:
    """Literal transcription of the published x-even/y-odd product (kept as a reference; it is wrong)."""
    hx = x // 2
    hy1 = (y - 1) // 2
    w = (y + 2 * c + 1) // 2
    val = Fraction(pp(hx + c, hy1, c + 1))
    for i in range(0, hy1 + 1):
        val *= Fraction(pochhammer((y + 2 * a + 1) // 2 + i, c), pochhammer(c + i + 1, c))
    for i in range(1, hx + 1):
        val *= Fraction(pochhammer((y + 2 * a - 1) // 2 + i, w), pochhammer(i, w))
        val *= Fraction(pochhammer((y + 2 * a + 2 * c + 1) // 2 + c + i, hy1), pochhammer(2 * c + i + 1, w))
    return val


def above_profile(ferns: Sequence[Fern], gaps: Sequence[int]) -> tuple[int, ...]:
    """Dent sequence (a1, a2, ...) seen above the axis for ferns laid out with gaps.

    Odd entries are runs of up-pointing triangles, even entries the runs in
    between.  The first entry is 0 when the axis does not start with an up
    triangle.
    """
    runs = []
    for k, f in enumerate(ferns):
        runs.extend((o == UP, a) for o, a in f.triangles())
        if k < len(gaps):
            runs.append((False, gaps[k]))
    seq, current = [0], True
    for is_up, a in runs:
        if is_up == current:
            seq[-1] += a
        else:
            seq.append(a)
            current = is_up
    return tuple(seq)


def below_profile(ferns: Sequence[Fern], gaps: Sequence[int]) -> tuple[int, ...]:
    """Dent sequence seen below the axis (down triangles play the dents)."""
    flipped = [Fern(f.lengths, DOWN if f.first == UP else UP) for f in ferns]
    return above_profile(flipped, gaps)


def _normalize_pair(F1, F2, want_m_odd: bool, want_k_even: bool):
    F1 = Fern.from_json(F1).starting_up()
    F2 = Fern.from_json(F2).starting_up()
    if want_m_odd and len(F1.lengths) % 2 == 0:
        F1 = Fern(F1.lengths + (0,), UP)
    if want_k_even and len(F2.lengths) % 2 == 1:
        F2 = Fern(F2.lengths + (0,), UP)
    return F1, F2


def thm24_sequence(x: int, y: int, F1, F2) -> tuple[int, ...]:
    """Above-axis dent sequence of E_{x,y}(F1, F2 | (x+y)/2)."""
    from .regions import e_ferns

    g = _half(x + y, "x + y")
    fs, gs = e_ferns([F1, F2], [g], prime=False)
    return above_profile(fs, gs)


def thm25_sequence(x: int, y: int, F1, F2) -> tuple[int, ...]:
    """Above-axis dent sequence of E'_{x,y}(F1, F2 | (x+y-1)/2)."""
    from .regions import e_ferns

    if (x + y) % 2 == 0:
        raise FormulaError("x + y must be odd")
    fs, gs = e_ferns([F1, F2], [(x + y - 1) // 2], prime=True)
    return above_profile(fs, gs)


def thm24_rhs(x: int, y: int, F1, F2) -> int:
    """Symmetric tilings of the hexagon with three ferns removed, x and y even."""
    _half(x, "x")
    _half(y, "y")
    F1, F2 = _normalize_pair(F1, F2, want_m_odd=True, want_k_even=False)
    a, c = F1.total, F2.total
    g = (x + y) // 2
    val = Fraction(s_fn(thm24_sequence(x, y, F1, F2)), pp(a, g, c)) * mc_B_closed(x, y, a, c)
    return _exact(val, "thm24_rhs")


def thm25_rhs(x: int, y: int, F1, F2) -> int:
    """Symmetric tilings of the E' hexagon with three ferns removed, x + y odd."""
    if (x + y) % 2 == 0:
        raise FormulaError("x and y must have opposite parities")
    F1, F2 = _normalize_pair(F1, F2, want_m_odd=True, want_k_even=True)
    a, c = F1.total, F2.total
    g = (x + y - 1) // 2
    val = Fraction(s_fn(thm25_sequence(x, y, F1, F2)), pp(a, g, c)) * mc_Bprime_closed(x, y, a, c)
    return _exact(val, "thm25_rhs")
