from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from lozshuffle import formulas as F
from lozshuffle.enumerator import count_cs_tilings, count_tilings
from lozshuffle.regions import UP, Fern, build_E, build_E_prime, build_S, build_T, build_hexagon


def test_pp():
    assert F.pp(3, 2, 0) == 1
    assert F.pp(1, 1, 1) == 2
    assert F.pp(1, 2, 3) == 10
    assert F.pp(2, 2, 2) == 20
    with pytest.raises(F.FormulaError):
        F.pp(-1, 1, 1)


def test_pp_symmetric_in_arguments():
    assert F.pp(1, 2, 3) == F.pp(3, 1, 2) == F.pp(2, 3, 1)


def test_hyperfactorial():
    assert [F.hyperfactorial(n) for n in range(6)] == [1, 1, 1, 2, 12, 288]
    with pytest.raises(F.FormulaError):
        F.hyperfactorial(-1)


def test_pochhammer():
    assert F.pochhammer(5, 0) == 1
    assert F.pochhammer(3, 2) == 12
    assert F.pochhammer(1, 4) == 24


def test_delta_prod():
    assert F.delta_prod([5]) == 1
    assert F.delta_prod([1, 3, 4]) == 6
    assert F.delta_prod([1, 2, 6, 9]) == 3360
    with pytest.raises(F.FormulaError):
        F.delta_prod([2, 1])


def test_clp():
    assert F.clp_count(3, 2, [1, 2, 3]) == 1
    assert F.clp_count(2, 1, [1, 3]) == 2
    with pytest.raises(F.FormulaError):
        F.clp_count(2, 1, [1])
    with pytest.raises(F.FormulaError):
        F.clp_count(2, 1, [1, 4])


@pytest.mark.parametrize("dents", [(1, 4, 6), (2, 3, 7), (1, 5, 8)])
def test_clp_matches_region(dents):
    assert F.clp_count(3, 5, dents) == count_tilings(build_T(3, 5, dents))


def test_s_fn():
    assert F.s_fn([2]) == 1
    assert F.s_fn([1, 1, 1]) == 2
    assert F.s_fn([1, 1, 1, 5]) == F.s_fn([1, 1, 1])
    with pytest.raises(F.FormulaError):
        F.s_fn([])


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=1, max_size=5))
def test_s_fn_matches_region(seq):
    assume(sum(seq) <= 8)
    assert F.s_fn(seq) == count_tilings(build_S(seq))


def test_shuffle_ratio():
    assert F.shuffle_ratio([1, 3], [2], [1, 3], [2], 2) == 1
    assert F.shuffle_ratio([1, 3], [2], [1], [2, 3], 1) == 2
    with pytest.raises(F.FormulaError):
        F.shuffle_ratio([1], [2], [1], [3], 1)


def test_cs_shuffle_ratio():
    assert F.cs_shuffle_ratio(2, 2, [1], [], [1], []) == 1
    assert F.cs_shuffle_ratio(2, 2, [1, 2], [], [1], [2]) == Fraction(1, 6)
    assert F.cs_up_set(2, 2, [1], [2]) == (1, 7)


@st.composite
def three_configs(draw):
    W = draw(st.lists(st.integers(1, 9), min_size=1, max_size=4, unique=True))
    inter = [w for w in W if draw(st.booleans())]
    rest = [w for w in W if w not in inter]

    def split():
        ups = [w for w in rest if draw(st.booleans())]
        return sorted(set(inter) | set(ups)), sorted(set(inter) | (set(rest) - set(ups)))

    return split(), split(), split(), draw(st.integers(0, 3))


@settings(max_examples=80, deadline=None)
@given(three_configs())
def test_shuffle_ratio_multiplicative(p):
    (A, B, C, y) = p
    ab = F.shuffle_ratio(*A, *B, y)
    bc = F.shuffle_ratio(*B, *C, y)
    assert F.shuffle_ratio(*A, *C, y) == ab * bc
    assert F.cs_shuffle_ratio(2, y, *A, *C) == F.cs_shuffle_ratio(2, y, *A, *B) * F.cs_shuffle_ratio(2, y, *B, *C)


# ---------------------------------------------------------------------------
# symmetric closed forms; region counts computed by exhaustive search


@pytest.mark.parametrize("args,count", [
    ((0, 0, 0, 0), 1),
    ((2, 2, 1, 1), 60),
    ((0, 2, 1, 1), 4),
    ((2, 0, 2, 1), 3),
    ((4, 2, 1, 2), 3500),
    ((2, 4, 0, 3), 111132),
])
def test_mc_B(args, count):
    assert F.mc_B_closed(*args) == count


def test_mc_B_needs_even():
    with pytest.raises(F.FormulaError):
        F.mc_B_closed(1, 2, 0, 0)


@pytest.mark.parametrize("args,count", [
    ((1, 2, 1, 1), 10),
    ((3, 0, 2, 1), 3),
    ((1, 4, 0, 2), 490),
    ((0, 1, 0, 1), 1),
    ((2, 1, 1, 1), 3),
    ((2, 3, 1, 2), 840),
    ((0, 3, 2, 0), 1),
])
def test_mc_Bprime(args, count):
    assert F.mc_Bprime_closed(*args) == count


def test_mc_Bprime_parity():
    with pytest.raises(F.FormulaError):
        F.mc_Bprime_closed(2, 2, 0, 0)
    with pytest.raises(F.FormulaError):
        F.mc_Bprime_closed(1, 2, 0, 0, "b")
    assert F.mc_Bprime_closed(1, 2, 1, 1, "a") == 10


def test_printed_even_odd_product_is_not_a_count():
    # the literal product is fractional here while the region has exactly one symmetric tiling
    assert F._mc_Bprime_b_as_printed(0, 1, 0, 1) == Fraction(1, 2)
    assert F._mc_Bprime_b_as_printed(2, 1, 1, 1) == Fraction(3, 20)
    region = build_E_prime(0, 1, [Fern((0,), UP), Fern((1, 0), UP)], [0])
    assert count_cs_tilings(region) == F.mc_Bprime_closed(0, 1, 0, 1) == 1


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
def test_mc_B_matches_region(hx, hy, a, c):
    x, y = 2 * hx, 2 * hy
    region = build_E(x, y, [Fern((a,), UP), Fern((c,), UP)], [(x + y) // 2])
    assert count_cs_tilings(region) == F.mc_B_closed(x, y, a, c)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 4), st.integers(0, 3), st.integers(0, 2), st.integers(0, 2))
def test_mc_Bprime_matches_region(x, y, a, c):
    assume((x + y) % 2 == 1)
    region = build_E_prime(x, y, [Fern((a,), UP), Fern((c, 0), UP)], [(x + y - 1) // 2])
    assert count_cs_tilings(region) == F.mc_Bprime_closed(x, y, a, c)


def test_closed_forms_tiny():
    f1, f0 = Fern((1,), UP), Fern((), UP)
    assert F.thm24_rhs(2, 2, f1, f0) == count_cs_tilings(build_E(2, 2, [f1, f0], [2])) == 9
    assert F.thm25_rhs(1, 2, f1, f1) == count_cs_tilings(build_E_prime(1, 2, [f1, f1], [1])) == 10


def test_closed_forms_empty_ferns():
    f0 = Fern((), UP)
    assert F.thm24_rhs(2, 2, f0, f0) == count_cs_tilings(build_hexagon(2, 2, 2)) == 4
    with pytest.raises(F.FormulaError):
        F.thm24_rhs(1, 2, f0, f0)
    with pytest.raises(F.FormulaError):
        F.thm25_rhs(2, 2, f0, f0)


def test_profiles():
    ferns = [Fern((1, 2), UP), Fern((3,), "down")]
    assert F.above_profile(ferns, [2]) == (1, 7)
    assert F.below_profile(ferns, [2]) == (0, 1, 2, 2, 3)


@pytest.mark.parametrize("a,b,c", [(1, 1, 1), (2, 3, 1), (3, 3, 2), (0, 2, 2)])
def test_pp_matches_hexagon(a, b, c):
    assert F.pp(a, b, c) == count_tilings(build_hexagon(a, b, c), "backtrack")
