import random
from fractions import Fraction
from itertools import combinations

import pytest

from arrlab import families as fam
from arrlab.arrangement import (attach_star, disjoint_union, general_lines, generate_generic_plus_nodes,
                                near_pencil, pencil)
from arrlab.esv import (Witness, all_witnesses, check_condition, check_condition_a,
                        check_condition_a_prime, check_condition_b, check_condition_strata,
                        esv_report, esv_verdict, find_witness, quick_a_doubleprime,
                        remark3_shortcut, theorem2_cover, weight_vector)
from arrlab.exceptions import ArrangementError, BudgetExceeded, NotApplicableError
from arrlab.oracle import oracle_witness

from conftest import random_incidence, small_fixtures, thicken


# ---------------------------------------------------------------------------
# Checkers
# ---------------------------------------------------------------------------

def test_gaa3_2_cross_lines_satisfy_a():
    # lines 0, 1 are x - y and x + y
    assert check_condition_a(fam.gaa3(2), 3, [0, 1])
    assert check_condition_a_strata(fam.gaa3(2), 3, [0, 1])


def check_condition_a_strata(inc, m, J):
    return check_condition_strata(inc, m, J, "a")


def test_hessian_m3_is_vacuous():
    inc = fam.hessian()
    for J in combinations(range(12), 4):
        assert check_condition_a(inc, 3, J) and check_condition_b(inc, 3, J)


def test_grid6_explicit_witness():
    assert check_condition_b(fam.grid(6), 3, fam.grid_thirds_witness(6))


def test_pencil_single_line():
    for i in range(3):
        assert check_condition_b(pencil(3), 3, [i])


def test_ex32_f2_has_no_witness():
    inc = fam.ex32_f2()
    assert not any(check_condition_b(inc, 3, J) for J in combinations(range(9), 3))
    assert not any(check_condition_a(inc, 3, J) for J in combinations(range(9), 3))


def test_fermat_ceva_4_fails_both():
    inc = fam.fermat_ceva(4)
    for J in combinations(range(16), 4):
        assert not check_condition_a(inc, 4, J)
        assert not check_condition_b(inc, 4, J)


def test_size_is_checked():
    with pytest.raises(ValueError, match="d/m"):
        check_condition_b(fam.gaa3(2), 3, [0])
    with pytest.raises(ValueError, match="divide"):
        check_condition_b(fam.gaa3(2), 4, [0])
    with pytest.raises(ValueError):
        check_condition_b(fam.gaa3(2), 3, [0, 0])
    with pytest.raises(ValueError):
        check_condition_b(fam.gaa3(2), 3, [0, 6])
    with pytest.raises(ValueError):
        check_condition(fam.gaa3(2), 3, [0, 1], "c")


def test_a_prime_implies_a():
    rng = random.Random(3)
    for inc in small_fixtures():
        for m in (2, 3, 4):
            if inc.degree % m:
                continue
            for _ in range(20):
                J = rng.sample(range(inc.degree), inc.degree // m)
                if check_condition_a_prime(inc, m, J):
                    assert check_condition_a(inc, m, J)


def checker_cases():
    rng = random.Random(8)
    out = []
    for inc in small_fixtures():
        for m in (2, 3, 4, 6):
            if inc.degree % m == 0:
                out.append((inc, m))
    for _ in range(40):
        m = rng.choice([2, 3, 4])
        d = m * rng.randint(2, 5)
        out.append((random_incidence(rng, d, rng.randint(1, 6)), m))
    return out


@pytest.mark.parametrize("inc,m", checker_cases())
def test_two_checkers_agree(inc, m):
    rng = random.Random(inc.degree * 31 + m)
    for _ in range(30):
        J = rng.sample(range(inc.degree), inc.degree // m)
        for cond in "ab":
            assert check_condition(inc, m, J, cond) == check_condition_strata(inc, m, J, cond)


@pytest.mark.parametrize("inc", [f for f in small_fixtures() if f.degree % 2 == 0])
def test_m2_duality(inc):
    d = inc.degree
    for J in list(combinations(range(d), d // 2))[:300]:
        comp = [i for i in range(d) if i not in J]
        assert check_condition_a(inc, 2, J) == check_condition_b(inc, 2, comp)


def test_per_point_monotonicity():
    rng = random.Random(17)
    for _ in range(200):
        inc = random_incidence(rng, rng.randint(6, 15), rng.randint(1, 5))
        m = rng.choice([2, 3, 4])
        order = rng.sample(range(inc.degree), inc.degree)
        prev_b = {p: False for p in range(len(inc.points))}
        prev_a = {p: True for p in range(len(inc.points))}
        js = set()
        for line in order:
            js.add(line)
            for pid, p in enumerate(inc.points):
                jp = len(js & p.lines)
                b, a = m * jp >= p.multiplicity, m * jp <= p.multiplicity
                assert b or not prev_b[pid]
                assert a <= prev_a[pid]
                prev_b[pid], prev_a[pid] = b, a


# ---------------------------------------------------------------------------
# Search
# ---------------------------------------------------------------------------

def test_fermat_ceva_5_witness():
    inc = fam.fermat_ceva(5)
    w = find_witness(inc, 5, "b")
    assert w is not None and check_condition_b(inc, 5, w.J)
    assert check_condition_b(inc, 5, fam.fermat_ceva_odd_witness(5))


def test_fermat_ceva_4_none():
    inc = fam.fermat_ceva(4)
    assert find_witness(inc, 4, "b") is None
    assert find_witness(inc, 4, "a") is None


@pytest.mark.parametrize("f", range(3))
def test_gaa3_4_factor_is_witness(f):
    inc = fam.gaa3(4)
    J = list(range(4 * f, 4 * f + 4))
    assert check_condition_a(inc, 3, J)
    w = find_witness(inc, 3, "a")
    assert w is not None and check_condition_a(inc, 3, w.J)


def test_f1_witness():
    w = find_witness(fam.ex32_f1(), 3, "b")
    assert w.J == (0, 2, 8)
    assert check_condition_strata(fam.ex32_f1(), 3, w.J, "b")


def test_witness_rejects_bad_condition():
    with pytest.raises(ValueError):
        Witness((0, 1), "c")
    with pytest.raises(ValueError):
        find_witness(fam.gaa3(2), 4, "b")


def test_node_budget():
    with pytest.raises(BudgetExceeded):
        find_witness(fam.fermat_ceva(4), 4, "b", node_budget=5)


def oracle_cases():
    out = []
    for inc in small_fixtures(max_degree=12):
        for m in range(2, inc.degree + 1):
            if inc.degree % m == 0:
                out.append((inc, m))
    return out


@pytest.mark.parametrize("inc,m", oracle_cases(), ids=lambda x: getattr(x, "name", str(x)))
def test_search_matches_enumeration(inc, m):
    for cond in "ab":
        w = find_witness(inc, m, cond)
        first = next(iter(all_witnesses(inc, m, cond)), None)
        assert (w.J if w else None) == first
        if w:
            assert check_condition_strata(inc, m, w.J, cond)


def test_random_search_matches_enumeration():
    rng = random.Random(23)
    for _ in range(60):
        m = rng.choice([2, 3, 4])
        inc = random_incidence(rng, m * rng.randint(2, 4), rng.randint(1, 6))
        for cond in "ab":
            w = find_witness(inc, m, cond)
            assert (w.J if w else None) == oracle_witness(inc, m, cond).witness


# ---------------------------------------------------------------------------
# Shortcuts
# ---------------------------------------------------------------------------

def test_doubleprime_near_pencil():
    m = 3
    inc = near_pencil(2 * m)
    w = quick_a_doubleprime(inc, m)
    assert w is not None and w.condition == "a"
    assert set(w.J) <= inc.points[0].lines
    assert check_condition_a(inc, m, w.J)


def test_doubleprime_hessian_declines():
    assert quick_a_doubleprime(fam.hessian(), 4) is None


def test_doubleprime_uses_double_point():
    inc = fam.gaa3(2)
    w = quick_a_doubleprime(inc, 3)
    assert w is not None and inc.meeting_point(*w.J) is None
    assert check_condition_a(inc, 3, w.J)


def test_remark3_examples():
    w = remark3_shortcut(fam.gaa3(4), 4)
    assert w.J == (0, 4, 8) and check_condition_b(fam.gaa3(4), 4, w.J)
    w = remark3_shortcut(pencil(3), 3)
    assert len(w.J) == 1
    assert remark3_shortcut(fam.hessian(), 4) is None
    assert find_witness(fam.hessian(), 4, "b") is not None


def test_theorem2_examples():
    inc = generate_generic_plus_nodes(5)
    w = theorem2_cover(inc, 3)
    assert w.J == (0, 1, 2, 3, 4) and check_condition_b(inc, 3, w.J)
    one = pencil(3)
    assert len(theorem2_cover(one, 3).J) == 1
    with pytest.raises(NotApplicableError):
        theorem2_cover(fam.gaa3(3), 3)
    with pytest.raises(NotApplicableError):
        theorem2_cover(fam.gaa3(2), 2)


def test_theorem2_through_reduction():
    inc = thicken(generate_generic_plus_nodes(5), 3, [0, 2])
    w = theorem2_cover(inc, 3)
    assert check_condition_b(inc, 3, w.J)


def shortcut_cases():
    rng = random.Random(41)
    out = [(f, m) for f in small_fixtures() for m in range(2, f.degree + 1) if f.degree % m == 0]
    for n in (3, 5, 6):
        out.append((generate_generic_plus_nodes(n, seed=n), 3))
    for _ in range(30):
        m = rng.choice([3, 4])
        out.append((random_incidence(rng, m * rng.randint(2, 4), rng.randint(1, 5)), m))
    return out


@pytest.mark.parametrize("inc,m", shortcut_cases(), ids=lambda x: getattr(x, "name", str(x)))
def test_shortcuts_are_sound(inc, m):
    for fn, cond in ((quick_a_doubleprime, "a"), (remark3_shortcut, "b")):
        w = fn(inc, m)
        if w is not None:
            assert w.condition == cond and check_condition(inc, m, w.J, cond)
            assert find_witness(inc, m, cond) is not None
    if m >= 3:
        try:
            w = theorem2_cover(inc, m)
        except NotApplicableError:
            return
        assert check_condition_b(inc, m, w.J)


def test_invalid_shortcut_witness_is_caught():
    from arrlab.esv import _validated
    with pytest.raises(ArrangementError):
        _validated(fam.ex32_f2(), 3, [0, 1, 2], "b", "test")


def star_cases():
    out = []
    for base, m in ((fam.gaa3(2), 3), (fam.ex32_f1(), 3), (pencil(3), 3), (generate_generic_plus_nodes(3), 3)):
        p = 0
        for k_star in (2, 3, 4):
            out.append((base, attach_star(base, p, min(base.points[p].lines), 1, k_star, m), k_star, m))
    return out


@pytest.mark.parametrize("base,inc,k_star,m", star_cases(), ids=lambda x: getattr(x, "name", str(x)))
def test_star_witness_bound(base, inc, k_star, m):
    """An (a)-witness uses at most k_star new lines, a (b)-witness at least k_star."""
    new = set(range(base.degree, inc.degree))
    found = 0
    for cond in "ab":
        for J in oracle_all(inc, m, cond):
            used = len(new & set(J))
            assert used <= k_star if cond == "a" else used >= k_star
            found += 1
    assert found


def oracle_all(inc, m, cond, limit=200):
    out = []
    for J in all_witnesses(inc, m, cond):
        out.append(J)
        if len(out) >= limit:
            break
    return out


# ---------------------------------------------------------------------------
# Weights and verdicts
# ---------------------------------------------------------------------------

def test_weight_vector_example():
    w = weight_vector(fam.gaa3(2), 3, [0, 1], "plus")
    t, o = Fraction(2, 3), Fraction(-1, 3)
    assert w.alphas == (t, t, o, o, o, o)
    assert sum(w.alphas) == 0 and w.esv_ok
    for p in fam.gaa3(2).points:
        assert sum(w.alphas[i] for i in p.lines) <= 0


def test_weight_vector_minus():
    w = weight_vector(fam.gaa3(2), 3, [0, 1], "minus")
    assert w.alphas[0] == Fraction(-2, 3) and w.alphas[5] == Fraction(1, 3)
    with pytest.raises(ValueError):
        weight_vector(fam.gaa3(2), 3, [0, 1], "both")


def test_weights_match_conditions():
    rng = random.Random(77)
    pairs = 0
    while pairs < 200:
        m = rng.choice([2, 3, 4])
        inc = random_incidence(rng, m * rng.randint(2, 5), rng.randint(1, 6))
        J = rng.sample(range(inc.degree), inc.degree // m)
        plus = weight_vector(inc, m, J, "plus")
        minus = weight_vector(inc, m, J, "minus")
        assert sum(plus.alphas) == 0 == sum(minus.alphas)
        assert all(a.denominator != 1 or a <= 0 for a in plus.alphas)
        assert plus.esv_ok == check_condition_a(inc, m, J)
        assert minus.esv_ok == check_condition_b(inc, m, J)
        pairs += 1


def test_verdict_gaa3_3():
    v = esv_verdict(fam.gaa3(3), 3, lower_bound_budget=100_000)
    assert v.status == "not_calculable" and v.lower_bound == 1
    assert v.witness is None and not v.calculable


def test_verdict_hessian():
    verdicts = {v.m: v for v in esv_report(fam.hessian())}
    assert sorted(verdicts) == [2, 3, 4, 6, 12]
    assert all(v.calculable for v in verdicts.values())
    hv = verdicts[4]
    assert check_condition(fam.hessian(), 4, hv.witness.J, hv.condition)


def test_verdict_vanishing_and_f1():
    assert esv_verdict(fam.hessian(), 5).status == "vanishes_m_not_dividing_d"
    v = esv_verdict(fam.ex32_f1(), 3)
    assert v.calculable and check_condition(fam.ex32_f1(), 3, v.witness.J, v.condition)
    assert esv_verdict(fam.ex32_f2(), 3).status == "not_calculable"


def test_verdict_budget():
    v = esv_verdict(fam.fermat_ceva(4), 4, node_budget=10)
    assert v.status == "unknown_budget"


def test_verdict_flags():
    assert esv_verdict(fam.gaa3(4), 3).quick_flags == ("a_doubleprime",)
    four = disjoint_union(disjoint_union(pencil(4), pencil(4)), disjoint_union(pencil(4), pencil(4)))
    assert esv_verdict(four, 4).quick_flags == ("remark3",)
    assert esv_verdict(generate_generic_plus_nodes(6), 3).quick_flags == ("theorem2",)
    assert esv_verdict(fam.hessian(), 4, shortcuts=False).quick_flags == ("search",)


def test_verdict_agrees_with_search():
    for inc, m in shortcut_cases():
        v = esv_verdict(inc, m)
        exists = any(find_witness(inc, m, c) is not None for c in "ab")
        assert v.calculable == exists
