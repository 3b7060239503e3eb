from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arrlab.cyclo import (CycRat, cyclotomic_polynomial, embed, poly_divmod, poly_mul, totient,
                          zeta_power)


def naive_phi(n):
    # oracle: x^n - 1 divided by Phi_d for the proper divisors, computed afresh
    num = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            num, rem = poly_divmod(num, naive_phi(d))
            assert not rem
    return [int(c) for c in num]


def test_small_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)


def test_phi12_against_division_oracle():
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    assert list(cyclotomic_polynomial(12)) == naive_phi(12)


@pytest.mark.parametrize("n", range(1, 31))
def test_product_of_phi_d_is_x_n_minus_1(n):
    prod = [1]
    for d in range(1, n + 1):
        if n % d == 0:
            prod = poly_mul(prod, cyclotomic_polynomial(d))
    assert prod == [-1] + [0] * (n - 1) + [1]
    assert len(cyclotomic_polynomial(n)) - 1 == totient(n)


def test_phi_rejects_bad_orders():
    with pytest.raises(ValueError):
        cyclotomic_polynomial(0)
    with pytest.raises(ValueError):
        cyclotomic_polynomial(-3)


def test_phi3_relation():
    z = zeta_power(3, 1)
    assert z * z + z + 1 == 0


def test_zeta4_squared_is_minus_one():
    i = zeta_power(4, 1)
    assert i * i == -1


def test_product_reduced_mod_phi5():
    z = zeta_power(5, 1)
    got = (1 + z) * (1 + zeta_power(5, 4))
    # multiply in Z[x]/(x^5 - 1), then reduce mod Phi_5
    raw = [0] * 5
    for a in (0, 1):
        for b in (0, 4):
            raw[(a + b) % 5] += 1
    assert got == CycRat(5, raw)
    assert got == 2 + z + zeta_power(5, 4)


def test_inverses():
    assert CycRat.from_scalar(1, 2).inv() == Fraction(1, 2)
    assert zeta_power(3, 1).inv() == CycRat(3, [-1, -1])
    i = zeta_power(4, 1)
    inv = (1 + i).inv()
    assert inv == (1 - i) / 2
    assert inv * (1 + i) == 1


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        CycRat(7).inv()


def test_zeta_power_examples():
    assert zeta_power(3, 3) == 1
    assert zeta_power(3, 2) == CycRat(3, [-1, -1])
    assert zeta_power(6, 1).coeffs == (0, 1)
    assert zeta_power(6, 7) == zeta_power(6, 1)
    assert zeta_power(5, -1) == zeta_power(5, 4)


def test_order_mismatch_is_rejected():
    with pytest.raises(ValueError):
        zeta_power(3, 1) + zeta_power(4, 1)
    with pytest.raises(ValueError):
        embed(3, zeta_power(5, 1))


def test_str_and_repr():
    assert str(zeta_power(3, 2)) == "-1 - z3"
    assert repr(zeta_power(3, 1)) == "CycRat(3, [0, 1])"
    assert str(CycRat(5)) == "0"


def test_immutable_and_hashable():
    z = zeta_power(7, 2)
    with pytest.raises(AttributeError):
        z.order = 3
    assert len({z, zeta_power(7, 9), zeta_power(7, 3)}) == 2


ORDERS = st.sampled_from([1, 2, 3, 4, 5, 6, 7, 8, 12])
small_q = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def elements(draw, order):
    n = totient(order)
    return CycRat(order, draw(st.lists(small_q, min_size=n, max_size=n)))


@st.composite
def triples(draw):
    n = draw(ORDERS)
    return n, draw(elements(n)), draw(elements(n)), draw(elements(n))


@settings(max_examples=150, deadline=None)
@given(triples())
def test_field_axioms(t):
    _, a, b, c = t
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == 0
    if a:
        assert a * a.inv() == 1
        assert (b / a) * a == b


@settings(max_examples=100, deadline=None)
@given(triples())
def test_canonical_form_is_idempotent(t):
    n, a, _, _ = t
    assert CycRat(n, a.coeffs) == a
    assert CycRat(n, a.coeffs).coeffs == a.coeffs
    assert len(a.coeffs) == totient(n)


@settings(max_examples=100, deadline=None)
@given(small_q, small_q)
def test_order_one_matches_fraction(x, y):
    a, b = CycRat.from_scalar(1, x), CycRat.from_scalar(1, y)
    assert a + b == x + y
    assert a * b == x * y
    assert a - b == x - y
    if y:
        assert a / b == x / y


def test_long_inputs_are_reduced():
    # x^n reduces to 1 in Q(zeta_n)
    for n in (3, 5, 8, 12):
        assert CycRat(n, [0] * n + [1]) == 1


def test_power():
    z = zeta_power(12, 1)
    assert z ** 12 == 1
    assert z ** -1 == zeta_power(12, 11)
    assert z ** 0 == 1
