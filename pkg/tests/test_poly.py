from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strange_msd import poly


def from_roots(roots):
    p = (1,)
    for r in roots:
        p = poly.mul(p, (-r.numerator, r.denominator))
    return p


fractions = st.fractions(min_value=-3, max_value=3, max_denominator=12)


def test_mul_and_evaluate():
    p = poly.mul((1, 1), (-1, 1))  # x^2 - 1
    assert p == (-1, 0, 1)
    assert poly.evaluate(p, Fraction(1, 2)) == Fraction(-3, 4)


def test_divmod_exact():
    q, r = poly.divmod_poly((-1, 0, 1), (1, 1))
    assert q == (-1, 1) and r == ()


def test_exact_div_rejects_remainder():
    with pytest.raises(ArithmeticError):
        poly.exact_div((1, 0, 1), (1, 1))


def test_gcd_has_positive_lead():
    g = poly.gcd_poly(poly.mul((1, 1), (2, 3)), poly.mul((1, 1), (5, -1)))
    assert g == (1, 1)


def test_primitive_keeps_sign():
    assert poly.primitive((Fraction(-1, 2), Fraction(-3, 4))) == (-2, -3)


def test_order_at_zero():
    assert poly.order_at_zero((0, 0, 5)) == 2
    assert poly.order_at_zero(()) is None


def test_squarefree_drops_repeated_factor():
    p = poly.mul(poly.power((-1, 1), 3), (2, 1))
    assert poly.squarefree(p) == poly.mul((-1, 1), (2, 1))


def test_smallest_root_of_quadratic_irrational():
    # x^2 - 2 on (0, 2]
    lo, hi = poly.smallest_root((-2, 0, 1), 0, 2, Fraction(1, 10**12))
    assert lo <= Fraction(2 ** 0.5) <= hi or abs(float(lo) - 2 ** 0.5) < 1e-12


def test_smallest_root_none():
    assert poly.smallest_root((1, 0, 1), -5, 5, Fraction(1, 100)) is None


@given(st.lists(fractions, min_size=1, max_size=6))
@settings(max_examples=80, deadline=None)
def test_sturm_counts_distinct_roots(roots):
    p = from_roots(roots)
    lo, hi = Fraction(-7, 2), Fraction(7, 2)
    seq = poly.sturm_sequence(poly.squarefree(p))
    assert poly.count_roots(seq, lo, hi) == len(set(roots))


@given(st.lists(fractions, min_size=1, max_size=5), fractions)
@settings(max_examples=80, deadline=None)
def test_smallest_root_brackets_minimum(roots, extra):
    p = poly.mul(from_roots(roots), (1, 0, 1))  # irrelevant complex pair
    tol = Fraction(1, 10**6)
    lo, hi = poly.smallest_root(p, Fraction(-7, 2), Fraction(7, 2), tol)
    assert lo <= min(roots) <= hi and hi - lo <= tol


@given(st.lists(st.integers(-20, 20), max_size=6), st.lists(st.integers(-20, 20), max_size=6),
       fractions)
def test_ring_operations_agree_with_evaluation(p, q, x):
    assert poly.evaluate(poly.mul(p, q), x) == poly.evaluate(p, x) * poly.evaluate(q, x)
    assert poly.evaluate(poly.add(p, q), x) == poly.evaluate(p, x) + poly.evaluate(q, x)
    assert poly.evaluate(poly.sub(p, q), x) == poly.evaluate(p, x) - poly.evaluate(q, x)


@given(st.lists(st.integers(-9, 9), min_size=1, max_size=6),
       st.lists(st.integers(-9, 9), min_size=1, max_size=4))
def test_divmod_identity(p, q):
    if not poly.trim(q):
        return
    quo, rem = poly.divmod_poly(p, q)
    assert poly.add(poly.mul(quo, q), rem) == poly.trim([Fraction(c) for c in p])
    assert poly.degree(rem) < poly.degree(q)
