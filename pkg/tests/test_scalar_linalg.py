import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_rational, random_rows
from simplexsum.scalar_linalg import (
    FLOAT,
    NonFiniteInput,
    SquareMatrix,
    bareiss_pivots,
    det,
    det_bareiss,
    det_cofactor,
    det_float,
    format_rational,
    to_rational,
)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=30)


def square(order, elements=rationals):
    return st.lists(st.lists(elements, min_size=order, max_size=order), min_size=order, max_size=order)


def sympy_det(rows):
    return Fraction(str(sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rows]).det()))


def identity_rows(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


@pytest.mark.parametrize(
    "text, expected",
    [
        ("0.25", Fraction(1, 4)),
        ("3/6", Fraction(1, 2)),
        ("-1e-3", Fraction(-1, 1000)),
        ("0.1", Fraction(1, 10)),
        (" 7 ", Fraction(7)),
        (5, Fraction(5)),
        (0.5, Fraction(1, 2)),
    ],
)
def test_to_rational(text, expected):
    assert to_rational(text) == expected


def test_decimal_strings_never_pass_through_float():
    assert to_rational("0.1") != Fraction(0.1)


@pytest.mark.parametrize("bad", ["abc", "1/0", "", float("nan"), True, None])
def test_to_rational_rejects(bad):
    with pytest.raises((ValueError, TypeError)):
        to_rational(bad)


def test_canonical_form():
    q = to_rational("-6/4")
    assert (q.numerator, q.denominator) == (-3, 2)
    zero = to_rational("0/17")
    assert (zero.numerator, zero.denominator) == (0, 1)
    assert format_rational(Fraction(3, 1)) == "3"
    assert format_rational(Fraction(-2, 6)) == "-1/3"


def test_matrix_shape_validation():
    with pytest.raises(ValueError):
        SquareMatrix(())
    with pytest.raises(ValueError):
        SquareMatrix(((1, 2), (3,)))


def test_cofactor_identity():
    assert det_cofactor(SquareMatrix.from_rows(identity_rows(3))) == 1


def test_cofactor_equal_columns():
    m = SquareMatrix.from_columns([(1, 2, 3), (4, 5, 6), (1, 2, 3)])
    assert det_cofactor(m) == 0


def test_cofactor_bipyramid_m0():
    m = SquareMatrix.from_columns([(-1, 1, 0), (-2, -1, 0), (-1, 0, 1)])
    assert det_cofactor(m) == 3


@pytest.mark.parametrize("order", range(1, 7))
def test_cofactor_matches_sympy(rng, order):
    for _ in range(5):
        rows = random_rows(rng, order)
        assert det_cofactor(SquareMatrix.from_rows(rows)) == sympy_det(rows)


def test_bareiss_order_one():
    assert det_bareiss(SquareMatrix.from_rows([["-3/7"]])) == Fraction(-3, 7)


def test_bareiss_random_order_five(rng):
    m = SquareMatrix.from_rows(random_rows(rng, 5))
    assert det_bareiss(m) == det_cofactor(m)


def test_bareiss_singular(rng):
    cols = [[random_rational(rng) for _ in range(5)] for _ in range(4)]
    cols.append([a + b for a, b in zip(cols[0], cols[2])])
    assert det_bareiss(SquareMatrix.from_columns(cols)) == 0


def test_bareiss_needs_row_swap():
    m = SquareMatrix.from_rows([[0, 2, 1], [3, 0, 0], [1, 1, 0]])
    assert det_bareiss(m) == det_cofactor(m) == 3


@pytest.mark.parametrize("order", range(1, 8))
def test_bareiss_matches_cofactor(rng, order):
    for _ in range(10):
        m = SquareMatrix.from_rows(random_rows(rng, order, bound=30))
        assert det_bareiss(m) == det_cofactor(m)


def test_bareiss_pivots_are_leading_minors(rng):
    # Sylvester: without row swaps, the k-th pivot is the leading k x k minor.
    for _ in range(20):
        rows = [[rng.randint(-9, 9) for _ in range(6)] for _ in range(6)]
        minors = [det_cofactor(SquareMatrix.from_rows([r[:k] for r in rows[:k]])) for k in range(1, 7)]
        if any(mn == 0 for mn in minors):
            continue
        pivots = bareiss_pivots(SquareMatrix.from_rows(rows))
        assert all(isinstance(p, int) for p in pivots)
        assert pivots == minors


def test_float_identity_exact():
    fd = det_float(SquareMatrix.from_rows(identity_rows(4), FLOAT))
    assert fd.value == 1.0
    assert fd.error_scale > 0


def test_float_diagonal():
    assert det_float(SquareMatrix.from_rows([[2, 0], [0, 3]], FLOAT)).value == 6.0


def test_float_matches_rationalized_cofactor(rng):
    for _ in range(10):
        rows = [[rng.uniform(-1, 1) for _ in range(6)] for _ in range(6)]
        for k in range(6):
            rows[k][k] += 4.0  # diagonally dominant, well conditioned
        exact = det_cofactor(SquareMatrix.from_rows(rows))  # floats rationalize exactly
        approx = det_float(SquareMatrix.from_rows(rows, FLOAT)).value
        assert abs(approx - float(exact)) <= 1e-12 * abs(float(exact))


def test_float_rejects_non_finite():
    with pytest.raises(NonFiniteInput):
        det_float(SquareMatrix(((1.0, math.inf), (0.0, 1.0))))


def test_dispatch_uses_exact_kernels(rng):
    for order in (2, 3, 4, 6):
        m = SquareMatrix.from_rows(random_rows(rng, order))
        assert det(m) == det_cofactor(m)
        assert isinstance(det(m), Fraction)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 5).flatmap(lambda n: st.tuples(square(n), st.integers(0, n - 1), st.integers(0, n - 1))))
def test_column_swap_negates(data):
    rows, a, b = data
    if a == b:
        return
    m = SquareMatrix.from_rows(rows)
    swapped = m.swap_columns(a, b)
    for kernel in (det_cofactor, det_bareiss):
        assert kernel(swapped) == -kernel(m)
    x = det_float(SquareMatrix.from_rows(rows, FLOAT))
    y = det_float(SquareMatrix.from_columns(swapped.columns, FLOAT))
    assert abs(x.value + y.value) <= 2 * (x.error_scale + y.error_scale)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 5).flatmap(lambda n: st.tuples(square(n), st.integers(0, n - 1), st.integers(0, n - 1))))
def test_duplicate_column_vanishes(data):
    rows, src, dst = data
    if src == dst:
        return
    m = SquareMatrix.from_rows(rows)
    m = m.with_column(dst, m.columns[src])
    assert det_cofactor(m) == 0
    assert det_bareiss(m) == 0
    fd = det_float(SquareMatrix.from_columns(m.columns, FLOAT))
    assert abs(fd.value) <= fd.error_scale


@settings(max_examples=60, deadline=None)
@given(
    st.integers(1, 5).flatmap(
        lambda n: st.tuples(square(n), st.lists(rationals, min_size=n, max_size=n), st.integers(0, n - 1), rationals)
    )
)
def test_multilinear_in_each_column(data):
    rows, other, j, c = data
    m = SquareMatrix.from_rows(rows)
    scaled = m.with_column(j, [c * x for x in m.columns[j]])
    assert det_bareiss(scaled) == c * det_bareiss(m)
    summed = m.with_column(j, [x + y for x, y in zip(m.columns[j], other)])
    assert det_cofactor(summed) == det_cofactor(m) + det_cofactor(m.with_column(j, other))
