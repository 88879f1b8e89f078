"""Core types: exact scalars, grades, elements, the bracket tables."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from khd import (
    G,
    L,
    Window,
    ZERO,
    bracket,
    build_kantor_double_lv,
    build_virasoro_like,
    det2,
    element,
)
from khd.algebra import Element, Scalar, abelian_superalgebra, parse_scalar, scaled
from khd.errors import UnknownBasisKey
from khd.grades import add, neg

rationals = st.fractions(
    min_value=-100, max_value=100, max_denominator=64
)


# -- scalars ---------------------------------------------------------------


@given(rationals, rationals)
def test_scalar_addition_is_exact(a, b):
    assert (a + b) - b == a


@given(rationals, rationals)
def test_scalar_multiplication_is_exact(a, b):
    if b != 0:
        assert (a * b) / b == a


@given(rationals)
def test_scalar_canonical_form(a):
    s = Scalar(a)
    from math import gcd

    assert s.denominator > 0
    assert gcd(abs(s.numerator), s.denominator) == 1
    assert Scalar(0) == Scalar(0, 1)


def test_parse_scalar_tolerates_unicode_minus():
    assert parse_scalar("−3/2") == Fraction(-3, 2)
    assert parse_scalar("7") == 7


# -- grades and windows ----------------------------------------------------


def test_det2_examples():
    assert det2((0, 1), (1, 0)) == -1
    assert det2((2, 1), (1, 1)) == 1


@given(st.tuples(st.integers(-9, 9), st.integers(-9, 9)))
def test_det2_vanishes_on_diagonal(m):
    assert det2(m, m) == 0


@given(
    st.tuples(st.integers(-9, 9), st.integers(-9, 9)),
    st.tuples(st.integers(-9, 9), st.integers(-9, 9)),
)
def test_det2_antisymmetric(m, n):
    assert det2(m, n) == -det2(n, m)


def test_grade_arithmetic():
    assert add((1, 2), (-1, 3)) == (0, 5)
    assert neg((2, -1)) == (-2, 1)
    assert add((1, 2), ZERO) == (1, 2)


def test_window_box():
    w = Window(2)
    assert (2, -2) in w
    assert ZERO not in w
    assert (3, 0) not in w
    assert w.contains_or_zero(ZERO)
    assert len(w) == 24
    assert len(list(w.grades())) == 24


def test_window_rejects_nonpositive():
    with pytest.raises(ValueError):
        Window(0)


# -- elements ----------------------------------------------------------------


def test_element_equality_ignores_truncation_flag():
    a = Element({L(1, 0): Fraction(1)}, truncated=True)
    b = Element({L(1, 0): Fraction(1)}, truncated=False)
    assert a == b


def test_element_drops_zero_coefficients():
    e = element((1, L(1, 0)), (-1, L(1, 0)))
    assert e.is_zero()
    assert Element({L(1, 0): Fraction(0)}).is_zero()


def test_element_arithmetic():
    e = element((2, L(1, 0)), (1, G(0, 1)))
    f = element((-2, L(1, 0)))
    assert (e + f) == element((1, G(0, 1)))
    assert (-e) + e == element()
    assert 3 * e == element((6, L(1, 0)), (3, G(0, 1)))


# -- basis ordering ----------------------------------------------------------


def test_basis_keys_sort_by_family_then_grade():
    keys = sorted([L(0, 1), G(1, 0), L(-1, 0), G(0, -1)])
    assert keys == [G(0, -1), G(1, 0), L(-1, 0), L(0, 1)]


def test_basis_sizes():
    assert len(build_virasoro_like(Window(1)).basis) == 8
    assert len(build_kantor_double_lv(Window(2)).basis) == 48


# -- bracket values from the closed forms ------------------------------------


def pairwise(alg, x, y):
    return bracket(alg, element((1, x)), element((1, y)))


def test_even_even_bracket(lv3):
    assert pairwise(lv3, L(1, 0), L(0, 1)) == element((-1, L(1, 1)))
    assert pairwise(lv3, L(1, 0), L(-1, 0)).is_zero()
    for m in [(1, 0), (2, 1), (-1, 1)]:
        assert pairwise(lv3, L(*m), L(*m)).is_zero()


def test_odd_odd_bracket(lv3):
    assert pairwise(lv3, G(1, 0), G(0, 1)) == element((1, L(1, 1)))
    assert pairwise(lv3, G(1, 0), G(1, 0)) == element((1, L(2, 0)))
    assert pairwise(lv3, G(1, 0), G(-1, 0)).is_zero()


def test_mixed_bracket(lv3):
    assert pairwise(lv3, L(1, 0), G(0, 1)) == element((-1, G(1, 1)))
    assert pairwise(lv3, G(1, 0), L(0, 1)) == element((-1, G(1, 1)))
    assert pairwise(lv3, L(0, 1), G(0, -1)).is_zero()


def test_bilinearity_on_simple_combination(lv3):
    got = bracket(lv3, element((2, G(1, 0))), element((3, G(0, 1))))
    assert got == element((6, L(1, 1)))


def test_even_self_bracket_of_combination_vanishes(lv3):
    x = element((1, L(1, 0)), (1, L(0, 1)))
    assert bracket(lv3, x, x).is_zero()


def test_truncation_flag(lv3):
    out = pairwise(lv3, L(3, 0), L(0, 1))
    assert out.is_zero() and out.truncated
    inside = pairwise(lv3, L(1, 0), L(0, 1))
    assert not inside.truncated
    # a genuinely zero in-window bracket is not flagged
    assert not pairwise(lv3, L(1, 0), L(-1, 0)).truncated


def test_unknown_basis_key_raises(lv2):
    with pytest.raises(UnknownBasisKey):
        bracket(lv2, element((1, L(3, 3))), element((1, L(0, 1))))
    with pytest.raises(UnknownBasisKey):
        lv2.bracket_keys(L(1, 0), G(5, 5))


# -- structural invariants, exhaustively at n=2 -------------------------------


def test_antisymmetry_exhaustive(lv2):
    for x in lv2.basis:
        for y in lv2.basis:
            sign = 1 if (x.parity and y.parity) else -1
            assert pairwise(lv2, x, y) == sign * pairwise(lv2, y, x)


def test_grade_and_parity_additivity_exhaustive(lv2):
    for (x, y), terms in lv2.brackets.items():
        for k in terms:
            assert k.grade == add(x.grade, y.grade)
            assert k.parity == x.parity ^ y.parity


sparse_elements = st.lists(
    st.tuples(
        st.sampled_from([L, G]),
        st.integers(-2, 2),
        st.integers(-2, 2),
        rationals,
    ),
    max_size=5,
)


def _mk_element(spec):
    terms = {}
    for fam, m1, m2, c in spec:
        if (m1, m2) == (0, 0):
            continue
        k = fam(m1, m2)
        v = terms.get(k, 0) + c
        if v:
            terms[k] = v
        else:
            terms.pop(k, None)
    return Element(terms)


@given(sparse_elements, sparse_elements, sparse_elements, rationals, rationals)
def test_bracket_bilinear(sx, sy, sz, a, b):
    alg = build_kantor_double_lv(Window(2))
    x, y, z = _mk_element(sx), _mk_element(sy), _mk_element(sz)
    left = bracket(alg, a * x + b * y, z)
    assert left == a * bracket(alg, x, z) + b * bracket(alg, y, z)
    right = bracket(alg, z, a * x + b * y)
    assert right == a * bracket(alg, z, x) + b * bracket(alg, z, y)


def test_scaled_algebra():
    lv = build_kantor_double_lv(Window(2))
    s = scaled(lv, Fraction(3, 2))
    assert pairwise(s, G(1, 0), G(0, 1)) == element((Fraction(3, 2), L(1, 1)))
    with pytest.raises(ValueError):
        scaled(lv, 0)


def test_abelian_algebra_brackets_vanish():
    alg = abelian_superalgebra([L(1, 0), G(1, 0)], Window(1))
    assert pairwise(alg, L(1, 0), G(1, 0)).is_zero()
