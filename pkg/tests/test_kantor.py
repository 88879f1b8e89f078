"""The generic double construction against the hardcoded instance."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from khd import (
    G,
    L,
    Window,
    build_kantor_double_lv,
    kantor_double,
    validate_double,
    validate_poisson_input,
    virasoro_like_poisson,
)
from khd.algebra import BasisKey, EVEN
from khd.errors import InvalidPoissonInput, WindowTooSmall
from khd.grades import add, det2
from khd.kantor import PoissonAlgebraInput

LV_FAMILIES = {"L": "G"}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_double_matches_hardcoded_tables(n):
    w = Window(n)
    d = kantor_double(virasoro_like_poisson(w), w, odd_family=LV_FAMILIES)
    assert d.structure_equal(build_kantor_double_lv(w))


def test_double_mixed_orientation_entries(lv2):
    w = Window(2)
    d = kantor_double(virasoro_like_poisson(w), w, odd_family=LV_FAMILIES)
    # the mixed family is stored under (G, L) pairs with the sign rule applied
    assert d.brackets[(G(0, 1), L(1, 0))] == {G(1, 1): Fraction(1)}
    assert (L(1, 0), G(0, 1)) not in d.brackets


def test_default_odd_family_suffix():
    w = Window(1)
    d = kantor_double(virasoro_like_poisson(w), w)
    families = {k.family for k in d.basis}
    assert families == {"L", "Ls"}


def test_trivial_poisson_gives_abelian_double():
    w = Window(1)
    basis = (L(1, 0),)
    p = PoissonAlgebraInput("point", w, basis, {}, {})
    d = kantor_double(p, w)
    assert len(d.basis) == 2
    assert d.brackets == {}


def test_product_truncates_to_zero_at_origin():
    # L_(1,0) . L_(-1,0) has grade (0,0): the input stores nothing there and
    # the double's odd-odd bracket is simply absent
    w = Window(2)
    p = virasoro_like_poisson(w)
    assert p.product_terms(L(1, 0), L(-1, 0)) == {}
    d = kantor_double(p, w, odd_family=LV_FAMILIES)
    assert (G(-1, 0), G(1, 0)) not in d.brackets


def test_validate_poisson_accepts_v():
    assert validate_poisson_input(virasoro_like_poisson(Window(2))) == []


def test_validate_rejects_broken_associativity():
    w = Window(2)
    p = virasoro_like_poisson(w)
    product = dict(p.product)
    product[(L(0, 1), L(1, 0))] = {L(1, 1): Fraction(2)}
    bad = PoissonAlgebraInput("bad", w, p.basis, product, p.lie)
    kinds = {v.kind for v in validate_poisson_input(bad)}
    assert "associativity" in kinds
    with pytest.raises(InvalidPoissonInput):
        kantor_double(bad, w)


def test_validate_rejects_broken_jacobi():
    w = Window(2)
    p = virasoro_like_poisson(w)
    lie = dict(p.lie)
    lie[(L(0, 1), L(1, 0))] = {L(1, 1): Fraction(5)}
    bad = PoissonAlgebraInput("bad", w, p.basis, p.product, lie)
    kinds = {v.kind for v in validate_poisson_input(bad)}
    assert "jacobi" in kinds or "leibniz" in kinds


def test_validate_rejects_odd_basis():
    w = Window(1)
    bad = PoissonAlgebraInput("bad", w, (G(1, 0),), {}, {})
    assert any(v.kind == "parity" for v in validate_poisson_input(bad))


def test_double_window_cannot_exceed_input():
    p = virasoro_like_poisson(Window(1))
    with pytest.raises(WindowTooSmall):
        kantor_double(p, Window(2))


def test_double_on_smaller_window():
    p = virasoro_like_poisson(Window(2))
    d = kantor_double(p, Window(1), odd_family=LV_FAMILIES)
    assert d.structure_equal(build_kantor_double_lv(Window(1)))


def test_validate_double_clean_and_corrupted(lv2):
    w = Window(2)
    d = kantor_double(virasoro_like_poisson(w), w, odd_family=LV_FAMILIES)
    assert validate_double(d) == []
    table = dict(d.brackets)
    table[(G(0, 1), G(1, 0))] = {L(1, 1): Fraction(-1)}
    from khd.algebra import SuperAlgebra

    bad = SuperAlgebra("bad", w, d.basis, table)
    assert validate_double(bad)


def _rescaled_v_input(n, q, scales):
    """A diagonal rescale of the q-scaled input: still a valid Poisson input."""
    w = Window(n)
    base = virasoro_like_poisson(w)

    def lam(m):
        return scales[m]

    product = {}
    lie = {}
    for (x, y), terms in base.product.items():
        s = add(x.grade, y.grade)
        c = lam(x.grade) * lam(y.grade) / lam(s)
        product[(x, y)] = {k: v * c for k, v in terms.items()}
    for (x, y), terms in base.lie.items():
        s = add(x.grade, y.grade)
        c = q * lam(x.grade) * lam(y.grade) / lam(s)
        lie[(x, y)] = {k: v * c for k, v in terms.items()}
    return PoissonAlgebraInput(f"rescaled(n={n})", w, base.basis, product, lie)


nonzero_rationals = st.fractions(max_denominator=8, min_value=-8, max_value=8).filter(bool)


@settings(max_examples=15, deadline=None)
@given(
    q=st.fractions(max_denominator=6, min_value=-6, max_value=6),
    data=st.data(),
)
def test_double_of_valid_input_is_lie_superalgebra(q, data):
    n = 1
    w = Window(n)
    grades = list(w.grades())
    scales = {m: data.draw(nonzero_rationals) for m in grades}
    p = _rescaled_v_input(n, q, scales)
    assert validate_poisson_input(p) == []
    d = kantor_double(p, w)
    assert validate_double(d) == []


def test_double_of_zero_bracket_group_algebra():
    w = Window(1)
    base = virasoro_like_poisson(w)
    p = PoissonAlgebraInput("group-algebra", w, base.basis, base.product, {})
    d = kantor_double(p, w)
    assert validate_double(d) == []
    # odd-odd brackets carry the product
    assert d.brackets[(BasisKey("Ls", (0, 1), 1), BasisKey("Ls", (1, 0), 1))] == {
        L(1, 1): Fraction(1)
    }
    assert all(x.parity or y.parity for (x, y) in d.brackets)


def test_scaled_bracket_is_still_valid():
    w = Window(2)
    base = virasoro_like_poisson(w)
    lie = {
        pair: {k: Fraction(7, 3) * c for k, c in terms.items()}
        for pair, terms in base.lie.items()
    }
    p = PoissonAlgebraInput("scaled", w, base.basis, base.product, lie)
    assert validate_poisson_input(p) == []
    d = kantor_double(p, w, odd_family=LV_FAMILIES)
    assert validate_double(d) == []
    # det2-scaled mixed bracket
    assert d.brackets[(G(0, 1), L(1, 0))] == {G(1, 1): Fraction(7, 3) * det2((1, 0), (0, 1))}
