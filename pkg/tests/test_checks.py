"""Axiom verifiers: Jacobi brute force, grading, the generator relations, closure."""

from fractions import Fraction

import pytest

from khd import (
    G,
    L,
    Window,
    build_kantor_double_lv,
    build_virasoro_like,
    check_antisymmetry,
    check_grading,
    check_lemma31_relations,
    check_super_jacobi,
    span_closure,
)
from khd.algebra import SuperAlgebra, abelian_superalgebra
from khd.errors import WindowTooSmall


def _corrupt(alg, pair, terms):
    table = dict(alg.brackets)
    table[pair] = terms
    return SuperAlgebra(alg.name + "-corrupt", alg.window, alg.basis, table)


def test_jacobi_holds_at_n2(lv2):
    assert check_super_jacobi(lv2) == []


def test_jacobi_detects_corrupted_odd_pair(lv3):
    bad = _corrupt(lv3, (G(0, 1), G(1, 0)), {L(1, 1): Fraction(2)})
    violations = check_super_jacobi(bad)
    assert violations
    assert all(v.kind == "jacobi" and not v.residual.is_zero() for v in violations)


def test_jacobi_trivial_on_abelian():
    alg = abelian_superalgebra([L(1, 0), L(0, 1), G(1, 0)], Window(1))
    assert check_super_jacobi(alg) == []


def test_grading_clean_and_corrupted(lv2):
    assert check_grading(lv2) == []
    bad = _corrupt(lv2, (L(0, 1), L(1, 0)), {L(2, 2): Fraction(1)})
    violations = check_grading(bad)
    assert len(violations) == 1
    assert violations[0].kind == "grading"


def test_grading_empty_algebra():
    assert check_grading(abelian_superalgebra([], Window(1))) == []


def test_antisymmetry_storage(lv2):
    assert check_antisymmetry(lv2) == []
    bad = _corrupt(lv2, (L(1, 0), L(0, 1)), {L(1, 1): Fraction(1)})
    assert any(v.kind == "antisymmetry" for v in check_antisymmetry(bad))
    diag = _corrupt(lv2, (L(1, 0), L(1, 0)), {L(2, 0): Fraction(1)})
    assert any("self-bracket" in v.detail for v in check_antisymmetry(diag))


def test_lemma31_relations_hold(lv3):
    assert check_lemma31_relations(lv3) == []


def test_lemma31_missing_odd_family(v3):
    violations = check_lemma31_relations(v3)
    assert len(violations) == 8
    assert all(v.kind == "missing-key" for v in violations)


def test_lemma31_detects_wrong_constant(lv3):
    bad = _corrupt(lv3, (L(0, 1), L(1, 0)), {L(1, 1): Fraction(2)})
    violations = check_lemma31_relations(bad)
    assert violations
    assert all(v.kind == "relation" for v in violations)


def test_lemma31_needs_window_two():
    with pytest.raises(WindowTooSmall):
        check_lemma31_relations(build_kantor_double_lv(Window(1)))


GENERATORS = {L(0, 1), L(0, -1), L(1, 0), L(-1, 0), G(0, 1), G(0, -1), G(1, 0), G(-1, 0)}


def test_span_closure_reaches_inner_box(lv3):
    # at n=3 the generators already cover the full inner n=1 box
    reached = span_closure(lv3, GENERATORS, Window(1))
    assert reached == {k for k in lv3.basis if k.grade in Window(1)}


def test_span_closure_single_generator(lv3):
    assert span_closure(lv3, {L(1, 0)}, Window(2)) == {L(1, 0)}


def test_span_closure_empty(lv3):
    assert span_closure(lv3, set(), Window(2)) == set()


def test_span_closure_even_only(v3):
    reached = span_closure(v3, {L(0, 1), L(0, -1), L(1, 0), L(-1, 0)}, Window(1))
    assert reached == {k for k in v3.basis if k.grade in Window(1)}
