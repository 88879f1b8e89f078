"""Exact sparse elimination: nullspaces, reduced bases, determinism."""

import random
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from khd.linalg import RowSpace, independent_basis, nullspace, rank


def test_empty_system_full_kernel():
    basis = nullspace([], columns=["x", "y", "z"])
    assert len(basis) == 3
    assert basis == [{"x": 1}, {"y": 1}, {"z": 1}]


def test_single_difference_row():
    basis = nullspace([{"x": Fraction(1), "y": Fraction(-1)}], columns=["x", "y"])
    assert len(basis) == 1
    v = basis[0]
    assert v["x"] == v["y"] == 1


def test_case_with_rational_rows():
    rows = [
        {"x": Fraction(1, 2), "y": Fraction(1, 3)},
        {"y": Fraction(2), "z": Fraction(-1)},
    ]
    basis = nullspace(rows, columns=["x", "y", "z"])
    assert len(basis) == 1
    v = basis[0]
    for row in rows:
        assert sum(c * v.get(k, 0) for k, c in row.items()) == 0


def test_kernel_vectors_satisfy_rows_exactly():
    rng = random.Random(7)
    cols = list(range(6))
    rows = [
        {c: Fraction(rng.randint(-4, 4)) for c in rng.sample(cols, 3)}
        for _ in range(8)
    ]
    rows = [{c: v for c, v in r.items() if v} for r in rows]
    basis = nullspace(rows, cols)
    for v in basis:
        for row in rows:
            assert sum(c * v.get(k, 0) for k, c in row.items()) == 0


def test_kernel_basis_is_echelon_parameterized():
    # one vector per free column, unit there, zero at the other free columns
    rows = [{0: Fraction(1), 2: Fraction(3)}, {1: Fraction(2), 3: Fraction(-1)}]
    basis = nullspace(rows, [0, 1, 2, 3])
    assert len(basis) == 2
    free_cols = [2, 3]
    for v, f in zip(basis, free_cols):
        assert v[f] == 1
        for other in free_cols:
            if other != f:
                assert v.get(other, 0) == 0


def test_insertion_order_does_not_change_reduced_rows():
    rows = [
        {0: Fraction(2), 1: Fraction(4)},
        {1: Fraction(1), 2: Fraction(1)},
        {0: Fraction(1), 2: Fraction(-1)},
    ]
    a, b = RowSpace(), RowSpace()
    for r in rows:
        a.add(r)
    for r in reversed(rows):
        b.add(r)
    assert a.reduced_rows() == b.reduced_rows()


def test_contains():
    space = RowSpace()
    space.add({0: Fraction(1), 1: Fraction(1)})
    space.add({1: Fraction(1), 2: Fraction(1)})
    assert space.contains({0: Fraction(1), 2: Fraction(-1)})
    assert not space.contains({0: Fraction(1), 2: Fraction(1)})


def test_independent_basis_of_dependent_vectors():
    vecs = [
        {0: Fraction(1), 1: Fraction(2)},
        {0: Fraction(2), 1: Fraction(4)},
        {1: Fraction(1)},
    ]
    basis = independent_basis(vecs)
    assert len(basis) == 2
    assert rank(vecs) == 2


@st.composite
def known_rank_system(draw):
    ncols = draw(st.integers(2, 6))
    npiv = draw(st.integers(0, ncols))
    pivots = sorted(draw(st.permutations(range(ncols)))[:npiv])
    ref_rows = []
    for i, p in enumerate(pivots):
        row = {p: Fraction(draw(st.integers(1, 5)))}
        for c in range(p + 1, ncols):
            if c not in pivots[: i + 1]:
                v = draw(st.integers(-3, 3))
                if v:
                    row[c] = Fraction(v)
        ref_rows.append(row)
    # random integer combinations on top of the original rows keep the rank
    extra = []
    for _ in range(draw(st.integers(0, 3))):
        coeffs = [draw(st.integers(-2, 2)) for _ in ref_rows]
        combo: dict = {}
        for c0, row in zip(coeffs, ref_rows):
            for k, v in row.items():
                t = combo.get(k, 0) + c0 * v
                if t:
                    combo[k] = t
                else:
                    combo.pop(k, None)
        if combo:
            extra.append(combo)
    return ncols, npiv, ref_rows + extra


@settings(max_examples=80)
@given(known_rank_system())
def test_nullity_matches_constructed_rank(sys_):
    ncols, npiv, rows = sys_
    cols = list(range(ncols))
    basis = nullspace(rows, cols)
    assert len(basis) == ncols - npiv
    for v in basis:
        for row in rows:
            assert sum(c * v.get(k, 0) for k, c in row.items()) == 0
