"""Degree-by-degree computation of delta-superderivation spaces.

A homogeneous map of degree i and fixed parity is determined by one rational
coefficient per source basis key (the image key is forced by grading and
parity, provided each (grade, parity) slot of the basis is at most
one-dimensional).  For every canonically ordered basis pair the defining
identity

    phi([x,y]) = delta * ([phi(x), y] + (-1)^{|phi||x|} [x, phi(y)])

is one scalar equation in those coefficients, because all three terms live
in the same one-dimensional slot.  The builder emits exactly the rows whose
coefficients are fully representable inside the window:

  * pairs whose bracket grade m+n leaves the box are not enumerated;
  * rows touching a coefficient whose image grade m+i, n+i or m+n+i leaves
    the box (without hitting the origin) are dropped entirely - keeping
    them would silently assume the missing coefficient is zero;
  * image grades at the origin contribute nothing, since the degree-(0,0)
    component of the algebra is zero.

Every emitted row is therefore a true constraint of the untruncated
algebra, so the windowed kernel can only be too large, never too small.
Reported dimensions are taken after projecting the kernel to an inner
window whose coefficients have their full constraint neighborhood inside
the outer window; that projection is this artifact's own soundness device
for reproducing statements about the infinite algebra at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .algebra import (
    EVEN,
    ODD,
    BasisKey,
    Element,
    Scalar,
    SuperAlgebra,
    ZERO_ELEMENT,
    bracket,
)
from .checks import Violation
from .errors import WindowTooSmall
from .grades import Grade, Window, ZERO, add, det2

HALF = Fraction(1, 2)

# An unknown is the coefficient attached to one source basis key.
UnknownId = tuple[str, Grade]


@dataclass(frozen=True)
class HomogeneousMap:
    """A grade-degree-i, fixed-parity linear map given by source coefficients.

    ``coeffs[k]`` scales the unique basis key of matching parity at grade
    ``k.grade + degree``; keys with no stored coefficient map to zero.
    """

    degree: Grade
    parity: int
    coeffs: dict[BasisKey, Scalar]

    def coefficient(self, key: BasisKey) -> Scalar:
        return self.coeffs.get(key, Fraction(0))

    def apply_key(self, alg: SuperAlgebra, key: BasisKey) -> Element:
        c = self.coeffs.get(key)
        if not c:
            return ZERO_ELEMENT
        g = add(key.grade, self.degree)
        if g == ZERO:
            return ZERO_ELEMENT
        img = alg.slot(g, key.parity ^ self.parity)
        if img is None:
            return ZERO_ELEMENT
        return Element({img: c})

    def apply(self, alg: SuperAlgebra, e: Element) -> Element:
        out = ZERO_ELEMENT
        for k, c in e.terms.items():
            out = out + self.apply_key(alg, k).scale(c)
        return out


def identity_map(alg: SuperAlgebra) -> HomogeneousMap:
    return HomogeneousMap(ZERO, EVEN, {k: Fraction(1) for k in alg.basis})


def adjoint_pattern_map(alg: SuperAlgebra, degree: Grade) -> HomogeneousMap:
    """The even degree-i map with coefficient det2(m, i) on every key.

    This is the coefficient pattern of the adjoint action of the even
    generator at grade i; it is an ordinary (delta = 1) superderivation
    wherever the window permits checking.
    """
    coeffs = {}
    for k in alg.basis:
        c = det2(k.grade, degree)
        if c:
            coeffs[k] = c
    return HomogeneousMap(degree, EVEN, coeffs)


@dataclass(frozen=True)
class ConstraintRow:
    coeffs: dict[UnknownId, Scalar]
    pair: tuple[BasisKey, BasisKey]


@dataclass(frozen=True)
class ConstraintSystem:
    algebra: str
    degree: Grade
    parity: int
    delta: Scalar
    window: Window
    columns: tuple[UnknownId, ...]
    rows: tuple[ConstraintRow, ...]
    source_keys: dict[UnknownId, BasisKey]

    def rows_for_pair(self, x: BasisKey, y: BasisKey) -> list[ConstraintRow]:
        return [r for r in self.rows if r.pair == (x, y)]


def _pair_filter(w: Window, degree: Grade, m: Grade, n: Grade):
    """Classify the pair: ("skip" | "vacuous" | result grade)."""
    gmn = add(m, n)
    if not w.contains_or_zero(gmn):
        return "skip"
    s = add(gmn, degree)
    if s == ZERO:
        return "vacuous"
    if s not in w:
        return "skip"
    if not w.contains_or_zero(add(m, degree)):
        return "skip"
    if not w.contains_or_zero(add(n, degree)):
        return "skip"
    return s


def build_constraints(
    alg: SuperAlgebra,
    degree: Grade,
    parity: int,
    delta: Scalar,
    w: Window,
) -> ConstraintSystem:
    """Assemble the linear system cutting out the degree-i, given-parity maps."""
    if w.n > alg.window.n:
        raise WindowTooSmall(
            f"constraint window n={w.n} exceeds algebra window n={alg.window.n}"
        )
    delta = Fraction(delta)
    keys = sorted(k for k in alg.basis if k.grade in w)

    columns: list[UnknownId] = []
    source_keys: dict[UnknownId, BasisKey] = {}
    for k in keys:
        img = add(k.grade, degree)
        if img in w and alg.slot(img, k.parity ^ parity) is not None:
            u = (k.family, k.grade)
            columns.append(u)
            source_keys[u] = k

    rows: list[ConstraintRow] = []
    for i, x in enumerate(keys):
        for y in keys[i:]:
            s = _pair_filter(w, degree, x.grade, y.grade)
            if isinstance(s, str):
                continue
            row = _pair_row(alg, x, y, s, degree, parity, delta)
            if row:
                rows.append(ConstraintRow(row, (x, y)))
    return ConstraintSystem(
        alg.name, degree, parity, delta, w, tuple(columns), tuple(rows), source_keys
    )


def _pair_row(
    alg: SuperAlgebra,
    x: BasisKey,
    y: BasisKey,
    s: Grade,
    degree: Grade,
    parity: int,
    delta: Scalar,
) -> dict[UnknownId, Scalar]:
    """Coefficient row of the defining identity on (x, y) at the result slot.

    The pair has already passed the representability filter; the caller
    guarantees the result grade s is inside the window.
    """
    # the one-dimensional slot all three terms land in (raises on ambiguity)
    if alg.slot(s, x.parity ^ y.parity ^ parity) is None:
        return {}
    row: dict[UnknownId, Scalar] = {}

    def accumulate(u: UnknownId, value: Scalar) -> None:
        v = row.get(u, 0) + value
        if v:
            row[u] = v
        else:
            row.pop(u, None)

    # phi([x, y]): the pair is canonical, so the table entry is direct
    terms, _ = alg.pair_terms(x, y)
    if terms:
        for z, c in terms.items():
            if alg.slot(s, z.parity ^ parity) is not None:
                accumulate((z.family, z.grade), c)

    # -delta * [phi(x), y]  and  -delta * eps * [x, phi(y)]
    eps = -1 if (parity and x.parity) else 1
    _phi_bracket_side(alg, row, accumulate, x, y, degree, parity, -delta, left=True)
    _phi_bracket_side(alg, row, accumulate, y, x, degree, parity, -delta * eps, left=False)
    return row


def _phi_bracket_side(alg, row, accumulate, src, other, degree, parity, coeff, left):
    g = add(src.grade, degree)
    if g == ZERO:
        return  # phi(src) lands in the zero component
    img = alg.slot(g, src.parity ^ parity)
    if img is None:
        return  # image slot is zero-dimensional in this algebra
    a, b = (img, other) if left else (other, img)
    terms, sign = alg.pair_terms(a, b)
    if not terms:
        return
    u = (src.family, src.grade)
    for c in terms.values():
        accumulate(u, coeff * sign * c)


@dataclass(frozen=True)
class KernelBasis:
    """Exact nullspace basis of a constraint system.

    Vectors are sparse coefficient dicts over the column labels, in the
    reduced echelon parameterization (one vector per free column).
    """

    columns: tuple[UnknownId, ...]
    vectors: tuple[dict[UnknownId, Scalar], ...]
    degree: Grade
    parity: int
    window: Window

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    def maps(self, alg: SuperAlgebra) -> list[HomogeneousMap]:
        """Kernel vectors as homogeneous maps over the algebra's basis."""
        by_id = {(k.family, k.grade): k for k in alg.basis}
        out = []
        for vec in self.vectors:
            coeffs = {by_id[u]: c for u, c in vec.items()}
            out.append(HomogeneousMap(self.degree, self.parity, coeffs))
        return out


def solve_kernel(cs: ConstraintSystem) -> KernelBasis:
    """Exact rational nullspace of the system, deterministic in column order."""
    from .linalg import RowSpace, nullspace_of

    space = RowSpace()
    ncols = len(cs.columns)
    for row in cs.rows:
        space.add(row.coeffs)
        if space.rank == ncols:
            break
    vectors = tuple(nullspace_of(space, cs.columns))
    return KernelBasis(cs.columns, vectors, cs.degree, cs.parity, cs.window)


def project_inner(kb: KernelBasis, w_inner: Window) -> KernelBasis:
    """Restrict kernel vectors to inner-window unknowns and re-extract a basis.

    Coefficients living only on the outer boundary are truncation artifacts
    (their constraint neighborhoods are incomplete); the projected rank is
    the dimension actually reported.
    """
    from .linalg import independent_basis

    if w_inner.n >= kb.window.n:
        raise WindowTooSmall(
            f"inner window n={w_inner.n} must be smaller than the solve window n={kb.window.n}"
        )
    inner_cols = tuple(c for c in kb.columns if c[1] in w_inner)
    inner_set = set(inner_cols)
    restricted = []
    for vec in kb.vectors:
        r = {c: v for c, v in vec.items() if c in inner_set}
        if r:
            restricted.append(r)
    basis = tuple(independent_basis(restricted))
    return KernelBasis(inner_cols, basis, kb.degree, kb.parity, w_inner)


def is_delta_superderivation(
    alg: SuperAlgebra, m: HomogeneousMap, delta: Scalar, w: Window
) -> list[Violation]:
    """Directly test the defining identity of a delta-superderivation.

    Works through element-level brackets only, independent of the row
    builder, so it serves as the oracle for kernel vectors.  Pairs whose
    coefficients or brackets are not fully representable in the window are
    skipped, exactly mirroring the row builder's filter.
    """
    delta = Fraction(delta)
    keys = sorted(k for k in alg.basis if k.grade in w)
    one = Fraction(1)
    violations = []
    for i, x in enumerate(keys):
        ex = Element({x: one})
        for y in keys[i:]:
            s = _pair_filter(w, m.degree, x.grade, y.grade)
            if isinstance(s, str):
                continue
            lhs = m.apply(alg, alg.bracket_keys(x, y))
            eps = -1 if (m.parity and x.parity) else 1
            ey = Element({y: one})
            rhs = (
                bracket(alg, m.apply_key(alg, x), ey)
                + bracket(alg, ex, m.apply_key(alg, y)).scale(eps)
            ).scale(delta)
            residual = lhs - rhs
            if not residual.is_zero():
                violations.append(
                    Violation("half-derivation", (x, y), f"delta={delta}", residual)
                )
    return violations


@dataclass(frozen=True)
class CellResult:
    degree: Grade
    parity: int
    raw_dim: int
    projected_dim: int
    identity_detected: bool
    raw_kernel: KernelBasis
    projected_kernel: KernelBasis

    def to_json(self) -> dict:
        return {
            "degree": list(self.degree),
            "parity": self.parity,
            "raw_dim": self.raw_dim,
            "projected_dim": self.projected_dim,
            "identity_detected": self.identity_detected,
        }


@dataclass(frozen=True)
class DerivationReport:
    """Per-degree, per-parity kernel dimensions on the inner window."""

    algebra: str
    delta: Scalar
    outer: int
    inner: int
    degree_bound: int
    cells: tuple[CellResult, ...]

    def cell(self, degree: Grade, parity: int) -> CellResult:
        for c in self.cells:
            if c.degree == degree and c.parity == parity:
                return c
        raise KeyError((degree, parity))

    @property
    def identity_detected(self) -> bool:
        try:
            return self.cell(ZERO, EVEN).identity_detected
        except KeyError:
            return False

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra,
            "delta": str(self.delta),
            "outer": self.outer,
            "inner": self.inner,
            "degree_bound": self.degree_bound,
            "cells": [c.to_json() for c in self.cells],
        }


def _identity_pattern(kb: KernelBasis) -> bool:
    """True when the kernel is exactly the scalars of the identity pattern."""
    if kb.dimension != 1 or not kb.columns:
        return False
    vec = kb.vectors[0]
    values = {vec.get(c, Fraction(0)) for c in kb.columns}
    return len(values) == 1 and bool(next(iter(values)))


def solve_cell(
    alg: SuperAlgebra,
    degree: Grade,
    parity: int,
    delta: Scalar,
    w_outer: Window,
    w_inner: Window,
) -> CellResult:
    cs = build_constraints(alg, degree, parity, delta, w_outer)
    kb = solve_kernel(cs)
    pk = project_inner(kb, w_inner)
    ident = degree == ZERO and parity == EVEN and _identity_pattern(pk)
    return CellResult(degree, parity, kb.dimension, pk.dimension, ident, kb, pk)


_WORKER_STATE: dict = {}


def _init_worker(alg, delta, w_outer, w_inner) -> None:
    _WORKER_STATE["args"] = (alg, delta, w_outer, w_inner)


def _solve_cell_worker(cell: tuple[Grade, int]) -> CellResult:
    alg, delta, w_outer, w_inner = _WORKER_STATE["args"]
    degree, parity = cell
    return solve_cell(alg, degree, parity, delta, w_outer, w_inner)


def solve_half_superderivations(
    alg: SuperAlgebra,
    w_outer: Window,
    w_inner: Window,
    degree_bound: int,
    delta: Scalar = HALF,
    jobs: int = 1,
) -> DerivationReport:
    """Kernel dimensions for every degree |i1|,|i2| <= degree_bound and parity.

    Requires inner + degree_bound <= outer so that every inner coefficient
    has its image and constraint rows inside the outer window.  Cells are
    independent; with jobs > 1 they are solved in parallel processes and
    merged in deterministic degree order.
    """
    if degree_bound < 1:
        raise ValueError("degree bound must be a positive integer")
    if w_inner.n + degree_bound > w_outer.n:
        raise WindowTooSmall(
            f"inner window {w_inner.n} + degree bound {degree_bound} exceeds outer window {w_outer.n}"
        )
    if w_outer.n > alg.window.n:
        raise WindowTooSmall(
            f"outer window {w_outer.n} exceeds the algebra's window {alg.window.n}"
        )
    delta = Fraction(delta)
    degrees = [
        (i1, i2)
        for i1 in range(-degree_bound, degree_bound + 1)
        for i2 in range(-degree_bound, degree_bound + 1)
    ]
    tasks = [(d, p) for d in degrees for p in (EVEN, ODD)]
    if jobs > 1 and len(tasks) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(
            max_workers=jobs,
            initializer=_init_worker,
            initargs=(alg, delta, w_outer, w_inner),
        ) as pool:
            cells = list(pool.map(_solve_cell_worker, tasks, chunksize=1))
    else:
        cells = [solve_cell(alg, d, p, delta, w_outer, w_inner) for d, p in tasks]
    return DerivationReport(
        alg.name, delta, w_outer.n, w_inner.n, degree_bound, tuple(cells)
    )


def dump_matrix(cs: ConstraintSystem, path) -> None:
    """Write the system as sparse triplets: one "row col p/q" line per entry.

    Lines starting with '#' document the column labels and row provenance.
    """
    index = {u: j for j, u in enumerate(cs.columns)}
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# algebra {cs.algebra} degree {cs.degree} parity {cs.parity} delta {cs.delta}\n")
        for u, j in index.items():
            fh.write(f"# col {j} = {u[0]}({u[1][0]},{u[1][1]})\n")
        for r, row in enumerate(cs.rows):
            fh.write(f"# row {r} from pair ({row.pair[0].id}, {row.pair[1].id})\n")
            for u in sorted(row.coeffs, key=index.__getitem__):
                fh.write(f"{r} {index[u]} {row.coeffs[u]}\n")
