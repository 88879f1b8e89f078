"""Transposed Poisson superalgebra axioms and triviality classification.

A candidate product is a supercommutative bilinear operation on the same
basis as a Lie superalgebra.  Three axioms are verified exactly on every
window-safe tuple: supercommutativity, associativity, and the transposed
Leibniz rule

    z . [x,y] = 1/2 ([z.x, y] + (-1)^{|x||z|} [x, z.y]).

The Leibniz rule is also checked by the dual route: the left multiplication
by each basis vector must be a 1/2-superderivation.  Both routes must agree
pair for pair; the checker enforces that internally.

The positive classification verdict is deliberately worded "desk-scale":
the window only certifies the kernel dimensions it saw, never the infinite
algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    EVEN,
    FAMILY_L,
    BasisKey,
    Element,
    L,
    SuperAlgebra,
    Terms,
    bracket,
)
from .checks import Violation
from .errors import NonHomogeneousProduct, ReportMismatch
from .grades import Grade, Window, ZERO, add
from .solver import (
    DerivationReport,
    HomogeneousMap,
    is_delta_superderivation,
)

HALF = Fraction(1, 2)

TRIVIAL_VERDICT = "all TPS trivial (desk-scale)"
INCONCLUSIVE_VERDICT = "inconclusive"


def _product_sign(x: BasisKey, y: BasisKey) -> int:
    """Supercommutativity sign: x.y = (-1)^{|x||y|} y.x."""
    return -1 if (x.parity and y.parity) else 1


@dataclass(frozen=True)
class ProductCandidate:
    """A sparse bilinear product stored on canonical pairs.

    ``raw_entries`` keeps the entries exactly as ingested (possibly doubled
    or non-canonical); the supercommutativity check audits them against the
    canonical table, which downstream operations use exclusively.
    """

    name: str
    window: Window
    basis: tuple[BasisKey, ...]
    terms: dict[tuple[BasisKey, BasisKey], Terms]
    raw_entries: tuple[tuple[BasisKey, BasisKey, Terms], ...]

    @classmethod
    def from_entries(
        cls,
        name: str,
        window: Window,
        basis: tuple[BasisKey, ...],
        entries: list[tuple[BasisKey, BasisKey, Terms]],
    ) -> "ProductCandidate":
        table: dict[tuple[BasisKey, BasisKey], Terms] = {}
        for x, y, terms in entries:
            if not terms:
                continue
            if (x, y) <= (y, x):
                key, value = (x, y), dict(terms)
            else:
                sign = _product_sign(x, y)
                key, value = (y, x), {k: sign * c for k, c in terms.items()}
            table.setdefault(key, value)  # first entry wins; audits catch conflicts
        return cls(name, window, tuple(basis), table, tuple((x, y, dict(t)) for x, y, t in entries))

    def product_terms(self, x: BasisKey, y: BasisKey) -> Terms:
        e = self.terms.get((x, y))
        if e is not None:
            return e
        e = self.terms.get((y, x))
        if e is not None:
            sign = _product_sign(x, y)
            return {k: sign * c for k, c in e.items()}
        return {}

    def product(self, x: BasisKey, y: BasisKey) -> Element:
        return Element(self.product_terms(x, y))


def zero_product(alg: SuperAlgebra, name: str = "zero-product") -> ProductCandidate:
    return ProductCandidate.from_entries(name, alg.window, alg.basis, [])


def lv_poisson_product(alg: SuperAlgebra, name: str = "lv-product") -> ProductCandidate:
    """The even product L_m . L_n = L_{m+n} restricted to the algebra's window.

    This is the product making the even part a Poisson algebra; it is the
    standing example of a product that passes supercommutativity and
    associativity yet fails the transposed Leibniz rule.
    """
    w = alg.window
    evens = sorted(k for k in alg.basis if k.family == FAMILY_L)
    one = Fraction(1)
    entries = []
    for i, x in enumerate(evens):
        for y in evens[i:]:
            s = add(x.grade, y.grade)
            if s in w:
                entries.append((x, y, {L(*s): one}))
    return ProductCandidate.from_entries(name, w, alg.basis, entries)


def check_supercommutative(p: ProductCandidate, w: Window | None = None) -> list[Violation]:
    """Audit every ingested entry against the canonical table's sign rule."""
    violations = []
    basis = set(p.basis)
    for x, y, terms in p.raw_entries:
        if x not in basis or y not in basis:
            violations.append(Violation("unknown-key", (x, y), "pair outside basis"))
            continue
        expected = p.product_terms(x, y)
        if terms != expected:
            violations.append(
                Violation(
                    "supercommutativity",
                    (x, y),
                    "entry conflicts with the sign rule",
                    Element(terms) - Element(expected),
                )
            )
    return violations


def check_grade_additive(p: ProductCandidate) -> list[Violation]:
    violations = []
    basis = set(p.basis)
    for (x, y), terms in p.terms.items():
        want = add(x.grade, y.grade)
        want_parity = x.parity ^ y.parity
        for k in terms:
            if k not in basis:
                violations.append(Violation("unknown-key", (x, y, k), "term not in basis"))
            elif k.grade != want or k.parity != want_parity:
                violations.append(
                    Violation("grading", (x, y, k), f"term at {k.grade}/{k.parity}, want {want}/{want_parity}")
                )
    return violations


def _mul_elem(p: ProductCandidate, e: Element, y: BasisKey, right: bool) -> Element:
    out: Terms = {}
    for k, c in e.terms.items():
        terms = p.product_terms(k, y) if right else p.product_terms(y, k)
        for k2, c2 in terms.items():
            v = out.get(k2, 0) + c * c2
            if v:
                out[k2] = v
            else:
                del out[k2]
    return Element(out)


def check_associative(p: ProductCandidate, w: Window | None = None) -> list[Violation]:
    """(x.y).z == x.(y.z) on all triples whose intermediate grades stay inside.

    Intermediate grades must lie strictly inside the box: a triple whose
    intermediate product lands on the removed origin component is skipped,
    since the zero-by-convention component makes such triples vacuously
    non-associative for any grade-additive product.
    """
    w = w or p.window
    keys = [k for k in p.basis if k.grade in w]
    n = w.n

    def ok(g) -> bool:
        return abs(g[0]) <= n and abs(g[1]) <= n

    violations = []
    for x in keys:
        for y in keys:
            gxy = add(x.grade, y.grade)
            if gxy not in w:
                continue
            xy = p.product(x, y)
            for z in keys:
                if add(y.grade, z.grade) not in w or not ok(add(gxy, z.grade)):
                    continue
                lhs = _mul_elem(p, xy, z, right=True)
                rhs = _mul_elem(p, p.product(y, z), x, right=False)
                if lhs != rhs:
                    violations.append(
                        Violation("associativity", (x, y, z), residual=lhs - rhs)
                    )
    return violations


def check_transposed_leibniz(
    p: ProductCandidate, alg: SuperAlgebra, w: Window | None = None
) -> list[Violation]:
    """The compatibility axiom, tested on every window-safe triple (z, x, y).

    Safe means the grades of [x,y], z.x, z.y and z.[x,y] all stay in the
    box (or hit the origin), so neither operation was truncated.
    """
    w = w or alg.window
    keys = sorted(k for k in alg.basis if k.grade in w)
    n = w.n

    def ok(g) -> bool:
        return abs(g[0]) <= n and abs(g[1]) <= n

    violations = []
    one = Fraction(1)
    for z in keys:
        gz = z.grade
        for x in keys:
            if not ok(add(gz, x.grade)):
                continue
            for y in keys:
                gxy = add(x.grade, y.grade)
                if not ok(gxy) or not ok(add(gz, y.grade)) or not ok(add(gz, gxy)):
                    continue
                lhs = _mul_elem(p, alg.bracket_keys(x, y), z, right=False)
                eps = -1 if (x.parity and z.parity) else 1
                rhs = (
                    bracket(alg, p.product(z, x), Element({y: one}))
                    + bracket(alg, Element({x: one}), p.product(z, y)).scale(eps)
                ).scale(HALF)
                residual = lhs - rhs
                if not residual.is_zero():
                    violations.append(
                        Violation("transposed-leibniz", (z, x, y), residual=residual)
                    )
    return violations


def left_multiplication(p: ProductCandidate, z: BasisKey, w: Window | None = None) -> HomogeneousMap:
    """The map x -> z.x packaged as a homogeneous map of degree grade(z).

    Raises NonHomogeneousProduct when some z.x is not a single term in the
    forced (grade, parity) slot.
    """
    w = w or p.window
    coeffs: dict[BasisKey, Fraction] = {}
    for x in p.basis:
        if x.grade not in w:
            continue
        terms = p.product_terms(z, x)
        if not terms:
            continue
        target = add(z.grade, x.grade)
        want_parity = z.parity ^ x.parity
        if len(terms) > 1:
            raise NonHomogeneousProduct(f"{z.id}.{x.id} has {len(terms)} terms")
        k, c = next(iter(terms.items()))
        if k.grade != target or k.parity != want_parity:
            raise NonHomogeneousProduct(
                f"{z.id}.{x.id} lands at {k.id}, outside the forced slot"
            )
        coeffs[x] = c
    return HomogeneousMap(z.grade, z.parity, coeffs)


def check_lemma_b(
    p: ProductCandidate, alg: SuperAlgebra, w: Window | None = None
) -> list[Violation]:
    """Leibniz via left multiplications: every L_z must be a 1/2-superderivation.

    Runs the direct transposed-Leibniz check as well and insists the two
    routes agree; a disagreement would mean an internal inconsistency, not
    a property of the candidate.
    """
    w = w or alg.window
    violations = []
    for z in sorted(p.basis):
        if z.grade not in w:
            continue
        lm = left_multiplication(p, z, w)
        for v in is_delta_superderivation(alg, lm, HALF, w):
            violations.append(
                Violation("lemma-b", (z, *v.subject), v.detail, v.residual)
            )
    direct = check_transposed_leibniz(p, alg, w)
    if bool(direct) != bool(violations):
        raise RuntimeError(
            "internal error: left-multiplication and direct Leibniz checks disagree"
        )
    return violations


@dataclass(frozen=True)
class TpsClassification:
    verdict: str
    offending: tuple[tuple[Grade, int], ...]

    @property
    def trivial(self) -> bool:
        return self.verdict == TRIVIAL_VERDICT

    def __str__(self) -> str:
        if self.trivial:
            return self.verdict
        cells = ", ".join(f"degree {d} parity {p}" for d, p in self.offending)
        return f"{self.verdict} (offending cells: {cells})"


def classify_tps(alg: SuperAlgebra, report: DerivationReport) -> TpsClassification:
    """Triviality verdict from the half-superderivation report.

    Positive exactly when every odd projected dimension vanishes and the
    only even kernel is the identity line at degree (0,0): then every
    transposed Poisson product's left multiplications are scalar multiples
    of the identity on the window, which forces the trivial product.  The
    verdict never claims more than the windowed evidence.
    """
    if report.algebra != alg.name:
        raise ReportMismatch(
            f"report for {report.algebra!r} used with algebra {alg.name!r}"
        )
    if report.delta != HALF:
        raise ReportMismatch(f"classification needs delta=1/2, report has {report.delta}")
    if report.outer > alg.window.n:
        raise ReportMismatch(
            f"report outer window {report.outer} exceeds algebra window {alg.window.n}"
        )
    offending = []
    for cell in report.cells:
        if cell.parity == EVEN and cell.degree == ZERO:
            if not (cell.projected_dim == 1 and cell.identity_detected):
                offending.append((cell.degree, cell.parity))
        elif cell.projected_dim != 0:
            offending.append((cell.degree, cell.parity))
    if offending:
        return TpsClassification(INCONCLUSIVE_VERDICT, tuple(offending))
    return TpsClassification(TRIVIAL_VERDICT, ())
