"""The Kantor double of a windowed Poisson-algebra input.

Given an even algebra carrying a commutative associative product and a
compatible Lie bracket, the double lives on two copies of the basis - the
original even copy and an odd mirror - with

    [a, b]     = lie(a, b)
    [a, b^s]   = lie(a, b)^s
    [a^s, b^s] = a . b

and the remaining orientation fixed by super-antisymmetry.  This is the
specialization that reproduces the hardcoded Virasoro-like double exactly;
whether it coincides with the general double construction when the input
carries nonzero correction terms is deliberately out of scope (no such
input is considered here), and equality with the hardcoded instance is the
validation oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

from .algebra import (
    EVEN,
    FAMILY_G,
    FAMILY_L,
    ODD,
    BasisKey,
    BracketTable,
    L,
    SuperAlgebra,
    Terms,
)
from .checks import Violation, check_antisymmetry, check_grading, check_super_jacobi
from .errors import InvalidPoissonInput, WindowTooSmall
from .grades import Window, add, det2

PairTable = dict[tuple[BasisKey, BasisKey], Terms]

LV_ODD_FAMILY = {FAMILY_L: FAMILY_G}


@dataclass(frozen=True)
class PoissonAlgebraInput:
    """Even basis with a symmetric product table and an antisymmetric bracket.

    Both tables are stored on canonically ordered pairs; the product table
    may carry diagonal entries, the bracket table may not (an even
    self-bracket is zero over the rationals).
    """

    name: str
    window: Window
    basis: tuple[BasisKey, ...]
    product: PairTable
    lie: PairTable

    def product_terms(self, x: BasisKey, y: BasisKey) -> Terms:
        e = self.product.get((x, y)) or self.product.get((y, x))
        return e or {}

    def lie_terms(self, x: BasisKey, y: BasisKey) -> Terms:
        e = self.lie.get((x, y))
        if e is not None:
            return e
        e = self.lie.get((y, x))
        if e is not None:
            return {k: -c for k, c in e.items()}
        return {}


def virasoro_like_poisson(w: Window) -> PoissonAlgebraInput:
    """The motivating input: product L_m . L_n = L_{m+n}, bracket det2(n,m) L_{m+n}."""
    basis = tuple(sorted(L(*m) for m in w.grades()))
    product: PairTable = {}
    lie: PairTable = {}
    one = Fraction(1)
    for i, x in enumerate(basis):
        for y in basis[i:]:
            s = add(x.grade, y.grade)
            if s not in w:
                continue
            product[(x, y)] = {L(*s): one}
            if x != y:
                c = det2(y.grade, x.grade)
                if c:
                    lie[(x, y)] = {L(*s): c}
    return PoissonAlgebraInput(f"virasoro-like-poisson(n={w.n})", w, basis, product, lie)


def _table_violations(p: PoissonAlgebraInput) -> list[Violation]:
    violations = []
    basis = set(p.basis)
    for k in p.basis:
        if k.parity != EVEN:
            violations.append(Violation("parity", (k,), "Poisson input basis must be even"))
    for label, table in (("product", p.product), ("lie", p.lie)):
        for (x, y), terms in table.items():
            if (y, x) < (x, y):
                violations.append(Violation(label, (x, y), "pair stored out of canonical order"))
            if label == "lie" and x == y and terms:
                violations.append(Violation(label, (x, y), "nonzero self-bracket"))
            want = add(x.grade, y.grade)
            for k, c in terms.items():
                if k not in basis:
                    violations.append(Violation("unknown-key", (x, y, k), "term not in basis"))
                elif k.grade != want:
                    violations.append(
                        Violation("grading", (x, y, k), f"grade {k.grade} != {want}")
                    )
    return violations


def _mul(p: PoissonAlgebraInput, op, e: Terms, y: BasisKey, w: Window) -> Terms:
    """Extend op(., y) linearly to a term dict, truncation-aware callers only."""
    out: Terms = {}
    for k, c in e.items():
        for k2, c2 in op(k, y).items():
            v = out.get(k2, 0) + c * c2
            if v:
                out[k2] = v
            else:
                out.pop(k2, None)
    return out


def validate_poisson_input(p: PoissonAlgebraInput) -> list[Violation]:
    """All axiom checks for the input, on window-safe index ranges.

    Checks grading, commutativity/antisymmetry storage discipline,
    associativity of the product, the Jacobi identity of the bracket, and
    the Leibniz compatibility lie(x, y.z) = lie(x,y).z + y.lie(x,z); the
    last one is what makes the double a Lie superalgebra, so an input
    failing it is not accepted.
    """
    violations = _table_violations(p)
    if violations:
        return violations
    w = p.window
    keys = [k for k in p.basis if k.grade in w]

    def ok(g) -> bool:
        # in the box or at the origin, where both operations vanish by
        # convention (the degree-(0,0) component does not exist)
        return abs(g[0]) <= w.n and abs(g[1]) <= w.n

    for x in keys:
        for y in keys:
            gxy = add(x.grade, y.grade)
            if not ok(gxy):
                continue
            xy_prod = p.product_terms(x, y)
            xy_lie = p.lie_terms(x, y)
            for z in keys:
                gyz = add(y.grade, z.grade)
                if not ok(add(x.grade, z.grade)) or not ok(gyz):
                    continue
                if not ok(add(gxy, z.grade)):
                    continue
                # associativity: (x.y).z == x.(y.z), but only where neither
                # intermediate hits the origin - there the removed zero
                # component makes the convention non-associative by design
                if gxy in w and gyz in w:
                    lhs = _mul(p, p.product_terms, xy_prod, z, w)
                    rhs = _mul(p, lambda a, b: p.product_terms(b, a), p.product_terms(y, z), x, w)
                    if lhs != rhs:
                        violations.append(Violation("associativity", (x, y, z)))
                # Jacobi: [[x,y],z] + [[y,z],x] + [[z,x],y] == 0
                acc: Terms = {}
                for e, c in (
                    (_mul(p, p.lie_terms, xy_lie, z, w), 1),
                    (_mul(p, p.lie_terms, p.lie_terms(y, z), x, w), 1),
                    (_mul(p, p.lie_terms, p.lie_terms(z, x), y, w), 1),
                ):
                    for k, v in e.items():
                        t = acc.get(k, 0) + c * v
                        if t:
                            acc[k] = t
                        else:
                            del acc[k]
                if acc:
                    violations.append(Violation("jacobi", (x, y, z)))
                # Leibniz: lie(x, y.z) == lie(x,y).z + y.lie(x,z)
                lhs = _mul(p, lambda a, b: p.lie_terms(b, a), p.product_terms(y, z), x, w)
                r1 = _mul(p, p.product_terms, p.lie_terms(x, y), z, w)
                r2 = _mul(p, lambda a, b: p.product_terms(b, a), p.lie_terms(x, z), y, w)
                for k, v in r2.items():
                    t = r1.get(k, 0) + v
                    if t:
                        r1[k] = t
                    else:
                        del r1[k]
                if lhs != r1:
                    violations.append(Violation("leibniz", (x, y, z)))
    return violations


def kantor_double(
    p: PoissonAlgebraInput,
    w: Window,
    odd_family: Mapping[str, str] | None = None,
) -> SuperAlgebra:
    """Build the double on the even copy plus an odd mirror of the basis.

    ``odd_family`` names the mirrored families (default: append "s").
    Raises InvalidPoissonInput when the input fails its axiom checks.  A
    window smaller than the input's restricts basis and tables (dropping
    out-of-window terms); a larger one is an error.
    """
    if w.n > p.window.n:
        raise WindowTooSmall(f"double window {w.n} exceeds input window {p.window.n}")
    violations = validate_poisson_input(p)
    if violations:
        raise InvalidPoissonInput(violations)
    rename: Callable[[str], str]
    if odd_family is None:
        rename = lambda f: f + "s"
    else:
        rename = lambda f: odd_family[f]

    def mirror_key(k: BasisKey) -> BasisKey:
        return BasisKey(rename(k.family), k.grade, ODD)

    def mirror(terms: Terms) -> Terms:
        return {mirror_key(k): c for k, c in terms.items()}

    even = [k for k in p.basis if k.grade in w]
    odd = [mirror_key(k) for k in even]
    basis = tuple(sorted(even + odd))
    table: BracketTable = {}
    for i, a in enumerate(even):
        for b in even[i:]:
            if add(a.grade, b.grade) not in w:
                continue  # zero by convention or truncated away
            lie = p.lie_terms(a, b)
            if lie and a != b:
                table[_canon(a, b)] = dict(lie)
            prod = p.product_terms(a, b)
            if prod:
                table[_canon(mirror_key(a), mirror_key(b))] = dict(prod)
        for b in even:
            if add(a.grade, b.grade) not in w:
                continue
            # [a, b^s] = lie(a, b)^s; store under canonical orientation
            lie = p.lie_terms(a, b)
            if not lie:
                continue
            bs = mirror_key(b)
            if a <= bs:
                table[(a, bs)] = mirror(lie)
            else:
                # [b^s, a] = -(-1)^{1*0} [a, b^s] = -lie(a,b)^s
                table[(bs, a)] = {k: -c for k, c in mirror(lie).items()}
    return SuperAlgebra(f"kantor-double({p.name})", w, basis, table)


def _canon(x: BasisKey, y: BasisKey) -> tuple[BasisKey, BasisKey]:
    return (x, y) if x <= y else (y, x)


def validate_double(d: SuperAlgebra, w: Window | None = None) -> list[Violation]:
    """Grading, antisymmetry storage, and brute-force super-Jacobi on the double."""
    return [
        *check_grading(d),
        *check_antisymmetry(d),
        *check_super_jacobi(d, w),
    ]
