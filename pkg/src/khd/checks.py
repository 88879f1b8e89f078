"""Axiom verifiers for windowed graded superalgebras.

Every verifier quantifies only over basis tuples whose pairwise and total
grade sums stay inside the window (or hit the origin, where everything is
zero), so truncation of the infinite algebra can never manufacture or mask
a violation.  All checks are exact and return lists of violations; an empty
list means the axiom holds on the verified range.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    BasisKey,
    Element,
    G,
    L,
    SuperAlgebra,
    Terms,
    bracket,
    orientation_sign,
)
from .errors import UnknownBasisKey, WindowTooSmall
from .grades import Window, add
from .linalg import RowSpace


@dataclass(frozen=True)
class Violation:
    kind: str
    subject: tuple[BasisKey, ...]
    detail: str = ""
    residual: Element | None = None

    def __str__(self) -> str:
        where = ", ".join(k.id for k in self.subject)
        tail = f": {self.detail}" if self.detail else ""
        res = f" residual {self.residual!r}" if self.residual is not None else ""
        return f"[{self.kind}] ({where}){tail}{res}"

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "subject": [k.id for k in self.subject]}
        if self.detail:
            out["detail"] = self.detail
        if self.residual is not None:
            out["residual"] = [
                {"key": k.id, "coeff": str(c)} for k, c in sorted(self.residual.terms.items())
            ]
        return out


def check_grading(alg: SuperAlgebra) -> list[Violation]:
    """Grade and parity additivity of every stored bracket term."""
    violations = []
    basis = alg.basis_set
    for (x, y), terms in alg.brackets.items():
        want_grade = add(x.grade, y.grade)
        want_parity = x.parity ^ y.parity
        for k in terms:
            if k not in basis:
                violations.append(Violation("unknown-key", (x, y, k), f"term {k.id} not in basis"))
            if k.grade != want_grade:
                violations.append(
                    Violation("grading", (x, y, k), f"grade {k.grade} != {want_grade}")
                )
            if k.parity != want_parity:
                violations.append(
                    Violation("grading", (x, y, k), f"parity {k.parity} != {want_parity}")
                )
    return violations


def check_antisymmetry(alg: SuperAlgebra) -> list[Violation]:
    """Storage discipline that makes super-antisymmetry structural.

    Pairs must be canonically ordered and an even key must not have a
    nonzero self-bracket (over the rationals [x,x] = 0 when |x| is even).
    """
    violations = []
    for (x, y), terms in alg.brackets.items():
        if (y, x) < (x, y):
            violations.append(Violation("antisymmetry", (x, y), "pair stored out of canonical order"))
        if x == y and x.parity == 0 and terms:
            violations.append(Violation("antisymmetry", (x, y), "nonzero even self-bracket"))
    return violations


def check_super_jacobi(alg: SuperAlgebra, w: Window | None = None) -> list[Violation]:
    """Brute-force graded Jacobi identity over all safe ordered triples.

    A triple (x,y,z) is checked when the grades of x, y, z, all pairwise
    sums, and the triple sum lie in the box or at the origin; on that range
    no intermediate bracket can have been truncated.  The residual

        [x,[y,z]] - [[x,y],z] - (-1)^{|x||y|} [y,[x,z]]

    must vanish identically.
    """
    w = w or alg.window
    keys = [k for k in alg.basis if k.grade in w]
    table = alg.brackets
    n = w.n

    def ok(g) -> bool:
        # inside the box or exactly at the origin (the zero component)
        return abs(g[0]) <= n and abs(g[1]) <= n

    def pair(a: BasisKey, b: BasisKey):
        e = table.get((a, b))
        if e is not None:
            return e, 1
        e = table.get((b, a))
        if e is not None:
            return e, orientation_sign(a, b)
        return None, 1

    def acc(out: dict, a: BasisKey, terms: Terms, sign) -> None:
        # out += sign * [a, terms]
        for k, c in terms.items():
            e, s = pair(a, k)
            if e is None:
                continue
            cs = sign * s * c
            for k2, c2 in e.items():
                v = out.get(k2, 0) + cs * c2
                if v:
                    out[k2] = v
                else:
                    del out[k2]

    def acc_right(out: dict, terms: Terms, yk: BasisKey, sign) -> None:
        # out += sign * [terms, yk]
        for k, c in terms.items():
            e, s = pair(k, yk)
            if e is None:
                continue
            cs = sign * s * c
            for k2, c2 in e.items():
                v = out.get(k2, 0) + cs * c2
                if v:
                    out[k2] = v
                else:
                    del out[k2]

    violations = []
    for x in keys:
        gx = x.grade
        for y in keys:
            gy = y.grade
            gxy = (gx[0] + gy[0], gx[1] + gy[1])
            if not ok(gxy):
                continue
            sxy = -1 if (x.parity and y.parity) else 1
            exy, s_xy = pair(x, y)
            for z in keys:
                gz = z.grade
                if not ok((gx[0] + gz[0], gx[1] + gz[1])):
                    continue
                if not ok((gy[0] + gz[0], gy[1] + gz[1])):
                    continue
                if not ok((gxy[0] + gz[0], gxy[1] + gz[1])):
                    continue
                residual: dict = {}
                eyz, s1 = pair(y, z)
                if eyz is not None:
                    acc(residual, x, eyz, s1)
                if exy is not None:
                    acc_right(residual, exy, z, -s_xy)
                exz, s3 = pair(x, z)
                if exz is not None:
                    acc(residual, y, exz, -sxy * s3)
                if residual:
                    violations.append(
                        Violation("jacobi", (x, y, z), residual=Element(residual))
                    )
    return violations


# The fourteen generator relations: six vanishing brackets and eight nested
# identities pinning the action of [L_{e1±}, L_{e2±}] on the generators.
_VANISHING = [
    (L(1, 0), L(-1, 0)),
    (L(0, 1), L(0, -1)),
    (L(1, 0), G(-1, 0)),
    (L(0, 1), G(0, -1)),
    (L(-1, 0), G(1, 0)),
    (L(0, -1), G(0, 1)),
]

_NESTED = [
    ((L(1, 0), L(0, 1)), L(-1, 0), L(0, 1)),
    ((L(1, 0), L(0, -1)), L(-1, 0), L(0, -1)),
    ((L(0, 1), L(1, 0)), L(0, -1), L(1, 0)),
    ((L(0, 1), L(-1, 0)), L(0, -1), L(-1, 0)),
    ((L(1, 0), L(0, 1)), G(-1, 0), G(0, 1)),
    ((L(1, 0), L(0, -1)), G(-1, 0), G(0, -1)),
    ((L(0, 1), L(1, 0)), G(0, -1), G(1, 0)),
    ((L(0, 1), L(-1, 0)), G(0, -1), G(-1, 0)),
]


def check_lemma31_relations(alg: SuperAlgebra) -> list[Violation]:
    """The fourteen defining relations among the eight window-1 generators.

    Keys missing from the basis (e.g. the odd family on an even-only
    algebra) are reported as missing-key violations rather than raised.
    """
    if alg.window.n < 2:
        raise WindowTooSmall("relation check needs a window of size >= 2")
    violations = []
    for x, y in _VANISHING:
        try:
            value = alg.bracket_keys(x, y)
        except UnknownBasisKey as exc:
            violations.append(Violation("missing-key", (x, y), str(exc)))
            continue
        if not value.is_zero():
            violations.append(Violation("relation", (x, y), "expected zero", value))
    one = Fraction(1)
    for (a, b), c, expected in _NESTED:
        try:
            inner = alg.bracket_keys(a, b)
            value = bracket(alg, inner, Element({c: one}))
        except UnknownBasisKey as exc:
            violations.append(Violation("missing-key", (a, b, c), str(exc)))
            continue
        want = Element({expected: one})
        if value != want:
            violations.append(
                Violation("relation", (a, b, c), f"expected {want!r}", value - want)
            )
    return violations


def span_closure(
    alg: SuperAlgebra, generators: set[BasisKey], w_inner: Window
) -> set[BasisKey]:
    """Inner-window basis keys lying in the bracket closure of the generators.

    Iterates subspace + [subspace, subspace] to a fixpoint inside the
    algebra's own window (truncation applies, so this is a desk-scale
    generation check, not a proof), then reports which inner-box unit
    vectors the closure contains.
    """
    for g in generators:
        if g not in alg.basis_set:
            raise UnknownBasisKey(g.id)
    space = RowSpace()
    vectors: list[dict[BasisKey, Fraction]] = []
    for g in sorted(generators):
        if space.add({g: Fraction(1)}):
            vectors.append({g: Fraction(1)})
    frontier = list(vectors)
    while frontier:
        new_vectors = []
        known = list(vectors)
        for u in frontier:
            for v in known:
                for uv in (_bracket_rows(alg, u, v), _bracket_rows(alg, v, u)):
                    if uv and space.add(uv):
                        new_vectors.append(uv)
        vectors.extend(new_vectors)
        frontier = new_vectors
    return {
        k
        for k in alg.basis
        if k.grade in w_inner and space.contains({k: Fraction(1)})
    }


def _bracket_rows(alg: SuperAlgebra, u: dict, v: dict) -> dict:
    out: dict = {}
    for ku, cu in u.items():
        for kv, cv in v.items():
            terms, sign = alg.pair_terms(ku, kv)
            if terms is None:
                continue
            c = cu * cv * sign
            for k, cz in terms.items():
                val = out.get(k, 0) + c * cz
                if val:
                    out[k] = val
                else:
                    del out[k]
    return out
