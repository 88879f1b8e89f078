"""Sparse Z^2-graded Lie superalgebras given by structure-constant tables.

The bracket table stores each unordered basis pair once, in canonical order
(sorted by (family, m1, m2)); the reversed orientation is derived from the
super-antisymmetry sign [y,x] = -(-1)^{|x||y|} [x,y], so antisymmetry holds
by construction.  Coefficients are exact rationals throughout; nothing in
this package ever rounds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple

from .errors import AmbiguousSlot, UnknownBasisKey
from .grades import Grade, Window, ZERO, add, det2

# Exact scalar type: reduced fraction, positive denominator, 0 == 0/1.
# fractions.Fraction maintains exactly these invariants.
Scalar = Fraction

EVEN = 0
ODD = 1

# Family tags of the hardcoded instance: L spans the even part, G the odd.
FAMILY_L = "L"
FAMILY_G = "G"


def parse_scalar(text: str) -> Scalar:
    """Parse a "p/q" or "p" string; tolerates a unicode minus sign."""
    return Fraction(text.strip().replace("−", "-"))


def format_scalar(value: Scalar) -> str:
    return str(value)


class BasisKey(NamedTuple):
    """Identifies one basis vector: family tag, Z^2 grade, parity bit.

    Tuple ordering gives the canonical (family, m1, m2) sort used for basis
    ordering and bracket-pair storage.
    """

    family: str
    grade: Grade
    parity: int

    @property
    def id(self) -> str:
        return f"{self.family}({self.grade[0]},{self.grade[1]})"

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return self.id


def L(m1: int, m2: int) -> BasisKey:
    return BasisKey(FAMILY_L, (m1, m2), EVEN)


def G(m1: int, m2: int) -> BasisKey:
    return BasisKey(FAMILY_G, (m1, m2), ODD)


Terms = dict[BasisKey, Scalar]


def _clean(terms: Mapping[BasisKey, Scalar]) -> Terms:
    return {k: Fraction(c) for k, c in terms.items() if c}


class Element:
    """A finite rational linear combination of basis vectors.

    Equality compares term maps only.  ``truncated`` records that building
    this element dropped terms whose grade left the window; such elements
    are only trusted where the caller's window filters make dropping
    impossible.
    """

    __slots__ = ("terms", "truncated")

    def __init__(self, terms: Mapping[BasisKey, Scalar] | None = None, truncated: bool = False):
        self.terms: Terms = _clean(terms or {})
        self.truncated = truncated

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "Element") -> "Element":
        terms = dict(self.terms)
        for k, c in other.terms.items():
            v = terms.get(k, 0) + c
            if v:
                terms[k] = v
            else:
                terms.pop(k, None)
        return Element(terms, self.truncated or other.truncated)

    def __neg__(self) -> "Element":
        return Element({k: -c for k, c in self.terms.items()}, self.truncated)

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, factor: Scalar) -> "Element":
        if not factor:
            return Element({}, self.truncated)
        return Element({k: c * factor for k, c in self.terms.items()}, self.truncated)

    def __rmul__(self, factor) -> "Element":
        return self.scale(Fraction(factor))

    def homogeneous_grade(self) -> Grade | None:
        """The common grade of all terms, or None if mixed/empty."""
        grades = {k.grade for k in self.terms}
        return grades.pop() if len(grades) == 1 else None

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = [f"{c}*{k.id}" for k, c in sorted(self.terms.items())]
        return " + ".join(parts).replace("+ -", "- ")


ZERO_ELEMENT = Element()


def element(*pairs: tuple[Scalar | int, BasisKey]) -> Element:
    """Convenience constructor: element((c1, k1), (c2, k2), ...)."""
    terms: Terms = {}
    for c, k in pairs:
        v = terms.get(k, 0) + Fraction(c)
        if v:
            terms[k] = v
        else:
            terms.pop(k, None)
    return Element(terms)


def orientation_sign(x: BasisKey, y: BasisKey) -> int:
    """Sign relating [x,y] to the stored [y,x]: -(-1)^{|x||y|}."""
    return 1 if (x.parity and y.parity) else -1


BracketTable = dict[tuple[BasisKey, BasisKey], Terms]


@dataclass(frozen=True)
class SuperAlgebra:
    """A windowed graded superalgebra defined by a sparse bracket table.

    ``brackets`` holds canonically ordered pairs only; every stored term has
    grade inside the window (out-of-window products were dropped when the
    table was built).  Immutable after construction; all operations on it
    are pure functions.
    """

    name: str
    window: Window
    basis: tuple[BasisKey, ...]
    brackets: BracketTable
    grading: str = "Z^2"
    _slots: dict[tuple[Grade, int], tuple[BasisKey, ...]] = field(
        init=False, repr=False, compare=False, default_factory=dict
    )

    def __post_init__(self):
        slots: dict[tuple[Grade, int], list[BasisKey]] = {}
        for k in self.basis:
            slots.setdefault((k.grade, k.parity), []).append(k)
        object.__setattr__(
            self, "_slots", {sk: tuple(ks) for sk, ks in slots.items()}
        )

    # -- lookups ----------------------------------------------------------

    @property
    def basis_set(self) -> frozenset[BasisKey]:
        return frozenset(self.basis)

    def slot(self, grade: Grade, parity: int) -> BasisKey | None:
        """The unique basis key at (grade, parity), or None.

        Raises AmbiguousSlot when several families occupy the slot; the
        homogeneous-map machinery requires one-dimensional slots.
        """
        keys = self._slots.get((grade, parity))
        if keys is None:
            return None
        if len(keys) > 1:
            raise AmbiguousSlot(f"several basis keys at grade {grade}, parity {parity}: {keys}")
        return keys[0]

    def pair_terms(self, x: BasisKey, y: BasisKey) -> tuple[Terms | None, int]:
        """Stored terms for [x,y] plus the orientation sign to apply.

        Returns (None, 1) when no entry is stored (zero or truncated).
        """
        e = self.brackets.get((x, y))
        if e is not None:
            return e, 1
        e = self.brackets.get((y, x))
        if e is not None:
            return e, orientation_sign(x, y)
        return None, 1

    def bracket_keys(self, x: BasisKey, y: BasisKey) -> Element:
        """Bracket of two basis vectors, with the truncation flag set."""
        if x not in self.basis_set:
            raise UnknownBasisKey(x.id)
        if y not in self.basis_set:
            raise UnknownBasisKey(y.id)
        truncated = not self.window.contains_or_zero(add(x.grade, y.grade))
        terms, sign = self.pair_terms(x, y)
        if terms is None:
            return Element({}, truncated)
        if sign == 1:
            return Element(dict(terms), truncated)
        return Element({k: -c for k, c in terms.items()}, truncated)

    def structure_equal(self, other: "SuperAlgebra") -> bool:
        """Same basis and identical structure-constant table (metadata ignored)."""
        return self.basis == other.basis and self.brackets == other.brackets


def bracket(alg: SuperAlgebra, x: Element, y: Element) -> Element:
    """Bilinear bracket of two elements.

    Terms whose grade leaves the window are dropped; the result's
    ``truncated`` flag records that this may have happened.  Raises
    UnknownBasisKey if an operand mentions a key outside the basis.
    """
    basis = alg.basis_set
    for k in (*x.terms, *y.terms):
        if k not in basis:
            raise UnknownBasisKey(k.id)
    out: Terms = {}
    truncated = x.truncated or y.truncated
    for kx, cx in x.terms.items():
        for ky, cy in y.terms.items():
            if not alg.window.contains_or_zero(add(kx.grade, ky.grade)):
                truncated = True
            terms, sign = alg.pair_terms(kx, ky)
            if terms is None:
                continue
            c = cx * cy * sign
            for kz, cz in terms.items():
                v = out.get(kz, 0) + c * cz
                if v:
                    out[kz] = v
                else:
                    out.pop(kz, None)
    return Element(out, truncated)


# -- hardcoded instances --------------------------------------------------


def _canonical_table(entries: Iterable[tuple[BasisKey, BasisKey, Terms]]) -> BracketTable:
    table: BracketTable = {}
    for x, y, terms in entries:
        if not terms:
            continue
        if (y, x) < (x, y):
            raise ValueError(f"non-canonical pair ({x.id}, {y.id})")
        table[(x, y)] = terms
    return table


def build_virasoro_like(w: Window) -> SuperAlgebra:
    """The even windowed algebra on L_m with [L_m, L_n] = det2(n, m) L_{m+n}.

    Products landing at the origin are zero by convention; products leaving
    the box are truncated away.
    """
    basis = tuple(sorted(L(*m) for m in w.grades()))
    entries = []
    for i, x in enumerate(basis):
        for y in basis[i + 1 :]:
            s = add(x.grade, y.grade)
            if s not in w:
                continue
            c = det2(y.grade, x.grade)
            if c:
                entries.append((x, y, {L(*s): c}))
    return SuperAlgebra(f"virasoro-like(n={w.n})", w, basis, _canonical_table(entries))


def build_kantor_double_lv(w: Window) -> SuperAlgebra:
    """The windowed Kantor double of the Virasoro-like algebra.

    Direct transcription of the three bracket families:

        [L_m, L_n] = det2(n, m) L_{m+n}
        [G_m, L_n] = det2(n, m) G_{m+n}        (equivalently [L_m, G_n])
        [G_m, G_n] = L_{m+n}

    This builder is the fixed oracle the generic double construction is
    validated against, so it writes every entry from the closed forms and
    shares no code with the generic constructor.
    """
    basis = tuple(sorted([*(L(*m) for m in w.grades()), *(G(*m) for m in w.grades())]))
    entries: list[tuple[BasisKey, BasisKey, Terms]] = []
    for m in w.grades():
        for n in w.grades():
            s = add(m, n)
            if s not in w:
                continue
            c = det2(n, m)
            if m < n:
                if c:
                    entries.append((L(*m), L(*n), {L(*s): c}))
            # mixed pairs: G-family keys sort before L, so (G_m, L_n) is
            # canonical for every m, n
            if c:
                entries.append((G(*m), L(*n), {G(*s): c}))
            if m <= n:
                entries.append((G(*m), G(*n), {L(*s): Fraction(1)}))
    return SuperAlgebra(f"kantor-double-lv(n={w.n})", w, basis, _canonical_table(entries))


def scaled(alg: SuperAlgebra, factor: Scalar) -> SuperAlgebra:
    """The same algebra with every structure constant multiplied by factor."""
    if not factor:
        raise ValueError("scaling factor must be nonzero")
    table = {
        pair: {k: c * factor for k, c in terms.items()}
        for pair, terms in alg.brackets.items()
    }
    return SuperAlgebra(f"{alg.name}*{factor}", alg.window, alg.basis, table, alg.grading)


def abelian_superalgebra(basis: Iterable[BasisKey], w: Window, name: str = "abelian") -> SuperAlgebra:
    """All brackets zero; handy as a degenerate test subject."""
    return SuperAlgebra(name, w, tuple(sorted(basis)), {})
