"""Z^2 grade arithmetic and the finite index windows used for truncation.

Grades are plain ``(m1, m2)`` integer tuples: they are hashed and compared
constantly in the bracket tables and constraint builders, so a bare tuple
beats any wrapper class.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

Grade = tuple[int, int]

ZERO: Grade = (0, 0)
E1: Grade = (1, 0)
E2: Grade = (0, 1)


def add(m: Grade, n: Grade) -> Grade:
    return (m[0] + n[0], m[1] + n[1])


def neg(m: Grade) -> Grade:
    return (-m[0], -m[1])


def det2(n: Grade, m: Grade) -> Fraction:
    """Oriented 2x2 determinant n1*m2 - n2*m1.

    This is the structure coefficient of the even bracket: the bracket of the
    basis vectors indexed by m and n (in that order) carries det2(n, m).
    Note the argument order; det2 is antisymmetric.
    """
    return Fraction(n[0] * m[1] - n[1] * m[0])


@dataclass(frozen=True)
class Window:
    """The index box B_n = {m in Z^2 : |m1| <= n, |m2| <= n, m != (0,0)}.

    All algebras in this package are truncations of infinite Z^2-graded
    algebras to such a box; the origin is excluded because the degree-(0,0)
    component is zero by convention.
    """

    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"window size must be >= 1, got {self.n}")

    def __contains__(self, m: Grade) -> bool:
        return m != ZERO and abs(m[0]) <= self.n and abs(m[1]) <= self.n

    def contains_or_zero(self, m: Grade) -> bool:
        """True when m is in the box or is the origin (the zero component)."""
        return m == ZERO or m in self

    def grades(self) -> Iterator[Grade]:
        """All box grades in lexicographic order."""
        for m1 in range(-self.n, self.n + 1):
            for m2 in range(-self.n, self.n + 1):
                if (m1, m2) != ZERO:
                    yield (m1, m2)

    def __len__(self) -> int:
        return (2 * self.n + 1) ** 2 - 1
