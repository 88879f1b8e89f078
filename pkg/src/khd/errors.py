"""Exception types shared across the package."""


class KhdError(Exception):
    """Base class for all errors raised by this package."""


class UnknownBasisKey(KhdError):
    """An element refers to a basis key the algebra does not contain."""


class InvalidPoissonInput(KhdError):
    """A Poisson-algebra input failed one of its axiom checks."""

    def __init__(self, violations):
        self.violations = list(violations)
        heads = "; ".join(str(v) for v in self.violations[:3])
        more = "" if len(self.violations) <= 3 else f" (+{len(self.violations) - 3} more)"
        super().__init__(f"invalid Poisson input: {heads}{more}")


class NonHomogeneousProduct(KhdError):
    """A product's left multiplication cannot be written as a single-slot grade shift."""


class WindowTooSmall(KhdError):
    """A window does not satisfy the preconditions of the requested computation."""


class ReportMismatch(KhdError):
    """A derivation report does not belong to the algebra it is being used with."""


class AmbiguousSlot(KhdError):
    """The algebra has more than one basis key at a (grade, parity) slot.

    The homogeneous-map ansatz (one coefficient per source key, one image key
    per slot) only makes sense when each slot is at most one-dimensional.
    """


class AlgebraFormatError(KhdError):
    """A structure-constant file is malformed."""
