"""Exact-arithmetic engine for the Kantor double of the Virasoro-like algebra.

Everything is computed over the rationals on finite Z^2 index windows:
structure-constant tables, axiom verifiers, half-superderivation kernels
(degree by degree, parity by parity), and transposed Poisson triviality
classification.
"""

from .algebra import (
    EVEN,
    ODD,
    BasisKey,
    Element,
    G,
    L,
    Scalar,
    SuperAlgebra,
    bracket,
    build_kantor_double_lv,
    build_virasoro_like,
    element,
)
from .checks import (
    Violation,
    check_antisymmetry,
    check_grading,
    check_lemma31_relations,
    check_super_jacobi,
    span_closure,
)
from .grades import E1, E2, Grade, Window, ZERO, add, det2, neg
from .kantor import (
    PoissonAlgebraInput,
    kantor_double,
    validate_double,
    validate_poisson_input,
    virasoro_like_poisson,
)
from .solver import (
    ConstraintSystem,
    DerivationReport,
    HomogeneousMap,
    KernelBasis,
    adjoint_pattern_map,
    build_constraints,
    identity_map,
    is_delta_superderivation,
    project_inner,
    solve_half_superderivations,
    solve_kernel,
)
from .tpa import (
    ProductCandidate,
    TpsClassification,
    check_associative,
    check_lemma_b,
    check_supercommutative,
    check_transposed_leibniz,
    classify_tps,
    left_multiplication,
    lv_poisson_product,
    zero_product,
)

__version__ = "0.1.0"
