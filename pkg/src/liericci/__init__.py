"""Ricci operator signatures of solvable metric Lie algebras.

Build a Lie algebra from structure constants, pair it with an inner
product, and ask for the Ricci operator, its eigenvalue signature, and
which case of the zero / one-negative / two-negative trichotomy the
instance falls in.  Everything is deterministic and tolerance-explicit;
the generator and CLI drive seeded verification campaigns over random
instances.
"""

from .algebra import (
    LieAlgebra,
    StructuralPredicates,
    Subspace,
    derived_algebra,
    derived_series,
    jacobi_residual,
    lower_central_series,
    structural_predicates,
    validate_jacobi,
)
from .classifier import (
    Classification,
    CorollaryChecks,
    RouteDisagreement,
    TrichotomyCase,
    classify,
    verify_corollaries,
    verify_nonunimodular,
)
from .derivations import (
    DerivationIdentities,
    DerivationSpace,
    FiltrationMembership,
    derivation_algebra,
    derivation_identities,
    filtration_membership,
    is_derivation,
    leibniz_residual,
    nilpotent_trace_gap,
    project_inner,
    ricci_derivation_pairing,
)
from .generator import (
    GenerationError,
    GeneratorSpec,
    catalog,
    derived_seed,
    generate,
    random_metric,
    random_nilpotent,
    random_semidirect,
    random_solvable,
    semidirect,
)
from .linalg import ConvergenceError, interlacing_slack, symmetric_eigenvalues
from .metric import (
    InnerProduct,
    MetricLieAlgebra,
    OperatorPredicates,
    killing_operator,
    mean_curvature_vector,
    metric_adjoint,
    operator_predicates,
    orthonormalize,
    symmetric_part,
    trace_inner_product,
)
from .ricci import (
    AdaptedDecomposition,
    BlockRicci,
    Codim1Reduction,
    RicciReport,
    adapted_decomposition,
    codim1_reduction,
    eigen_signature,
    r2_pairing_trace,
    ricci_blocks,
    ricci_direct,
    ricci_nilpotent,
    route_deviation,
)

__version__ = "0.1.0"
