"""Operator radii w_rho of complex matrices, with orthogonality and parallelism tests."""

from .errors import (
    NonFiniteError,
    NonUnitVectorError,
    NotHermitianError,
    OpRadiusError,
    RhoConditioningError,
    RhoError,
    ShapeError,
    ZeroOperatorError,
)
from .geometry import (
    CheckResult,
    OrthogonalityReport,
    ParallelismReport,
    WitnessRecord,
    bhatia_semrl_check,
    find_orthogonality_witness,
    find_parallelism_witness,
    is_orthogonal,
    is_parallel,
    norm_parallel_check,
    numerical_radius_orthogonal,
    numerical_radius_parallel,
    scaled_witness_vector,
    witness_residuals,
)
from .linalg import (
    EigenPair,
    adjoint,
    hermitian_eig_max,
    inner,
    jacobi_eigh,
    max_singular_subspace,
    operator_norm,
)
from .oracle import (
    GridSpec,
    OracleVerdict,
    buzano_check,
    cross_check,
    grid_max_lambda,
    grid_min_gamma,
    sphere_radius_estimate,
)
from .radius import (
    RadiusCertificate,
    RhoParam,
    attaining_vectors,
    block_embed,
    numerical_radius,
    rho_radius,
    rho_radius_batch,
)

__version__ = "0.1.0"
__all__ = [n for n, v in list(globals().items()) if not n.startswith("_") and type(v).__name__ != "module"]
