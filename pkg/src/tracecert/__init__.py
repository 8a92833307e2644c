"""A posteriori error certificates for approximate eigenspaces and polar factors.

Two problems are covered. For a Hermitian H and an orthonormal P, how far is
R(P) from the dominant k-dimensional eigenspace? For a tall B and an
orthonormal P, how far is P from the orthonormal polar factor of B? Both
answers come from how much a trace objective falls short of its maximum.
"""

from .config import DEFAULT_TOLERANCES, Tolerances
from .eigenspace import (
    EigCertificate,
    certify_eigenspace,
    certify_eigenspace_against,
    eta_eig,
    residual_eig,
)
from .errors import (
    AngleBudget,
    CharacterizationError,
    DimensionMismatch,
    FanViolation,
    FrameError,
    NonFinite,
    NotHermitian,
    NotInvariant,
    RankDeficient,
    ShapeError,
    TraceCertError,
    ZeroGap,
)
from .generators import (
    gen_hermitian,
    gen_stiefel,
    gen_with_singular_values,
    haar_unitary,
    rotate_frame,
)
from .harness import CHECK_TABLE, FuzzConfig, FuzzReport, run_fuzz
from .matrix_core import (
    HermitianEig,
    PolarDecomposition,
    StiefelFrame,
    ThinSVD,
    as_matrix,
    hermitian_eig,
    norm_2,
    norm_fro,
    orthonormal_complement,
    polar_decompose,
    thin_svd,
    trace_norm,
)
from .matrixio import read_matrix, write_matrix
from .polar import (
    PolarCertificate,
    align_factor,
    certify_polar,
    is_polar_maximizer,
    residual_polar,
    trace_objective,
    von_neumann_check,
)
from .subspace import CanonicalAngleSet, canonical_angles, dist2, distF

__version__ = "0.1.0"
