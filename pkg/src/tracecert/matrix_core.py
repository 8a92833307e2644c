"""Dense complex matrices, norms and the three decompositions.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``; real
input is embedded with zero imaginary part. Orthonormal frames are wrapped in
:class:`StiefelFrame`, which records how far the columns are from
orthonormal at construction time.

The decompositions delegate to LAPACK through ``numpy.linalg`` and check the
reconstruction invariants on the way out.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import (
    DimensionMismatch,
    FrameError,
    NonFinite,
    NotHermitian,
    ShapeError,
    TraceCertError,
)

__all__ = [
    "DecompositionError",
    "HermitianEig",
    "PolarDecomposition",
    "StiefelFrame",
    "ThinSVD",
    "as_frame",
    "as_matrix",
    "hermitian_eig",
    "norm_2",
    "norm_fro",
    "orthonormal_complement",
    "polar_decompose",
    "singular_values",
    "thin_svd",
    "trace_norm",
]


class DecompositionError(TraceCertError):
    """A backend decomposition failed its reconstruction invariant."""


def _freeze(a):
    a.setflags(write=False)
    return a


def as_matrix(a) -> np.ndarray:
    """Return `a` as a finite 2-D complex128 array.

    A 1-D input is read as a column vector.
    """
    arr = np.asarray(a)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise ShapeError(f"expected a 2-D matrix, got ndim={arr.ndim}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ShapeError(f"matrix dimensions must be positive, got {arr.shape}")
    arr = arr.astype(np.complex128, copy=False)
    if not np.all(np.isfinite(arr)):
        raise NonFinite("matrix has NaN or Inf entries")
    return arr


@dataclass(frozen=True, eq=False)
class StiefelFrame:
    """An n x k matrix with orthonormal columns (k <= n).

    ``n x 0`` frames are allowed; they arise as the complement of a square
    unitary matrix.
    """

    matrix: np.ndarray
    orthonormality_defect: float

    @classmethod
    def from_array(cls, a, tol: float | None = None) -> "StiefelFrame":
        """Validate `a` as an orthonormal frame.

        Raises
        ------
        FrameError
            If ``||a^H a - I||_F`` exceeds `tol` (default ``frame_tol``).
        """
        if tol is None:
            tol = DEFAULT_TOLERANCES.frame_tol
        arr = np.array(a, dtype=np.complex128)
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1)
        if arr.ndim != 2 or arr.shape[0] < 1:
            raise ShapeError(f"frame must be a non-empty 2-D array, got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise NonFinite("frame has NaN or Inf entries")
        n, k = arr.shape
        if k > n:
            raise ShapeError(f"frame has more columns than rows ({n}x{k})")
        defect = float(np.linalg.norm(arr.conj().T @ arr - np.eye(k))) if k else 0.0
        if defect > tol:
            raise FrameError(f"orthonormality defect {defect:.3e} exceeds {tol:.1e}")
        return cls(_freeze(arr), defect)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def k(self) -> int:
        return self.matrix.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.matrix
        return self.matrix.astype(dtype)

    def __matmul__(self, other):
        return self.matrix @ np.asarray(other)

    def __rmatmul__(self, other):
        return np.asarray(other) @ self.matrix


def as_frame(p, tols: Tolerances = DEFAULT_TOLERANCES) -> StiefelFrame:
    """Accept a :class:`StiefelFrame` or validate a raw array as one."""
    if isinstance(p, StiefelFrame):
        return p
    return StiefelFrame.from_array(p, tols.frame_tol)


@dataclass(frozen=True, eq=False)
class HermitianEig:
    eigenvalues: np.ndarray  # descending
    frame: StiefelFrame


@dataclass(frozen=True, eq=False)
class ThinSVD:
    u: StiefelFrame
    sigma: np.ndarray  # descending, >= 0
    v: StiefelFrame


@dataclass(frozen=True, eq=False)
class PolarDecomposition:
    p: StiefelFrame
    lambda_: np.ndarray
    unique: bool


def norm_fro(a) -> float:
    return float(np.linalg.norm(as_matrix(a)))


def singular_values(a) -> np.ndarray:
    """Singular values of `a` in descending order."""
    return np.linalg.svd(as_matrix(a), compute_uv=False)


def norm_2(a) -> float:
    """Largest singular value."""
    return float(singular_values(a)[0])


def trace_norm(a) -> float:
    """Sum of singular values (nuclear norm)."""
    return float(np.sum(singular_values(a)))


def hermitian_eig(h, tols: Tolerances = DEFAULT_TOLERANCES) -> HermitianEig:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending.

    The input is symmetrized as ``(h + h^H) / 2`` after checking it is
    Hermitian to within ``hermitian_tol`` relative to ``||h||_F``.
    """
    h = as_matrix(h)
    n, m = h.shape
    if n != m:
        raise ShapeError(f"Hermitian matrix must be square, got {h.shape}")
    hnorm = np.linalg.norm(h)
    if np.linalg.norm(h - h.conj().T) > tols.hermitian_tol * hnorm:
        raise NotHermitian("matrix is not Hermitian within hermitian_tol")
    hs = 0.5 * (h + h.conj().T)
    w, v = np.linalg.eigh(hs)
    w = w[::-1].copy()
    v = v[:, ::-1].copy()
    if np.linalg.norm(hs @ v - v * w) > tols.decomp_tol * max(1.0, hnorm):
        raise DecompositionError("eigendecomposition failed its residual check")
    return HermitianEig(_freeze(w), StiefelFrame.from_array(v, tols.frame_tol))


def thin_svd(b, tols: Tolerances = DEFAULT_TOLERANCES) -> ThinSVD:
    """Thin SVD ``b = U diag(sigma) V^H`` of a tall matrix."""
    b = as_matrix(b)
    n, k = b.shape
    if n < k:
        raise ShapeError(f"thin_svd needs rows >= cols, got {b.shape}")
    u, s, vh = np.linalg.svd(b, full_matrices=False)
    if np.linalg.norm(b - (u * s) @ vh) > tols.decomp_tol * max(1.0, np.linalg.norm(b)):
        raise DecompositionError("SVD failed its reconstruction check")
    return ThinSVD(
        StiefelFrame.from_array(u, tols.frame_tol),
        _freeze(s),
        StiefelFrame.from_array(vh.conj().T, tols.frame_tol),
    )


def polar_decompose(b, tols: Tolerances = DEFAULT_TOLERANCES) -> PolarDecomposition:
    """Polar decomposition ``b = P Lambda`` via the thin SVD.

    ``P = U V^H`` and ``Lambda = V Sigma V^H``. The ``unique`` flag is set
    when ``sigma_k > rank_tol * sigma_1``, i.e. when b has full column rank.
    """
    svd = thin_svd(b, tols)
    u, s, v = svd.u.matrix, svd.sigma, svd.v.matrix
    p = u @ v.conj().T
    lam = (v * s) @ v.conj().T
    lam = 0.5 * (lam + lam.conj().T)
    unique = bool(s[-1] > tols.rank_tol * s[0])
    return PolarDecomposition(StiefelFrame.from_array(p, tols.frame_tol), _freeze(lam), unique)


def orthonormal_complement(p) -> StiefelFrame:
    """Orthonormal basis of the orthogonal complement of ``R(p)``.

    Built from the complete Householder QR of p, so ``[p, p_perp]`` is
    unitary to working precision. For k = n the result has zero columns.
    """
    p = as_frame(p)
    n, k = p.shape
    if k == n:
        return StiefelFrame(_freeze(np.zeros((n, 0), dtype=np.complex128)), 0.0)
    q, _ = np.linalg.qr(p.matrix, mode="complete")
    return StiefelFrame.from_array(q[:, k:])


def check_same_shape(a: np.ndarray, b: np.ndarray, what: str = "operands") -> None:
    if a.shape != b.shape:
        raise DimensionMismatch(f"{what} have shapes {a.shape} and {b.shape}")
