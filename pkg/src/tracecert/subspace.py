"""Canonical angles between equal-dimension subspaces and the sin-theta distances."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import DimensionMismatch
from .matrix_core import StiefelFrame, as_frame, orthonormal_complement

__all__ = ["CanonicalAngleSet", "canonical_angles", "dist2", "distF"]


@dataclass(frozen=True, eq=False)
class CanonicalAngleSet:
    """Canonical angles in descending order with their sines and cosines.

    ``sines[i]`` and ``cosines[i]`` belong to ``thetas[i]``, so ``sines`` is
    descending and ``cosines`` ascending.
    """

    thetas: np.ndarray
    sines: np.ndarray
    cosines: np.ndarray
    dist2: float
    distF: float
    half_angle_distF: float

    @property
    def k(self) -> int:
        return len(self.thetas)


def _pair(x, y, tols):
    x = as_frame(x, tols)
    y = as_frame(y, tols)
    if x.shape != y.shape:
        raise DimensionMismatch(f"frames have shapes {x.shape} and {y.shape}")
    return x, y


def canonical_angles(
    x: StiefelFrame,
    y: StiefelFrame,
    tols: Tolerances = DEFAULT_TOLERANCES,
    *,
    x_perp: StiefelFrame | None = None,
) -> CanonicalAngleSet:
    """Canonical angles between ``R(x)`` and ``R(y)``.

    Cosines are the singular values of ``x^H y``; sines are the singular
    values of ``x_perp^H y`` padded with zeros to length k. Each angle is
    ``atan2(sin, cos)`` so that both small and near-orthogonal angles keep
    full relative accuracy.

    Parameters
    ----------
    x, y : StiefelFrame or array_like, (n, k)
    x_perp : StiefelFrame, optional
        Precomputed orthonormal complement of x.
    """
    x, y = _pair(x, y, tols)
    n, k = x.shape
    cos = np.linalg.svd(x.matrix.conj().T @ y.matrix, compute_uv=False)
    cos = np.clip(cos, 0.0, 1.0)[::-1]  # ascending
    if k == n:
        sin = np.zeros(k)
    else:
        if x_perp is None:
            x_perp = orthonormal_complement(x)
        s = np.linalg.svd(x_perp.matrix.conj().T @ y.matrix, compute_uv=False)
        sin = np.zeros(k)
        sin[: len(s)] = np.clip(s, 0.0, 1.0)  # descending, zero padded
    thetas = np.arctan2(sin, cos)
    half = np.sin(0.5 * thetas)
    return CanonicalAngleSet(
        thetas=thetas,
        sines=sin,
        cosines=cos,
        dist2=float(sin[0]),
        distF=float(np.linalg.norm(sin)),
        half_angle_distF=float(np.linalg.norm(half)),
    )


def dist2(x, y, tols: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Largest sine of the canonical angles."""
    return canonical_angles(x, y, tols).dist2


def distF(x, y, tols: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Frobenius norm of the vector of canonical-angle sines."""
    return canonical_angles(x, y, tols).distF
