"""Error bounds for an approximate dominant eigenspace of a Hermitian matrix.

Given Hermitian H and an orthonormal P (n x k), the trace gap

    eta = (lambda_1 + ... + lambda_k) - tr(P^H H P)

and the eigenvalue gap ``lambda_k - lambda_{k+1}`` give the upper bound
``epsilon = sqrt(eta / gap)`` on ``||sin Theta(R(P), R(P_*))||_F``, where
``P_*`` spans the top-k eigenspace. The residual
``||H P - P (P^H H P)||_F`` divided by the spread ``lambda_1 - lambda_n``
bounds the same distance from below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .checks import Check
from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import DimensionMismatch, FanViolation, NotHermitian, NotInvariant, ShapeError, ZeroGap
from .matrix_core import (
    HermitianEig,
    StiefelFrame,
    as_frame,
    as_matrix,
    hermitian_eig,
    orthonormal_complement,
)
from .subspace import canonical_angles

__all__ = [
    "EigCertificate",
    "certify_eigenspace",
    "certify_eigenspace_against",
    "eta_eig",
    "residual_eig",
]


@dataclass(frozen=True, eq=False)
class EigCertificate:
    k: int
    eta: float
    gap: float
    spread: float
    epsilon: float | None
    residual_f: float
    sin_theta_f: float
    lower_bound: float
    chain_verified: bool
    slack_lower: float
    slack_upper: float | None
    vacuous: bool
    upper_applicable: bool
    checks: tuple[Check, ...]


def _hermitian(h, tols: Tolerances) -> np.ndarray:
    h = as_matrix(h)
    if h.shape[0] != h.shape[1]:
        raise ShapeError(f"H must be square, got {h.shape}")
    if np.linalg.norm(h - h.conj().T) > tols.hermitian_tol * np.linalg.norm(h):
        raise NotHermitian("H is not Hermitian within hermitian_tol")
    return 0.5 * (h + h.conj().T)


def _operands(h, p, tols):
    hs = _hermitian(h, tols)
    p = as_frame(p, tols)
    if p.n != hs.shape[0]:
        raise DimensionMismatch(f"H is {hs.shape[0]}x{hs.shape[0]} but P has {p.n} rows")
    return hs, p


def residual_eig(h, p, tols: Tolerances = DEFAULT_TOLERANCES) -> float:
    """``||H P - P (P^H H P)||_F``."""
    hs, p = _operands(h, p, tols)
    return _residual(hs, p.matrix)


def _residual(hs: np.ndarray, p: np.ndarray) -> float:
    hp = hs @ p
    return float(np.linalg.norm(hp - p @ (p.conj().T @ hp)))


def _trace_gap(
    hs: np.ndarray,
    eig: HermitianEig,
    p: np.ndarray,
    p_perp: np.ndarray,
    tols: Tolerances,
) -> float:
    # Expanding P in the eigenbasis with xi inside [lambda_{k+1}, lambda_k]:
    #   eta = sum_{i<=k} (lambda_i - xi) ||P_perp^H u_i||^2
    #       + sum_{j>k}  (xi - lambda_j) ||P^H u_j||^2,
    # a sum of nonnegative terms, free of the cancellation in the trace difference.
    lam = eig.eigenvalues
    u = eig.frame.matrix
    n, k = p.shape
    direct = float(np.sum(lam[:k]) - np.real(np.trace(p.conj().T @ hs @ p)))
    scale = max(1.0, float(np.max(np.abs(lam))) * k)
    if direct < -1e-8 * scale:
        raise FanViolation(f"trace gap {direct:.3e} is negative beyond rounding")
    if k == n:
        return max(direct, 0.0)
    xi = 0.5 * (lam[k - 1] + lam[k])
    top = np.sum(np.abs(p_perp.conj().T @ u[:, :k]) ** 2, axis=0)
    bottom = np.sum(np.abs(p.conj().T @ u[:, k:]) ** 2, axis=0)
    return float(np.dot(lam[:k] - xi, top) + np.dot(xi - lam[k:], bottom))


def eta_eig(h, p, tols: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Trace gap ``sum of k largest eigenvalues - Re tr(P^H H P)``.

    Raises
    ------
    FanViolation
        If the plain trace difference is below ``-1e-8 * max(1, ||H||_2 k)``.
    """
    hs, p = _operands(h, p, tols)
    eig = hermitian_eig(hs, tols)
    return _trace_gap(hs, eig, p.matrix, orthonormal_complement(p).matrix, tols)


def _gap_at(lam: np.ndarray, k: int) -> float:
    return float(lam[k - 1] - lam[k]) if k < len(lam) else 0.0


def certify_eigenspace(h, p, tols: Tolerances = DEFAULT_TOLERANCES) -> EigCertificate:
    """Sandwich ``||sin Theta(R(P), R(P_*))||_F`` for the top-k eigenspace.

    Checks ``residual / spread <= distF <= sqrt(eta / gap)`` with slack
    tolerance ``slack_tol * max(1, epsilon)``.

    Raises
    ------
    ZeroGap
        If ``lambda_k - lambda_{k+1} <= gap_tol * max(1, ||H||_2)``.
    """
    hs, p = _operands(h, p, tols)
    n, k = p.shape
    eig = hermitian_eig(hs, tols)
    lam = eig.eigenvalues
    gap = _gap_at(lam, k)
    if k < n and gap <= tols.gap_tol * max(1.0, float(np.max(np.abs(lam)))):
        raise ZeroGap(f"eigenvalue gap {gap:.3e} at k={k} is not positive")
    p_perp = orthonormal_complement(p)
    p_star = StiefelFrame.from_array(eig.frame.matrix[:, :k], tols.frame_tol)
    eta = _trace_gap(hs, eig, p.matrix, p_perp.matrix, tols)
    epsilon = math.sqrt(eta / gap) if k < n else 0.0
    sin_f = canonical_angles(p, p_star, tols, x_perp=p_perp).distF
    return _assemble(hs, p, lam, eta, gap, epsilon, sin_f, True, tols)


def _assemble(hs, p, lam, eta, gap, epsilon, sin_f, upper_applicable, tols):
    k = p.k
    residual = _residual(hs, p.matrix)
    spread = float(lam[0] - lam[-1])
    lower = residual / spread if spread > 0.0 else 0.0
    scale = max(1.0, epsilon if epsilon is not None else sin_f)
    checks = [Check("eig.lower", lower, sin_f, scale)]
    if upper_applicable:
        checks.append(Check("eig.upper", sin_f, epsilon, scale))
    verified = all(c.holds(tols.slack_tol) for c in checks)
    return EigCertificate(
        k=k,
        eta=eta,
        gap=gap,
        spread=spread,
        epsilon=epsilon,
        residual_f=residual,
        sin_theta_f=sin_f,
        lower_bound=lower,
        chain_verified=verified,
        slack_lower=sin_f - lower,
        slack_upper=(epsilon - sin_f) if upper_applicable else None,
        vacuous=bool(epsilon is not None and epsilon**2 > k),
        upper_applicable=upper_applicable,
        checks=tuple(checks),
    )


def certify_eigenspace_against(h, p, p_star, tols: Tolerances = DEFAULT_TOLERANCES) -> EigCertificate:
    """Residual lower bound against an arbitrary invariant subspace ``R(p_star)``.

    Only ``residual / spread <= distF(R(p), R(p_star))`` is claimed. The
    trace-gap fields refer to the dominant eigenspace; the upper check is
    added only when ``R(p_star)`` coincides with it (distF <= range_tol).

    Raises
    ------
    NotInvariant
        If ``||H P_* - P_* (P_*^H H P_*)||_F > inv_tol * ||H||_F``.
    """
    hs, p = _operands(h, p, tols)
    p_star = as_frame(p_star, tols)
    if p_star.shape != p.shape:
        raise DimensionMismatch(f"P is {p.shape} but P_* is {p_star.shape}")
    if _residual(hs, p_star.matrix) > tols.inv_tol * max(1.0, float(np.linalg.norm(hs))):
        raise NotInvariant("R(P_*) is not an invariant subspace of H within inv_tol")
    n, k = p.shape
    eig = hermitian_eig(hs, tols)
    lam = eig.eigenvalues
    gap = _gap_at(lam, k)
    p_perp = orthonormal_complement(p)
    eta = _trace_gap(hs, eig, p.matrix, p_perp.matrix, tols)
    positive_gap = k == n or gap > tols.gap_tol * max(1.0, float(np.max(np.abs(lam))))
    epsilon = (math.sqrt(eta / gap) if k < n else 0.0) if positive_gap else None
    dominant = positive_gap and (
        canonical_angles(p_star, eig.frame.matrix[:, :k], tols).distF <= tols.range_tol
    )
    sin_f = canonical_angles(p, p_star, tols, x_perp=p_perp).distF
    return _assemble(hs, p, lam, eta, gap, epsilon, sin_f, dominant, tols)
