"""Trace-norm maximization and error bounds for the orthonormal polar factor.

For B (n x k, full column rank) with orthonormal polar factor ``P_*`` and an
orthonormal P, the shortfall ``eta = ||B||_tr - Re tr(P^H B)`` controls how
far P is from ``P_*``:

    ||B - P P^H B||_F / ||B||_2  <=  ||sin Theta(R(P), R(P_*))||_F  <=  sqrt(2 eta / sigma_min(B))

plus a bound on ``||P - P_*||_F`` itself when ``P^H B`` is Hermitian
positive definite, and a sharper one when the ranges coincide. Replacing
``Re tr(P^H B)`` by ``||P^H B||_tr`` (the best achievable after rotating P
within its range) gives the aligned variant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .checks import Check
from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import CharacterizationError, DimensionMismatch, RankDeficient
from .matrix_core import (
    StiefelFrame,
    as_frame,
    as_matrix,
    orthonormal_complement,
    polar_decompose,
    thin_svd,
)
from .subspace import canonical_angles

__all__ = [
    "PolarCertificate",
    "align_factor",
    "certify_polar",
    "is_polar_maximizer",
    "residual_polar",
    "trace_objective",
    "von_neumann_check",
]


@dataclass(frozen=True, eq=False)
class PolarCertificate:
    eta: float
    eta_variant: float
    sigma_min: float
    sigma_min_phb: float
    norm2_b: float
    epsilon: float
    epsilon_variant: float
    residual_f: float
    sin_theta_f: float
    half_angle_f: float
    frob_dist: float
    case_b_applicable: bool
    case_b_bound: float | None
    case_c_applicable: bool
    aligned_frob_dist: float | None
    aligned_bound: float | None
    chain_verified: bool
    checks: tuple[Check, ...]


def _operands(b, p, tols):
    b = as_matrix(b)
    p = as_frame(p, tols)
    if b.shape != p.shape:
        raise DimensionMismatch(f"B is {b.shape} but P is {p.shape}")
    return b, p


def von_neumann_check(b, c) -> tuple[float, float]:
    """Return ``(|tr(b^H c)|, sum_i sigma_i(b) sigma_i(c))``.

    The first never exceeds the second (von Neumann's trace inequality).
    """
    b = as_matrix(b)
    c = as_matrix(c)
    if b.shape != c.shape:
        raise DimensionMismatch(f"shapes {b.shape} and {c.shape} differ")
    lhs = abs(np.vdot(b, c))
    sb = np.linalg.svd(b, compute_uv=False)
    sc = np.linalg.svd(c, compute_uv=False)
    return float(lhs), float(np.dot(sb, sc))


def trace_objective(b, p, tols: Tolerances = DEFAULT_TOLERANCES) -> float:
    """``Re tr(p^H b)``; never larger than ``||b||_tr``."""
    b, p = _operands(b, p, tols)
    return float(np.real(np.vdot(p.matrix, b)))


def residual_polar(b, p, tols: Tolerances = DEFAULT_TOLERANCES) -> float:
    """``||B - P (P^H B)||_F``, which equals ``||P_perp^H B||_F``."""
    b, p = _operands(b, p, tols)
    pm = p.matrix
    return float(np.linalg.norm(b - pm @ (pm.conj().T @ b)))


def is_polar_maximizer(b, p, tols: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """Whether p attains ``max Re tr(P^H b) = ||b||_tr``.

    A detected maximizer must also factor b: ``M = p^H b`` is Hermitian
    positive semidefinite and ``b = p M``. Failing that raises
    :class:`CharacterizationError`.
    """
    b, p = _operands(b, p, tols)
    svals = np.linalg.svd(b, compute_uv=False)
    tr_norm = float(np.sum(svals))
    scale = max(1.0, tr_norm)
    value = float(np.real(np.vdot(p.matrix, b)))
    if abs(value - tr_norm) > tols.eq_tol * scale:
        return False
    m = p.matrix.conj().T @ b
    skew = float(np.linalg.norm(m - m.conj().T))
    min_eig = float(np.linalg.eigvalsh(0.5 * (m + m.conj().T))[0])
    recon = float(np.linalg.norm(b - p.matrix @ m))
    if (
        skew > tols.char_tol * scale
        or min_eig < -tols.char_tol * scale
        or recon > tols.char_tol * max(1.0, float(np.linalg.norm(b)))
    ):
        raise CharacterizationError(
            f"maximizer fails B = P Lambda: skew={skew:.2e}, min_eig={min_eig:.2e}, recon={recon:.2e}"
        )
    return True


def align_factor(b, p, tols: Tolerances = DEFAULT_TOLERANCES) -> StiefelFrame:
    """Unitary polar factor Q of ``P^H B``; ``P Q`` maximizes the trace objective over rotations of P."""
    b, p = _operands(b, p, tols)
    m = p.matrix.conj().T @ b
    s = np.linalg.svd(m, compute_uv=False)
    if s[-1] <= tols.rank_tol * max(s[0], np.finfo(float).tiny):
        raise RankDeficient("P^H B is rank deficient; its polar factor is not unique")
    return polar_decompose(m, tols).p


def _half_eta(pm: np.ndarray, u: np.ndarray, s: np.ndarray, v: np.ndarray) -> float:
    # ||B||_tr - Re tr(P^H B) = 1/2 sum_i sigma_i ||P v_i - u_i||^2 for orthonormal P.
    # Every term is nonnegative, so small shortfalls keep their relative accuracy.
    d = pm @ v - u
    return 0.5 * float(np.dot(s, np.sum(np.abs(d) ** 2, axis=0)))


def certify_polar(b, p, tols: Tolerances = DEFAULT_TOLERANCES) -> PolarCertificate:
    """Evaluate every polar-factor bound for the pair (B, P).

    Raises
    ------
    RankDeficient
        If ``sigma_k(B) <= rank_tol * sigma_1(B)``: the polar factor of B is
        not unique and no certificate is issued.
    """
    b, p = _operands(b, p, tols)
    n, k = b.shape
    svd = thin_svd(b, tols)
    u, s, v = svd.u.matrix, svd.sigma, svd.v.matrix
    if s[-1] <= tols.rank_tol * s[0] or s[0] == 0.0:
        raise RankDeficient(f"sigma_min(B)={s[-1]:.3e} relative to sigma_max={s[0]:.3e}")
    pm = p.matrix
    p_star = StiefelFrame.from_array(u @ v.conj().T, tols.frame_tol)
    sigma_min = float(s[-1])
    norm2 = float(s[0])

    eta = _half_eta(pm, u, s, v)
    epsilon = math.sqrt(2.0 * eta / sigma_min)

    m = pm.conj().T @ b
    mu, ms, mvh = np.linalg.svd(m)
    sigma_min_m = float(ms[-1])
    q = mu @ mvh  # a maximizer of Re tr([P Q]^H B) even when M is singular
    pq = pm @ q
    eta_v = _half_eta(pq, u, s, v)
    epsilon_v = math.sqrt(2.0 * eta_v / sigma_min)

    p_perp = orthonormal_complement(p)
    angles = canonical_angles(p, p_star, tols, x_perp=p_perp)
    sin_f = angles.distF
    half_f = angles.half_angle_distF
    residual = float(np.linalg.norm(p_perp.matrix.conj().T @ b)) if k < n else 0.0
    frob = float(np.linalg.norm(pm - p_star.matrix))

    hm = 0.5 * (m + m.conj().T)
    mnorm2 = float(ms[0])
    case_b = bool(
        np.linalg.norm(m - m.conj().T) <= tols.char_tol * np.linalg.norm(m)
        and np.linalg.eigvalsh(hm)[0] > tols.char_tol * mnorm2
    )
    factor = 1.0 + 2.0 * norm2 / (sigma_min + sigma_min_m)
    case_b_bound = factor * epsilon if case_b else None
    case_c = sin_f <= tols.range_tol
    rank_m = sigma_min_m > tols.rank_tol * max(mnorm2, np.finfo(float).tiny)
    aligned = float(np.linalg.norm(pq - p_star.matrix)) if rank_m else None
    aligned_bound = factor * epsilon_v if rank_m else None

    # sigma_i(B) pairs with theta_{k-i+1}: largest singular value with smallest angle.
    th = angles.thetas[::-1]
    pf2 = float(np.dot(s, 2.0 * np.sin(0.5 * th) ** 2))
    pf3 = float(np.dot(s, 0.5 * angles.sines[::-1] ** 2))
    pf4 = 0.5 * sigma_min * sin_f**2
    lower = residual / norm2

    def chk(name, lhs, rhs):
        return Check(name, lhs, rhs, max(1.0, abs(lhs), abs(rhs)))

    checks = [
        chk("polar.lower", lower, sin_f),
        chk("polar.upper", sin_f, epsilon),
        chk("polar.half_angle", 2.0 * half_f, epsilon),
        chk("polar.proof_half_angle_sum", pf2, eta),
        chk("polar.proof_sine_sum", pf3, pf2),
        chk("polar.proof_sigma_min", pf4, pf3),
    ]
    if case_b:
        checks.append(chk("polar.case_b", frob, case_b_bound))
    if case_c:
        checks.append(chk("polar.case_c", frob, epsilon))
    checks += [
        chk("corollary.eta_dominance", eta_v, eta),
        chk("corollary.epsilon_dominance", epsilon_v, epsilon),
        chk("corollary.lower", lower, sin_f),
        chk("corollary.upper", sin_f, epsilon_v),
        chk("corollary.half_angle", 2.0 * half_f, epsilon_v),
    ]
    if rank_m:
        checks.append(chk("corollary.aligned", aligned, aligned_bound))
    verified = all(c.holds(tols.slack_tol) for c in checks)
    return PolarCertificate(
        eta=eta,
        eta_variant=eta_v,
        sigma_min=sigma_min,
        sigma_min_phb=sigma_min_m,
        norm2_b=norm2,
        epsilon=epsilon,
        epsilon_variant=epsilon_v,
        residual_f=residual,
        sin_theta_f=sin_f,
        half_angle_f=half_f,
        frob_dist=frob,
        case_b_applicable=case_b,
        case_b_bound=case_b_bound,
        case_c_applicable=case_c,
        aligned_frob_dist=aligned,
        aligned_bound=aligned_bound,
        chain_verified=verified,
        checks=tuple(checks),
    )
