"""Seeded instance generators with known ground truth.

Every generator is a pure function of its parameters and an unsigned 64-bit
seed. Randomness comes from numpy's counter-based Philox bit generator, so a
given seed gives the same matrices on every platform and in every process.
"""

from __future__ import annotations

import numpy as np

from .errors import AngleBudget, ShapeError
from .matrix_core import StiefelFrame, as_frame, orthonormal_complement

__all__ = [
    "gen_hermitian",
    "gen_stiefel",
    "gen_with_singular_values",
    "haar_unitary",
    "make_rng",
    "rotate_frame",
    "splitmix64",
    "trial_seed",
]

_MASK = (1 << 64) - 1


def splitmix64(x: int) -> int:
    """One step of the SplitMix64 output function."""
    z = (x + 0x9E3779B97F4A7C15) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def trial_seed(seed: int, index: int) -> int:
    """Seed for trial `index` of a campaign; independent of scheduling."""
    return (seed ^ splitmix64(index)) & _MASK


def make_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.Philox(int(seed) & _MASK))


def _complex_gaussian(rng, n, k):
    return (rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))) / np.sqrt(2.0)


def _phase_fixed_qr(a):
    q, r = np.linalg.qr(a)
    d = np.diagonal(r)
    ph = np.where(np.abs(d) > 0, d / np.where(np.abs(d) > 0, np.abs(d), 1.0), 1.0)
    return q * ph


def haar_unitary(n: int, seed) -> np.ndarray:
    """Haar-distributed n x n unitary: QR of a complex Gaussian with R's diagonal made positive."""
    return _phase_fixed_qr(_complex_gaussian(make_rng(seed), n, n))


def gen_stiefel(n: int, k: int, seed) -> StiefelFrame:
    """Uniformly random n x k orthonormal frame."""
    if not 1 <= k <= n:
        raise ShapeError(f"need 1 <= k <= n, got n={n}, k={k}")
    return StiefelFrame.from_array(_phase_fixed_qr(_complex_gaussian(make_rng(seed), n, k)))


def gen_hermitian(n: int, spectrum, seed) -> np.ndarray:
    """``U diag(spectrum) U^H`` with U Haar unitary, exactly Hermitian."""
    lam = np.asarray(spectrum, dtype=float)
    if lam.shape != (n,):
        raise ShapeError(f"spectrum must have length {n}, got {lam.shape}")
    u = haar_unitary(n, seed)
    h = (u * lam) @ u.conj().T
    return 0.5 * (h + h.conj().T)


def gen_with_singular_values(n: int, k: int, sigma, seed) -> np.ndarray:
    """``U diag(sigma) V^H`` with random U (n x k orthonormal) and V (k x k unitary)."""
    s = np.asarray(sigma, dtype=float)
    if s.shape != (k,) or k > n:
        raise ShapeError(f"sigma must have length k={k} <= n={n}")
    if np.any(s < 0) or np.any(np.diff(s) > 0):
        raise ValueError("sigma must be nonnegative and descending")
    rng = make_rng(seed)
    u = _phase_fixed_qr(_complex_gaussian(rng, n, k))
    v = _phase_fixed_qr(_complex_gaussian(rng, k, k))
    return (u * s) @ v.conj().T


def rotate_frame(p_star, thetas, seed, *, complement=None) -> StiefelFrame:
    """Frame whose canonical angles to ``R(p_star)`` are exactly `thetas`.

    Builds ``P = P_* diag(cos theta) + C diag(sin theta)`` where C has
    orthonormal columns drawn inside the complement of ``R(P_*)`` (zero
    columns where theta is 0).

    Raises
    ------
    AngleBudget
        If more than ``n - k`` angles are nonzero.

    `complement` may supply a precomputed orthonormal basis of the
    complement of ``R(p_star)``.
    """
    p_star = as_frame(p_star)
    n, k = p_star.shape
    th = np.asarray(thetas, dtype=float).reshape(-1)
    if th.shape != (k,):
        raise ShapeError(f"need {k} angles, got {th.shape[0]}")
    if np.any(th < 0) or np.any(th > np.pi / 2):
        raise ValueError("angles must lie in [0, pi/2]")
    active = np.flatnonzero(th)
    if len(active) > n - k:
        raise AngleBudget(f"{len(active)} nonzero angles but complement has dimension {n - k}")
    c = np.zeros((n, k), dtype=np.complex128)
    if len(active):
        perp = np.asarray(complement) if complement is not None else orthonormal_complement(p_star).matrix
        w = _phase_fixed_qr(_complex_gaussian(make_rng(seed), n - k, len(active)))
        c[:, active] = perp @ w
    p = p_star.matrix * np.cos(th) + c * np.sin(th)
    return StiefelFrame.from_array(p)
