import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from tracecert import (
    DimensionMismatch,
    canonical_angles,
    dist2,
    distF,
    gen_stiefel,
    haar_unitary,
    orthonormal_complement,
    rotate_frame,
)

frames = st.tuples(st.integers(2, 30), st.integers(0, 2**32)).flatmap(
    lambda t: st.tuples(st.just(t[0]), st.integers(1, t[0]), st.just(t[1]))
)


def test_identical_frames():
    x = gen_stiefel(6, 3, 1)
    a = canonical_angles(x, x)
    np.testing.assert_allclose(a.thetas, 0, atol=1e-14)
    assert a.distF < 1e-14
    assert dist2(x, x) < 1e-14


def test_planar_angle():
    t = np.pi / 6
    a = canonical_angles([[1.0], [0.0]], [[np.cos(t)], [np.sin(t)]])
    assert a.thetas[0] == pytest.approx(t, abs=1e-15)
    assert a.dist2 == pytest.approx(0.5, abs=1e-15)


def test_orthogonal_lines():
    assert dist2([[1.0], [0.0]], [[0.0], [1.0]]) == pytest.approx(1.0)
    assert distF([[1.0], [0.0]], [[0.0], [1.0j]]) == pytest.approx(1.0)


def test_prescribed_angles_round_trip():
    x = gen_stiefel(8, 3, 7)
    y = rotate_frame(x, [0.9, 0.5, 0.1], seed=8)
    a = canonical_angles(x, y)
    np.testing.assert_allclose(a.thetas, [0.9, 0.5, 0.1], atol=1e-12)
    assert a.distF == pytest.approx(np.sqrt(np.sin(0.9) ** 2 + np.sin(0.5) ** 2 + np.sin(0.1) ** 2), abs=1e-12)


def test_small_angles_keep_relative_accuracy():
    x = gen_stiefel(10, 2, 3)
    y = rotate_frame(x, [3e-9, 1e-12], seed=4)
    a = canonical_angles(x, y)
    np.testing.assert_allclose(a.thetas, [3e-9, 1e-12], rtol=1e-6, atol=1e-15)
    # arccos of the cosines alone cannot resolve these
    assert np.max(np.abs(np.arccos(a.cosines)[::-1] - [1e-12, 3e-9])) > 1e-9


def test_matches_scipy_subspace_angles():
    x = gen_stiefel(12, 4, 31)
    y = gen_stiefel(12, 4, 32)
    ref = np.sort(scipy.linalg.subspace_angles(x.matrix, y.matrix))[::-1]
    np.testing.assert_allclose(canonical_angles(x, y).thetas, ref, atol=1e-12)


def test_square_frames_have_zero_angles():
    a = canonical_angles(haar_unitary(4, 1), haar_unitary(4, 2))
    np.testing.assert_allclose(a.thetas, 0, atol=1e-7)
    assert a.distF == 0.0


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        canonical_angles(gen_stiefel(5, 2, 1), gen_stiefel(5, 3, 1))


@settings(max_examples=60, deadline=None)
@given(frames)
def test_field_invariants(t):
    n, k, seed = t
    a = canonical_angles(gen_stiefel(n, k, seed), gen_stiefel(n, k, seed + 1))
    assert np.all(np.diff(a.thetas) <= 1e-15)
    assert np.all((a.thetas >= 0) & (a.thetas <= np.pi / 2))
    assert a.dist2 == a.sines[0]
    assert abs(a.distF**2 - np.sum(a.sines**2)) <= 1e-14
    assert a.half_angle_distF <= a.distF + 1e-15
    assert a.distF <= 2 * a.half_angle_distF + 1e-15
    # the arccos route only loses accuracy near zero
    np.testing.assert_allclose(np.sqrt(1 - a.cosines**2), a.sines, atol=1e-7)


@settings(max_examples=60, deadline=None)
@given(frames)
def test_symmetry(t):
    n, k, seed = t
    x, y = gen_stiefel(n, k, seed), gen_stiefel(n, k, seed + 7)
    np.testing.assert_allclose(canonical_angles(x, y).thetas, canonical_angles(y, x).thetas, atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(frames)
def test_unitary_invariance(t):
    n, k, seed = t
    x, y = gen_stiefel(n, k, seed), gen_stiefel(n, k, seed + 1)
    z = haar_unitary(n, seed + 2)
    q1, q2 = haar_unitary(k, seed + 3), haar_unitary(k, seed + 4)
    a = canonical_angles(x, y).thetas
    b = canonical_angles(z @ x.matrix @ q1, z @ y.matrix @ q2).thetas
    np.testing.assert_allclose(a, b, atol=1e-11)


def test_basis_independence():
    x, y = gen_stiefel(9, 3, 40), gen_stiefel(9, 3, 41)
    q = haar_unitary(3, 42)
    a, b = canonical_angles(x, y), canonical_angles(x.matrix @ q, y)
    for f in ("thetas", "sines", "cosines"):
        np.testing.assert_allclose(getattr(a, f), getattr(b, f), atol=1e-12)
    assert abs(a.distF - b.distF) <= 1e-12 and abs(a.dist2 - b.dist2) <= 1e-12


def test_triangle_inequality_sampled():
    for i in range(1000):
        n = 2 + i % 9
        k = 1 + (i // 9) % (n - 1) if n > 2 else 1
        x, y, z = (gen_stiefel(n, k, 3 * i + j) for j in range(3))
        assert distF(x, z) <= distF(x, y) + distF(y, z) + 1e-10


@pytest.mark.parametrize("n,k", [(6, 2), (10, 7), (30, 4)])
def test_complement_identity(n, k):
    x, y = gen_stiefel(n, k, n), gen_stiefel(n, k, n + 1)
    xp = orthonormal_complement(x).matrix
    assert abs(np.linalg.norm(xp.conj().T @ y.matrix) - distF(x, y)) <= 1e-12
