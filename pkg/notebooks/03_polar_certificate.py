"""
Certifying an approximate polar factor
======================================

The orthonormal polar factor P_* of a full-rank B maximizes ``Re tr(P^H B)``
over orthonormal P. The shortfall ``eta`` gives
``epsilon = sqrt(2 eta / sigma_min(B))`` which bounds both the subspace
distance and, when the ranges agree or ``P^H B`` is positive definite,
``||P - P_*||_F`` itself.
"""

import numpy as np

from tracecert import align_factor, certify_polar, gen_stiefel, gen_with_singular_values, polar_decompose, rotate_frame

# %%
# B = 2 e_1 and P at angle pi/3: epsilon equals 2 sin(theta/2) = 1.
b = np.array([[2.0], [0.0]])
c = certify_polar(b, np.array([[np.cos(np.pi / 3)], [np.sin(np.pi / 3)]]))
print(f"eta={c.eta:.6f} eps={c.epsilon:.6f} distF={c.sin_theta_f:.6f}")

# %%
# The antipode -P_* sits at Frobenius distance exactly 2 = epsilon.
b = gen_with_singular_values(6, 1, [3.0], seed=1)
c = certify_polar(b, -polar_decompose(b).p.matrix)
print(f"antipode: dist={c.frob_dist:.6f} eps={c.epsilon:.6f} same range={c.case_c_applicable}")

# %%
# A perturbed factor, then rotated within its range to maximize the objective.
b = gen_with_singular_values(12, 4, [3.0, 2.0, 1.0, 0.2], seed=2)
p = rotate_frame(polar_decompose(b).p, [0.1, 0.05, 0.02, 0.0], seed=3).matrix @ gen_stiefel(4, 4, 4).matrix
c = certify_polar(b, p)
print(f"raw:     eta={c.eta:.3e} eps={c.epsilon:.3f} |P-P*|={c.frob_dist:.3f}")
print(f"aligned: eta'={c.eta_variant:.3e} eps'={c.epsilon_variant:.3f} "
      f"|PQ-P*|={c.aligned_frob_dist:.3f} <= {c.aligned_bound:.3f}")
q = align_factor(b, p).matrix
print("P^H B after alignment is Hermitian:", np.allclose((p @ q).conj().T @ b, ((p @ q).conj().T @ b).conj().T))
