"""
Certifying an approximate eigenspace
====================================

For Hermitian H and orthonormal P the trace shortfall
``eta = lambda_1 + ... + lambda_k - tr(P^H H P)`` bounds the sine distance
to the dominant eigenspace from above, and the residual bounds it from below:

    residual / (lambda_1 - lambda_n) <= ||sin Theta||_F <= sqrt(eta / gap)
"""

import numpy as np

from tracecert import certify_eigenspace, gen_hermitian, gen_stiefel, hermitian_eig, rotate_frame

# %%
# The 2x2 rotation family attains the upper bound.
h = np.diag([3.0, 1.0])
for t in (0.1, np.pi / 6, 1.2):
    c = certify_eigenspace(h, np.array([[np.cos(t)], [np.sin(t)]]))
    print(f"theta={t:.3f}  lower={c.lower_bound:.4f}  distF={c.sin_theta_f:.4f}  eps={c.epsilon:.4f}")

# %%
# A larger instance with a known spectrum: gap 1 between the 4th and 5th eigenvalue.
lam = np.concatenate([np.linspace(3, 2, 4), np.linspace(1, -2, 16)])
h = gen_hermitian(20, lam, seed=3)
p_star = hermitian_eig(h).frame.matrix[:, :4]
p = rotate_frame(p_star, [0.2, 0.05, 0.01, 0.0], seed=4)
c = certify_eigenspace(h, p)
print(f"eta={c.eta:.3e} gap={c.gap:.3f} [{c.lower_bound:.4f}, {c.sin_theta_f:.4f}, {c.epsilon:.4f}]")
print("verified:", c.chain_verified)

# %%
# A random frame: the bounds still sandwich the distance, but loosely.
c = certify_eigenspace(h, gen_stiefel(20, 4, seed=5))
print(f"random frame: [{c.lower_bound:.3f}, {c.sin_theta_f:.3f}, {c.epsilon:.3f}] vacuous={c.vacuous}")
