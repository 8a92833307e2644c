"""
Canonical angles between subspaces
==================================

Cosines of the canonical angles come from ``X^H Y`` and sines from
``X_perp^H Y``. Small angles need the sine route: ``arccos`` of a cosine
that rounds to 1 returns 0.
"""

import numpy as np

from tracecert import canonical_angles, gen_stiefel, rotate_frame

# %%
# Two lines in the plane meeting at 0.5 radians.
x = np.array([[1.0], [0.0]])
y = np.array([[np.cos(0.5)], [np.sin(0.5)]])
print(canonical_angles(x, y))

# %%
# Prescribe three angles in C^8 and recover them.
p_star = gen_stiefel(8, 3, seed=1)
p = rotate_frame(p_star, [0.9, 0.5, 0.1], seed=2)
print("recovered:", canonical_angles(p, p_star).thetas)

# %%
# A tiny angle. The cosine route alone loses it entirely.
t = 1e-12
tiny = np.array([[np.cos(t)], [np.sin(t)]])
a = canonical_angles(x, tiny)
print(f"theta={a.thetas[0]:.3e}  arccos(cos)={np.arccos(min(1.0, a.cosines[0])):.3e}")

# %%
# The two distances used later on, plus the half-angle one.
print(f"dist2={a.dist2:.3e} distF={a.distF:.3e} half={a.half_angle_distF:.3e}")
