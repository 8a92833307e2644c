"""
A seeded fuzz campaign
======================

Every inequality is evaluated over random instances with known ground truth.
The report lists violations (there should be none) and, per check, the
largest observed ratio lhs/rhs. Ratios at 1 mean the bound was attained.
"""

from tracecert import FuzzConfig, run_fuzz

# %%
cfg = FuzzConfig(seed=42, trials=300, dims=((3, 1), (10, 3), (20, 5)))
rep = run_fuzz(cfg)
print(f"{rep.total} trials, {rep.checks_evaluated} checks, {len(rep.violations)} violations")
for cid, t in rep.tightness.items():
    if t["max_ratio"] is not None:
        print(f"  {cid:32s} max={t['max_ratio']:.6f} mean={t['mean_ratio']:.4f}")

# %%
# The same campaign as a text config, as read by ``tracecert fuzz --config``.
print(cfg.to_text())
