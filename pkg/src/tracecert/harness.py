"""Seeded fuzz campaigns over every inequality the certificates rely on.

Trial ``i`` of a campaign draws all of its randomness from
``trial_seed(seed, i)``, so a report depends only on the configuration, not
on the number of worker processes or the order they finish in.
"""

from __future__ import annotations

import hashlib
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .checks import Check
from .config import DEFAULT_TOLERANCES, Tolerances
from .eigenspace import certify_eigenspace, certify_eigenspace_against
from .generators import (
    gen_hermitian,
    gen_stiefel,
    gen_with_singular_values,
    haar_unitary,
    make_rng,
    rotate_frame,
    trial_seed,
)
from .matrix_core import StiefelFrame, orthonormal_complement
from .polar import certify_polar, von_neumann_check
from .subspace import canonical_angles

__all__ = [
    "ANGLE_STYLES",
    "CHECK_TABLE",
    "KINDS",
    "SPECTRUM_STYLES",
    "FuzzConfig",
    "FuzzReport",
    "run_fuzz",
]

KINDS = ("eig", "polar", "corollary", "lemma", "von-neumann")
SPECTRUM_STYLES = ("uniform", "clustered", "geometric", "prescribed-gap", "mixed")
ANGLE_STYLES = ("tiny", "moderate", "near-orthogonal", "antipodal", "mixed")

# Every inequality exercised by a campaign, keyed by check id.
CHECK_TABLE: dict[str, str] = {
    "angles.half_angle_lower": "||sin(Theta/2)||_F <= distF",
    "angles.half_angle_upper": "distF <= 2 ||sin(Theta/2)||_F",
    "angles.symmetry": "Theta(X,Y) = Theta(Y,X)",
    "angles.triangle": "distF(X,Z) <= distF(X,Y) + distF(Y,Z)",
    "eig.fan": "tr(P^H H P) <= lambda_1 + ... + lambda_k",
    "eig.residual_identity": "||HP - P(P^H H P)||_F = ||P_perp^H H P||_F",
    "eig.lower": "residual / (lambda_1 - lambda_n) <= distF",
    "eig.upper": "distF <= sqrt(eta / gap)",
    "eig.invariant_lower": "residual / spread <= distF(R(P), any invariant R(P_*))",
    "polar.lower": "||B - P P^H B||_F / ||B||_2 <= distF",
    "polar.upper": "distF <= sqrt(2 eta / sigma_min)",
    "polar.half_angle": "2 ||sin(Theta/2)||_F <= epsilon",
    "polar.proof_half_angle_sum": "sum sigma_i 2 sin^2(theta_{k-i+1}/2) <= eta",
    "polar.proof_sine_sum": "sum sigma_i sin^2(theta_{k-i+1}) / 2 <= sum sigma_i 2 sin^2(theta_{k-i+1}/2)",
    "polar.proof_sigma_min": "sigma_min distF^2 / 2 <= sum sigma_i sin^2(theta_{k-i+1}) / 2",
    "polar.case_b": "P^H B > 0  =>  ||P - P_*||_F <= (1 + 2||B||_2 / (sigma_min(B) + sigma_min(P^H B))) epsilon",
    "polar.case_c": "R(P) = R(P_*)  =>  ||P - P_*||_F <= epsilon",
    "corollary.eta_dominance": "||B||_tr - ||P^H B||_tr <= eta",
    "corollary.epsilon_dominance": "epsilon' <= epsilon",
    "corollary.lower": "||B - P P^H B||_F / ||B||_2 <= distF",
    "corollary.upper": "distF <= epsilon'",
    "corollary.half_angle": "2 ||sin(Theta/2)||_F <= epsilon'",
    "corollary.aligned": "||P Q - P_*||_F <= (1 + 2||B||_2 / (sigma_min(B) + sigma_min(P^H B))) epsilon'",
    "lemma.a": "Re tr(P^H B) <= ||B||_tr",
    "lemma.b_attained": "polar factor P gives Re tr(P^H B) = ||B||_tr (incl. rank-deficient B)",
    "lemma.b_characterization": "maximizer P satisfies B = P (P^H B), P^H B >= 0",
    "von-neumann.trace": "|tr(B^H C)| <= sum sigma_i(B) sigma_i(C)",
    "von-neumann.equality": "C sharing singular vectors with B attains equality",
}

# Ratios lhs/rhs are only meaningful above rounding noise.
_RATIO_FLOOR = 1e-10


def parse_dims(text: str) -> list[tuple[int, int]]:
    out = []
    for item in text.replace(";", ",").split(","):
        item = item.strip()
        if not item:
            continue
        n, k = item.lower().split("x")
        out.append((int(n), int(k)))
    return out


@dataclass(frozen=True)
class FuzzConfig:
    """Parameters of one fuzz campaign.

    ``spectrum_style`` may be ``"prescribed-gap:<g>"`` (also written
    ``prescribed-gap(<g>)``); ``"mixed"`` picks a style per trial for both
    style fields.
    """

    seed: int = 0
    trials: int = 100
    dims: tuple[tuple[int, int], ...] = ((10, 3),)
    spectrum_style: str = "mixed"
    angle_style: str = "mixed"
    which: tuple[str, ...] = KINDS

    def __post_init__(self):
        if not isinstance(self.trials, int) or self.trials < 1:
            raise ValueError(f"trials must be a positive integer, got {self.trials!r}")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if not self.dims:
            raise ValueError("dims must not be empty")
        dims = tuple((int(n), int(k)) for n, k in self.dims)
        for n, k in dims:
            if not 1 <= k <= n:
                raise ValueError(f"invalid dimension pair n={n}, k={k}")
        object.__setattr__(self, "dims", dims)
        self._gap_value()  # validates spectrum_style
        if self.angle_style not in ANGLE_STYLES:
            raise ValueError(f"unknown angle_style {self.angle_style!r}")
        which = tuple(w for w in KINDS if w in set(self.which))
        unknown = set(self.which) - set(KINDS)
        if unknown or not which:
            raise ValueError(f"which must be a non-empty subset of {KINDS}")
        object.__setattr__(self, "which", which)

    def _gap_value(self) -> float | None:
        style = self.spectrum_style
        if style.startswith("prescribed-gap"):
            rest = style[len("prescribed-gap"):].strip("():")
            g = float(rest) if rest else 1.0
            if not g > 0:
                raise ValueError("prescribed gap must be positive")
            return g
        if style not in SPECTRUM_STYLES:
            raise ValueError(f"unknown spectrum_style {style!r}")
        return None

    def to_text(self) -> str:
        """Flat ``key=value`` lines."""
        lines = [
            f"seed={self.seed}",
            f"trials={self.trials}",
            "dims=" + ",".join(f"{n}x{k}" for n, k in self.dims),
            f"spectrum_style={self.spectrum_style}",
            f"angle_style={self.angle_style}",
            "which=" + ",".join(self.which),
        ]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "FuzzConfig":
        kw: dict = {}
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, _, value = line.partition("=")
            key, value = key.strip().replace("-", "_"), value.strip()
            if key in ("seed", "trials"):
                kw[key] = int(value, 0)
            elif key == "dims":
                kw[key] = tuple(parse_dims(value))
            elif key in ("spectrum_style", "angle_style"):
                kw[key] = value
            elif key == "which":
                kw[key] = tuple(v.strip() for v in value.split(",") if v.strip())
            else:
                raise ValueError(f"unknown config key {key!r}")
        return cls(**kw)


@dataclass
class FuzzReport:
    total: int
    checks_evaluated: int
    violations: list[dict]
    tightness: dict[str, dict]
    elapsed_seconds: float
    config: FuzzConfig = field(repr=False, default=None)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self, *, timing: bool = True) -> dict:
        d = {}
        if self.config is not None:
            c = self.config
            d["config"] = {
                "seed": c.seed,
                "trials": c.trials,
                "dims": [f"{n}x{k}" for n, k in c.dims],
                "spectrum_style": c.spectrum_style,
                "angle_style": c.angle_style,
                "which": list(c.which),
            }
        d |= {
            "total": self.total,
            "checks_evaluated": self.checks_evaluated,
            "violations": self.violations,
            "tightness": self.tightness,
        }
        if timing:
            d["elapsed_seconds"] = self.elapsed_seconds
        return d


def _digest(*arrays) -> str:
    h = hashlib.sha256()
    for a in arrays:
        a = np.ascontiguousarray(a)
        h.update(str(a.shape).encode())
        h.update(a.tobytes())
    return h.hexdigest()[:16]


def _pick(rng, style, choices):
    if style == "mixed":
        return choices[int(rng.integers(len(choices)))]
    return style


def _spectrum(rng, n, k, style, gap_value):
    style = _pick(rng, style, ("uniform", "clustered", "geometric", "prescribed-gap"))
    if style == "uniform":
        lam = np.sort(rng.uniform(-1.0, 1.0, n))[::-1]
    elif style == "clustered":
        top = 1.0 + 1e-3 * rng.uniform(-1, 1, k)
        bottom = -1.0 + 1e-3 * rng.uniform(-1, 1, n - k)
        lam = np.sort(np.concatenate([top, bottom]))[::-1]
    elif style == "geometric":
        lam = np.sort(10.0 ** -rng.uniform(0.0, 5.0, n) * rng.choice([-1.0, 1.0], n))[::-1]
    else:
        g = gap_value if gap_value is not None else 10.0 ** rng.uniform(-3.0, 0.0)
        lam = np.concatenate([g + rng.uniform(0.0, 1.0, k), -rng.uniform(0.0, 1.0, n - k)])
        lam = np.sort(lam)[::-1]
    lam = lam.copy()
    if k < n:
        # Keep the gap at k at least 1e-6 ||H||_2.
        need = 1e-6 * max(1e-300, float(np.max(np.abs(lam)))) * 1.5
        if lam[k - 1] - lam[k] < need:
            lam[k:] -= need - (lam[k - 1] - lam[k])
    scale = 10.0 ** rng.uniform(-2.0, 2.0)
    shift = rng.uniform(-1.0, 1.0) * scale
    return lam * scale + shift


def _angles(rng, n, k, style):
    style = _pick(rng, style, ("tiny", "moderate", "near-orthogonal", "antipodal"))
    budget = min(k, n - k)
    th = np.zeros(k)
    if style == "antipodal" or budget == 0:
        return th, "antipodal"
    m = int(rng.integers(1, budget + 1))
    if style == "tiny":
        vals = 10.0 ** rng.uniform(-6.5, -6.0, m)
    elif style == "moderate":
        vals = rng.uniform(0.01, 1.2, m)
    else:
        vals = np.pi / 2 - 10.0 ** rng.uniform(-7.0, -2.0, m)
    th[rng.permutation(k)[:m]] = vals
    return th, style


class _Collector:
    def __init__(self, trial, seed):
        self.trial = trial
        self.seed = seed
        self.items: list[tuple[Check, str]] = []

    def add(self, checks, digest):
        for c in checks:
            self.items.append((c, digest))


def _eig_trial(rng, n, k, cfg, tols, out):
    s_seed = int(rng.integers(2**63))
    lam = _spectrum(rng, n, k, cfg.spectrum_style, cfg._gap_value())
    u = haar_unitary(n, s_seed)
    h = (u * lam) @ u.conj().T
    h = 0.5 * (h + h.conj().T)
    p_star = StiefelFrame.from_array(u[:, :k])
    th, style = _angles(rng, n, k, cfg.angle_style)
    p = rotate_frame(p_star, th, int(rng.integers(2**63)), complement=u[:, k:])
    gauge = haar_unitary(k, int(rng.integers(2**63)))
    p = StiefelFrame.from_array(p.matrix @ gauge)
    dig = _digest(h, p.matrix)

    cert = certify_eigenspace(h, p, tols)
    out.add(cert.checks, dig)
    hp = h @ p.matrix
    perp = orthonormal_complement(p).matrix
    ident = float(np.linalg.norm(perp.conj().T @ hp)) if k < n else 0.0
    hnorm = float(np.max(np.abs(lam)))
    out.add(
        [
            Check("eig.fan", float(np.real(np.trace(p.matrix.conj().T @ hp))), float(np.sum(lam[:k])), hnorm * k),
            Check("eig.residual_identity", abs(cert.residual_f - ident), 0.0, hnorm),
        ],
        dig,
    )

    # Residual bound against a non-dominant invariant subspace.
    if k < n:
        idx = np.sort(rng.permutation(n)[:k])
        if np.array_equal(idx, np.arange(k)):
            idx[-1] = k
        rest = np.setdiff1d(np.arange(n), idx)
        q_star = StiefelFrame.from_array(u[:, idx])
        q = rotate_frame(q_star, th, int(rng.integers(2**63)), complement=u[:, rest])
        alt = certify_eigenspace_against(h, q, q_star, tols)
        out.add([Check("eig.invariant_lower", c.lhs, c.rhs, c.scale) for c in alt.checks if c.id == "eig.lower"],
                _digest(h, q.matrix))

    # Canonical-angle relations on (P, P_*, Z).
    z = gen_stiefel(n, k, int(rng.integers(2**63)))
    star_perp = StiefelFrame(u[:, k:], 0.0)
    perp_frame = StiefelFrame(perp, 0.0)
    a_pq = canonical_angles(p, p_star, tols, x_perp=perp_frame)
    a_qp = canonical_angles(p_star, p, tols, x_perp=star_perp)
    d_pz = canonical_angles(p, z, tols, x_perp=perp_frame).distF
    d_qz = canonical_angles(p_star, z, tols, x_perp=star_perp).distF
    out.add(
        [
            Check("angles.half_angle_lower", a_pq.half_angle_distF, a_pq.distF, 1.0),
            Check("angles.half_angle_upper", a_pq.distF, 2.0 * a_pq.half_angle_distF, 1.0),
            Check("angles.symmetry", float(np.max(np.abs(a_pq.thetas - a_qp.thetas))), 0.0, 1.0),
            Check("angles.triangle", d_pz, a_pq.distF + d_qz, 1.0),
        ],
        _digest(p.matrix, p_star.matrix, z.matrix),
    )


def _polar_instance(rng, n, k, cfg):
    ratio = 10.0 ** -rng.uniform(0.0, 4.0)
    sigma = np.geomspace(1.0, ratio, k) if k > 1 else np.array([1.0])
    sigma = sigma * 10.0 ** rng.uniform(-2.0, 2.0)
    b = gen_with_singular_values(n, k, sigma, int(rng.integers(2**63)))
    u, s, vh = np.linalg.svd(b, full_matrices=False)
    p_star = StiefelFrame.from_array(u @ vh)
    th, style = _angles(rng, n, k, cfg.angle_style)
    p = rotate_frame(p_star, th, int(rng.integers(2**63))).matrix
    mode = int(rng.integers(3))
    if style == "antipodal":
        w = -np.eye(k) if mode == 0 else haar_unitary(k, int(rng.integers(2**63)))
        p = p @ w
    elif mode == 1:
        # Rotate within the range so that P^H B becomes Hermitian positive definite.
        m = p.conj().T @ b
        mu, _, mvh = np.linalg.svd(m)
        p = p @ (mu @ mvh)
    elif mode == 2:
        p = p @ haar_unitary(k, int(rng.integers(2**63)))
    return b, StiefelFrame.from_array(p)


def _polar_trial(rng, n, k, cfg, tols, out):
    b, p = _polar_instance(rng, n, k, cfg)
    cert = certify_polar(b, p, tols)
    dig = _digest(b, p.matrix)
    kinds = set(cfg.which)
    keep = [c for c in cert.checks if c.id.split(".")[0] in kinds]
    out.add(keep, dig)


def _lemma_trial(rng, n, k, cfg, tols, out):
    b = (rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))) * 10.0 ** rng.uniform(-2, 2)
    p = gen_stiefel(n, k, int(rng.integers(2**63)))
    tr_norm = float(np.sum(np.linalg.svd(b, compute_uv=False)))
    obj = float(np.real(np.vdot(p.matrix, b)))
    out.add([Check("lemma.a", obj, tr_norm, tr_norm)], _digest(b, p.matrix))

    # Maximizer, rank deficient half of the time when k > 1.
    r = int(rng.integers(1, k)) if (k > 1 and rng.integers(2)) else k
    sig = np.sort(rng.uniform(0.1, 2.0, r))[::-1]
    b2 = gen_with_singular_values(n, k, np.concatenate([sig, np.zeros(k - r)]), int(rng.integers(2**63)))
    p2 = _maximizer(b2, r, int(rng.integers(2**63)))
    tn = float(np.sum(sig))
    obj2 = float(np.real(np.vdot(p2, b2)))
    m = p2.conj().T @ b2
    char = max(
        float(np.linalg.norm(m - m.conj().T)),
        -float(np.linalg.eigvalsh(0.5 * (m + m.conj().T))[0]),
        float(np.linalg.norm(b2 - p2 @ m)),
    )
    dig = _digest(b2, p2)
    out.add([Check("lemma.b_attained", abs(obj2 - tn), 0.0, tn), Check("lemma.b_characterization", char, 0.0, tn)], dig)


def _maximizer(b, r, seed):
    """A trace maximizer ``U_1 V_1^H + P2 V_2^H`` of a rank-r matrix b."""
    n, k = b.shape
    u, s, vh = np.linalg.svd(b, full_matrices=False)
    v = vh.conj().T
    p = u[:, :r] @ v[:, :r].conj().T
    if r < k:
        perp = orthonormal_complement(StiefelFrame.from_array(u[:, :r])).matrix
        w = gen_stiefel(n - r, k - r, seed).matrix
        p = p + (perp @ w) @ v[:, r:].conj().T
    return p


def _vn_trial(rng, n, k, cfg, tols, out):
    g = lambda: rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))  # noqa: E731
    b, c = g(), g()
    lhs, rhs = von_neumann_check(b, c)
    out.add([Check("von-neumann.trace", lhs, rhs, rhs)], _digest(b, c))
    u, s, vh = np.linalg.svd(b, full_matrices=False)
    c2 = (u * np.sort(rng.uniform(0.0, 3.0, k))[::-1]) @ vh
    lhs2, rhs2 = von_neumann_check(b, c2)
    out.add([Check("von-neumann.equality", rhs2, lhs2, rhs2)], _digest(b, c2))


def _run_trial(cfg: FuzzConfig, tols: Tolerances, index: int) -> _Collector:
    seed = trial_seed(cfg.seed, index)
    rng = make_rng(seed)
    n, k = cfg.dims[index % len(cfg.dims)]
    out = _Collector(index, seed)
    if "eig" in cfg.which:
        _eig_trial(rng, n, k, cfg, tols, out)
    if "polar" in cfg.which or "corollary" in cfg.which:
        _polar_trial(rng, n, k, cfg, tols, out)
    if "lemma" in cfg.which:
        _lemma_trial(rng, n, k, cfg, tols, out)
    if "von-neumann" in cfg.which:
        _vn_trial(rng, n, k, cfg, tols, out)
    return out


def _run_chunk(args):
    cfg, tols, indices = args
    return [_summarize(_run_trial(cfg, tols, i), tols) for i in indices]


def _summarize(col: _Collector, tols: Tolerances):
    rows = []
    for c, dig in col.items:
        ratio = c.ratio if c.rhs > _RATIO_FLOOR * max(1.0, abs(c.scale)) else None
        rows.append((c.id, c.lhs, c.rhs, c.slack, c.holds(tols.slack_tol), ratio, dig))
    return col.trial, col.seed, rows


def run_fuzz(
    config: FuzzConfig,
    tols: Tolerances = DEFAULT_TOLERANCES,
    *,
    workers: int = 1,
) -> FuzzReport:
    """Run a campaign and collect violations and tightness ratios.

    Violations are recorded, never raised. ``workers > 1`` spreads trials over
    processes; the report is identical either way.
    """
    start = time.perf_counter()
    indices = list(range(config.trials))
    if workers <= 1:
        results = _run_chunk((config, tols, indices))
    else:
        chunks = [indices[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_run_chunk, [(config, tols, c) for c in chunks]))
        results = sorted((r for part in parts for r in part), key=lambda r: r[0])

    violations = []
    ratios: dict[str, list[tuple[float, int, str]]] = {}
    evaluated = 0
    for trial, seed, rows in results:
        for cid, lhs, rhs, slack, ok, ratio, dig in rows:
            evaluated += 1
            if not ok:
                violations.append(
                    {"check_id": cid, "trial": trial, "seed": seed, "instance_digest": dig,
                     "lhs": lhs, "rhs": rhs, "slack": slack}
                )
            bucket = ratios.setdefault(cid, [])
            if ratio is not None:
                bucket.append((ratio, trial, dig))
    tightness = {}
    for cid in sorted(ratios):
        vals = ratios[cid]
        if vals:
            best = max(vals, key=lambda t: (t[0], -t[1]))
            tightness[cid] = {
                "count": len(vals),
                "max_ratio": best[0],
                "mean_ratio": math.fsum(v[0] for v in vals) / len(vals),
                "argmax_digest": best[2],
            }
        else:
            tightness[cid] = {"count": 0, "max_ratio": None, "mean_ratio": None, "argmax_digest": None}
    return FuzzReport(
        total=config.trials,
        checks_evaluated=evaluated,
        violations=violations,
        tightness=tightness,
        elapsed_seconds=time.perf_counter() - start,
        config=config,
    )
