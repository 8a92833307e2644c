"""Numerical tolerances shared by all modules."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Tolerance set used by validation and certificate checks.

    All values are relative unless the field comment says otherwise.
    """

    frame_tol: float = 1e-8  # ||P^H P - I||_F, absolute
    decomp_tol: float = 1e-10
    hermitian_tol: float = 1e-10
    rank_tol: float = 1e-12
    gap_tol: float = 1e-10
    inv_tol: float = 1e-8
    char_tol: float = 1e-8
    range_tol: float = 1e-8  # distF, absolute
    eq_tol: float = 1e-9
    slack_tol: float = 1e-9

    def replace(self, **changes: float) -> "Tolerances":
        unknown = set(changes) - set(self.as_dict())
        if unknown:
            raise KeyError(f"unknown tolerance(s): {', '.join(sorted(unknown))}")
        return dataclasses.replace(self, **{k: float(v) for k, v in changes.items()})

    def as_dict(self) -> dict[str, float]:
        return dataclasses.asdict(self)


DEFAULT_TOLERANCES = Tolerances()
