"""A named inequality ``lhs <= rhs`` evaluated on one instance."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Check:
    """One evaluated inequality ``lhs <= rhs``.

    Equalities are encoded as ``|difference| <= 0``. ``scale`` sets the size
    of the relative slack tolerance: the check passes when
    ``rhs - lhs >= -slack_tol * max(1, scale)``.
    """

    id: str
    lhs: float
    rhs: float
    scale: float = 1.0

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    def holds(self, slack_tol: float) -> bool:
        return self.slack >= -slack_tol * max(1.0, abs(self.scale))

    @property
    def ratio(self) -> float | None:
        """``lhs / rhs`` for inequalities with a positive right side."""
        if self.rhs > 0.0:
            return self.lhs / self.rhs
        return None
