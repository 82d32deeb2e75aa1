"""Numeric defaults shared by the CLI and the verification suites."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional


@dataclass
class RunConfig:
    command: str = "sweep"
    delta_min: float = 0.0
    delta_max: float = 3.0
    points: int = 301
    steps: tuple[int, ...] = tuple(range(0, 7))
    measure: str = "all"
    out: Optional[str] = None
    tolerance: Optional[float] = None
    fit_min_step: int = 2
    fit_max_step: int = 12
    delta0: float = 1.0
    J0: float = 1.0

    def __post_init__(self):
        if not self.delta_min < self.delta_max:
            raise ValueError("delta-min must be smaller than delta-max")
        if self.points < 2:
            raise ValueError("points must be at least 2")
        if any(n < 0 for n in self.steps):
            raise ValueError("rg steps must be non-negative")
        if self.fit_min_step > self.fit_max_step:
            raise ValueError("fit-min-step must not exceed fit-max-step")

    def grid(self):
        import numpy as np

        return np.linspace(self.delta_min, self.delta_max, self.points)


# per-command defaults applied when the flag is not given
COMMAND_DEFAULTS: dict[str, dict] = {
    "sweep": dict(delta_min=0.0, delta_max=3.0, points=301, steps=tuple(range(0, 7))),
    "flow": dict(steps=(30,)),
    "derivative": dict(delta_min=0.5, delta_max=2.0, points=301, steps=tuple(range(0, 7)), measure="entropy"),
    "scaling": dict(steps=tuple(range(2, 13))),
    "qg": dict(delta_min=0.0, delta_max=3.0, points=301, steps=(1, 3, 5, 9)),
    "verify": dict(),
}


@dataclass(frozen=True)
class Tolerances:
    ed: float = 1e-10
    closed_form: float = 1e-12
    chain_rule: float = 1e-5
    effective_hamiltonian: float = 1e-10
    qg_invariance: float = 1e-14
    fd_step: float = 1e-7

    @classmethod
    def uniform(cls, tol: float) -> "Tolerances":
        return cls(tol, tol, tol, tol, tol)
