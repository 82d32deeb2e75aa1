"""Analytic renormalization of the XXZ couplings under 3-site block decimation."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

BLOCK_SIZE = 3
ISING_GUARD = 1e12
CONVERGENCE_TOL = 1e-15


@dataclass(frozen=True)
class CouplingState:
    """Exchange coupling ``J`` and anisotropy ``delta`` at one RG step."""

    J: float
    delta: float

    def __post_init__(self):
        if not (self.J > 0.0):
            raise ValueError(f"J must be positive, got {self.J}")
        if not (self.delta >= 0.0):
            raise ValueError(f"delta must be non-negative, got {self.delta}")


class IsingLimitReached(ArithmeticError):
    """The anisotropy passed the overflow guard; the flow is at the Delta = inf fixed point."""


def q_of_delta(delta: float) -> float:
    """Amplitude ratio of the middle spin in the block ground state (negative root)."""
    if delta < 0.0:
        raise ValueError(f"delta must be non-negative, got {delta}")
    return -0.5 * (delta + math.sqrt(delta * delta + 8.0))


def dq_ddelta(delta: float) -> float:
    return -0.5 * (1.0 + delta / math.sqrt(delta * delta + 8.0))


def rg_step(c: CouplingState) -> CouplingState:
    if c.delta > ISING_GUARD:
        raise IsingLimitReached(f"delta={c.delta:.3e} exceeds the guard {ISING_GUARD:.0e}")
    q = q_of_delta(c.delta)
    q2 = q * q
    xi = 2.0 * q / (2.0 + q2)
    return CouplingState(c.J * xi * xi, c.delta * q2 / 4.0)


def delta_map(delta: float) -> float:
    q = q_of_delta(delta)
    return delta * q * q / 4.0


def d_delta_prime(delta: float) -> float:
    """Analytic derivative of the anisotropy map."""
    q = q_of_delta(delta)
    return q * q / 4.0 + delta * q * dq_ddelta(delta) / 2.0


@dataclass(frozen=True)
class RGTrajectory:
    """Couplings along the flow; ``steps[n]`` describes a chain of ``3**(n+1)`` sites.

    ``halted`` is ``"ising"`` when the overflow guard stopped the flow and
    ``"converged"`` when it settled onto the Delta = 0 fixed point.
    """

    steps: tuple[CouplingState, ...]
    halted: Optional[str] = None
    n_B: int = field(default=BLOCK_SIZE)

    def __len__(self) -> int:
        return len(self.steps)

    @staticmethod
    def effective_size(n: int) -> int:
        return BLOCK_SIZE ** (n + 1)

    def delta_at(self, n: int) -> float:
        """Anisotropy after ``n`` steps, extrapolating past an early halt."""
        if n < len(self.steps):
            return self.steps[n].delta
        if self.halted == "ising":
            return math.inf
        return self.steps[-1].delta


def rg_trajectory(c0: CouplingState, max_steps: int) -> RGTrajectory:
    if max_steps < 0:
        raise ValueError("max_steps must be non-negative")
    steps = [c0]
    halted = None
    for _ in range(max_steps):
        try:
            nxt = rg_step(steps[-1])
        except IsingLimitReached:
            halted = "ising"
            break
        prev = steps[-1].delta
        steps.append(nxt)
        if nxt.delta < 1.0 and abs(nxt.delta - prev) < CONVERGENCE_TOL:
            halted = "converged"
            break
    return RGTrajectory(tuple(steps), halted)


def flowed_delta(delta: float, n: int) -> float:
    """Anisotropy after ``n`` steps; ``inf`` once the Ising guard trips."""
    return rg_trajectory(CouplingState(1.0, delta), n).delta_at(n)


@dataclass(frozen=True)
class FixedPointReport:
    location: float
    stability: str
    derivative: float
    nu: Optional[float] = None


def correlation_length_exponent(n_B: int = BLOCK_SIZE) -> float:
    return math.log(n_B) / math.log(d_delta_prime(1.0))


def classify_fixed_points() -> list[FixedPointReport]:
    reports = []
    for loc in (0.0, 1.0):
        slope = d_delta_prime(loc)
        unstable = abs(slope) > 1.0
        reports.append(
            FixedPointReport(
                location=loc,
                stability="unstable" if unstable else "stable",
                derivative=slope,
                nu=correlation_length_exponent() if unstable else None,
            )
        )
    # Delta -> inf: delta'/delta ~ delta**2 / 4, the map derivative diverges but
    # 1/delta flows to zero, so the point attracts.
    reports.append(FixedPointReport(location=math.inf, stability="stable", derivative=math.inf))
    return reports
