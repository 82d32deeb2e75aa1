"""Derivatives of renormalized entanglement, their minima and finite-size scaling."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize, stats

from .flow import BLOCK_SIZE, ISING_GUARD, correlation_length_exponent, d_delta_prime, delta_map, dq_ddelta, q_of_delta

MEASURES = ("entropy", "concurrence")
DEFAULT_BRACKET = (1.0, 2.0)
GRID_POINTS = 1000
LOCATE_TOL = 1e-10
EXPONENT_TOL = 0.03


def measure_derivative(delta: float, measure: str) -> float:
    """d(measure)/d(delta) of the bare block."""
    q = q_of_delta(delta)
    norm = 2.0 + q * q
    p = 2.0 / norm
    dp = -4.0 * q * dq_ddelta(delta) / (norm * norm)
    if measure == "concurrence":
        return dp
    if measure == "entropy":
        return math.log2((1.0 - p) / p) * dp
    raise ValueError(f"measure must be one of {MEASURES}, got {measure!r}")


def derivative_chain(delta: float, n: int, measure: str) -> float:
    """Derivative of the n-step renormalized measure with respect to the bare delta.

    Returns 0.0 once the flow trips the Ising guard; the measure is identically
    zero at that fixed point.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    factor = 1.0
    d = delta
    for _ in range(n):
        if d > ISING_GUARD:
            return 0.0
        factor *= d_delta_prime(d)
        d = delta_map(d)
    return factor * measure_derivative(d, measure)


@dataclass(frozen=True)
class DerivativeCurve:
    n: int
    measure: str
    samples: tuple[tuple[float, float], ...]


def derivative_curve(deltas, n: int, measure: str) -> DerivativeCurve:
    deltas = np.asarray(deltas, dtype=float)
    if np.any(np.diff(deltas) <= 0):
        raise ValueError("delta samples must be strictly increasing")
    return DerivativeCurve(n, measure, tuple((float(d), derivative_chain(d, n, measure)) for d in deltas))


class NoInteriorMinimum(ValueError):
    pass


def locate_minimum(n: int, measure: str, bracket=DEFAULT_BRACKET, points: int = GRID_POINTS,
                   tol: float = LOCATE_TOL, max_zoom: int = 8) -> tuple[float, float]:
    """Position and (signed) value of the minimum of the derivative curve in ``(lo, hi]``.

    A dense grid picks the basin and golden-section search refines it.  When the
    grid minimum sits on the first sample the left end of the interval is zoomed,
    since the minima crowd towards the critical point as ``n`` grows; if the curve
    is still falling at the open end itself there is no interior minimum.
    """
    lo, hi = bracket
    f_lo = derivative_chain(lo, n, measure)

    def f(x):
        return derivative_chain(x, n, measure)

    for _ in range(max_zoom + 1):
        grid = np.linspace(lo, hi, points + 1)[1:]
        vals = np.array([f(x) for x in grid])
        i = int(np.argmin(vals))
        if i == 0:
            if f_lo <= vals[0]:
                break
            hi = grid[1]
            continue
        if i == points - 1:
            raise NoInteriorMinimum(f"minimum of d{measure}/d(delta) at step {n} lies on the bracket edge {hi}")
        a, b, c = grid[i - 1], grid[i], grid[i + 1]
        res = optimize.minimize_scalar(f, bracket=(a, b, c), method="golden", tol=tol)
        x = float(res.x)
        if not a <= x <= c:
            raise NoInteriorMinimum(f"golden-section search left the grid cell at step {n}")
        return x, float(res.fun)
    raise NoInteriorMinimum(f"no interior minimum for step {n} in {bracket}")


@dataclass(frozen=True)
class ScalingFit:
    exponent: float
    intercept: float
    r2: float
    points: tuple[tuple[float, float], ...]  # (ln N, ln value)


def powerlaw_fit(points, mode: str = "magnitude") -> ScalingFit:
    """Least-squares line through log-log pairs.

    ``mode="position"`` fits ``ln(delta_m - 1)`` and reports the decay exponent
    with a positive sign; ``mode="magnitude"`` fits ``ln|value|``.
    """
    if len(points) < 4:
        raise ValueError(f"need at least 4 points, got {len(points)}")
    sizes = np.array([p[0] for p in points], dtype=float)
    vals = np.array([p[1] for p in points], dtype=float)
    if mode == "position":
        vals = vals - 1.0
        if np.any(vals <= 0):
            raise ValueError("position fit needs delta_m > 1 for every point")
        sign = -1.0
    elif mode == "magnitude":
        vals = np.abs(vals)
        if np.any(vals == 0):
            raise ValueError("magnitude fit needs non-zero values")
        sign = 1.0
    else:
        raise ValueError(f"mode must be 'position' or 'magnitude', got {mode!r}")
    if np.any(sizes <= 0):
        raise ValueError("system sizes must be positive")
    x, y = np.log(sizes), np.log(vals)
    reg = stats.linregress(x, y)
    return ScalingFit(sign * float(reg.slope), float(reg.intercept), float(reg.rvalue**2),
                      tuple(zip(x.tolist(), y.tolist())))


@dataclass(frozen=True)
class MinimumRecord:
    n: int
    N: int
    delta_m: float
    value: float


@dataclass(frozen=True)
class ScalingAnalysis:
    measure: str
    minima: tuple[MinimumRecord, ...]
    position: ScalingFit
    magnitude: ScalingFit


def analyze_measure(measure: str, steps, fit_min: int = 2, fit_max: int = 12,
                    bracket=DEFAULT_BRACKET) -> ScalingAnalysis:
    minima = []
    for n in steps:
        x, v = locate_minimum(n, measure, bracket)
        minima.append(MinimumRecord(n, BLOCK_SIZE ** (n + 1), x, v))
    window = [m for m in minima if fit_min <= m.n <= fit_max]
    pos = powerlaw_fit([(m.N, m.delta_m) for m in window], "position")
    mag = powerlaw_fit([(m.N, m.value) for m in window], "magnitude")
    return ScalingAnalysis(measure, tuple(minima), pos, mag)


@dataclass(frozen=True)
class NuCheck:
    nu: float
    inverse_nu: float
    theta_entropy: float
    theta_concurrence: float
    tolerance: float

    @property
    def entropy_ok(self) -> bool:
        return abs(self.theta_entropy - self.inverse_nu) <= self.tolerance

    @property
    def concurrence_ok(self) -> bool:
        return abs(self.theta_concurrence - self.inverse_nu) <= self.tolerance

    @property
    def passed(self) -> bool:
        return self.entropy_ok and self.concurrence_ok


def nu_cross_check(fit_min: int = 2, fit_max: int = 12, tolerance: float = EXPONENT_TOL) -> NuCheck:
    """Compare fitted magnitude exponents with ``1/nu`` from the linearized flow."""
    steps = range(fit_min, fit_max + 1)
    ent = analyze_measure("entropy", steps, fit_min, fit_max)
    con = analyze_measure("concurrence", steps, fit_min, fit_max)
    nu = correlation_length_exponent()
    return NuCheck(nu, 1.0 / nu, ent.magnitude.exponent, con.magnitude.exponent, tolerance)
