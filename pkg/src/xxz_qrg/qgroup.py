"""Block RG with quantum-group boundary fields.

For a pure-phase ``q`` the boundary term ``-(q - 1/q)/2 (sz_1 - sz_3)`` is
anti-Hermitian, so the block Hamiltonian is complex *symmetric* rather than
Hermitian.  Its left eigenvectors are transposes of the right ones, and the
natural normalization is the bilinear one, ``psi^T psi = 1``; that is the
prefactor ``1/sqrt(2(q + 1/q + 1))``.  Reduced density matrices use the Hermitian
norm instead.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .flow import CouplingState
from .hamiltonian import ID2, ISY, SECTOR_DOWN, SECTOR_UP, SX, SZ, bond_op, site_op
from .linalg import kron
from .measures import entropy_site2, von_neumann_entropy_of_spectrum
from .flow import flowed_delta


@dataclass(frozen=True)
class QGCoupling:
    """``J`` and the quantum-group parameter ``q`` with ``delta = (q + 1/q)/2``.

    ``|q| = 1`` covers the critical line ``0 <= delta <= 1``; real ``q > 1`` the
    gapped side.
    """

    J: float
    q: complex

    def __post_init__(self):
        if not self.J > 0.0:
            raise ValueError(f"J must be positive, got {self.J}")
        q = complex(self.q)
        if q == 0:
            raise ValueError("q must be non-zero")
        critical = math.isclose(abs(q), 1.0, abs_tol=1e-12)
        gapped = abs(q.imag) <= 1e-12 and q.real > 1.0
        if not (critical or gapped):
            raise ValueError(f"q must be a unit phase or real > 1, got {q}")
        if abs((q + 1 / q).imag) > 1e-12:
            raise ValueError("delta = (q + 1/q)/2 must be real")

    @property
    def delta(self) -> float:
        q = complex(self.q)
        return ((q + 1 / q) / 2).real

    @property
    def critical(self) -> bool:
        return math.isclose(abs(complex(self.q)), 1.0, abs_tol=1e-12)


def qg_from_delta(delta: float, J: float = 1.0) -> QGCoupling:
    if delta < 0.0:
        raise ValueError(f"delta must be non-negative, got {delta}")
    if delta <= 1.0:
        return QGCoupling(J, cmath.exp(1j * math.acos(delta)))
    return QGCoupling(J, delta + math.sqrt(delta * delta - 1.0))


def _half_fields(q: complex) -> tuple[complex, complex]:
    """``(q + 1/q)/2`` and ``(q - 1/q)/2``."""
    q = complex(q)
    return (q + 1 / q) / 2, (q - 1 / q) / 2


def _maybe_real(h: np.ndarray) -> np.ndarray:
    if np.max(np.abs(h.imag)) == 0.0:
        return h.real.copy()
    return h


def qg_bond(i: int, j: int, n_sites: int, q: complex) -> np.ndarray:
    d, b = _half_fields(q)
    h = (
        bond_op(SX, i, SX, j, n_sites)
        - bond_op(ISY, i, ISY, j, n_sites)
        + d * bond_op(SZ, i, SZ, j, n_sites)
        - b * (site_op(SZ, i, n_sites) - site_op(SZ, j, n_sites))
    )
    return np.asarray(h, dtype=complex)


def build_qg_chain_hamiltonian(n_sites: int, J: float, q: complex) -> np.ndarray:
    """Open chain with the boundary-field term on every bond."""
    if not 2 <= n_sites <= 12:
        raise ValueError(f"n_sites must lie in [2, 12], got {n_sites}")
    if complex(q) == 0:
        raise ValueError("q must be non-zero")
    h = sum(qg_bond(i, i + 1, n_sites, q) for i in range(1, n_sites))
    return _maybe_real(0.25 * J * h)


def build_qg_block_hamiltonian(J: float, q: complex) -> np.ndarray:
    return build_qg_chain_hamiltonian(3, J, q)


def qg_ground_energy(c: QGCoupling) -> float:
    q = complex(c.q)
    return (-0.25 * c.J * (2 + q + 1 / q)).real


def qg_xi(c: QGCoupling) -> float:
    q = complex(c.q)
    s = q + 1 / q
    den = 2 * (s + 1)
    if abs(den) < 1e-14:
        raise ZeroDivisionError("q + 1/q + 1 vanishes")
    return ((s + 2) / den).real


def qg_rg_step(c: QGCoupling) -> QGCoupling:
    xi = qg_xi(c)
    return QGCoupling(xi * xi * c.J, c.q)


def qg_trajectory(c: QGCoupling, n: int) -> list[QGCoupling]:
    out = [c]
    for _ in range(n):
        out.append(qg_rg_step(out[-1]))
    return out


@dataclass(frozen=True)
class QGGroundState:
    amplitudes: np.ndarray
    partner: bool


def _raw_amplitudes(q: complex) -> tuple[complex, complex, complex]:
    s = np.sqrt(complex(q))  # principal branch: exp(i gamma/2) or sqrt of real q
    return -s, s + 1 / s, -1 / s


def qg_ground_state(c: QGCoupling, partner: bool = False) -> QGGroundState:
    """Doubly degenerate block ground state, unit norm in the Hermitian sense."""
    psi = np.zeros(8, dtype=complex)
    psi[list(SECTOR_DOWN if partner else SECTOR_UP)] = _raw_amplitudes(c.q)
    psi /= np.linalg.norm(psi)
    return QGGroundState(psi, partner)


def qg_bilinear_projector(c: QGCoupling) -> np.ndarray:
    """8x2 matrix of the two ground states normalized as ``psi^T psi = 1``."""
    cols = []
    for partner in (False, True):
        psi = np.zeros(8, dtype=complex)
        psi[list(SECTOR_DOWN if partner else SECTOR_UP)] = _raw_amplitudes(c.q)
        cols.append(psi / np.sqrt(psi @ psi))
    return np.column_stack(cols)


def qg_effective_two_block(c: QGCoupling) -> np.ndarray:
    """``P^T (h_1 + h_2 + h_34) P`` for two blocks with the bilinear projector."""
    hb = build_qg_block_hamiltonian(c.J, c.q)
    h = kron(hb, np.eye(8)) + kron(np.eye(8), hb) + 0.25 * c.J * qg_bond(3, 4, 6, c.q)
    p = qg_bilinear_projector(c)
    pp = np.kron(p, p)
    return pp.T @ h @ pp


def qg_site2_populations(c: QGCoupling) -> tuple[float, float]:
    """Middle-site (up, down) populations of the block ground state."""
    psi = qg_ground_state(c).amplitudes
    weights = np.abs(psi) ** 2
    up = sum(weights[i] for i in SECTOR_UP if (i >> 1) & 1 == 0)
    return float(up), float(1.0 - up)


def qg_entropy(delta: float, n: int = 0) -> float:
    """Middle-site entropy at RG step ``n``.

    On the critical line ``q`` does not flow, so the value is that of the bare
    block for every ``n``.  For ``delta > 1`` the anisotropy is carried by the
    ordinary decimation flow and the entropy is taken at the flowed coupling;
    at ``delta = 1`` both blocks coincide (``q = 1``).
    """
    if delta < 0.0:
        raise ValueError(f"delta must be non-negative, got {delta}")
    if n < 0:
        raise ValueError("n must be non-negative")
    if delta <= 1.0:
        return von_neumann_entropy_of_spectrum(qg_site2_populations(qg_from_delta(delta)))
    return entropy_site2(flowed_delta(delta, n))


def qg_sweep(deltas, n: int) -> list[tuple[float, float]]:
    return [(float(d), qg_entropy(float(d), n)) for d in deltas]
