"""XXZ chain and 3-site block Hamiltonians, the block projector and renormalized spins.

Basis convention: site 1 is the most significant bit of the state index and
spin up is bit 0, so ``|up up down>`` has index 1.  Every operator is real; the
``yy`` coupling is ``-(i sy) (x) (i sy)`` with ``i sy = [[0, 1], [-1, 0]]``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .flow import CouplingState, q_of_delta
from .linalg import kron, kron_all

SX = np.array([[0.0, 1.0], [1.0, 0.0]])
ISY = np.array([[0.0, 1.0], [-1.0, 0.0]])
SZ = np.array([[1.0, 0.0], [0.0, -1.0]])
ID2 = np.eye(2)
PAULI = {"x": SX, "y": ISY, "z": SZ}

MAX_SITES = 12

# indices of the Sz = +1/2 and -1/2 block states in the order used by the ground states
SECTOR_UP = (0b001, 0b010, 0b100)    # |uud>, |udu>, |duu>
SECTOR_DOWN = (0b011, 0b101, 0b110)  # |udd>, |dud>, |ddu>


def site_op(op: np.ndarray, site: int, n_sites: int) -> np.ndarray:
    """``op`` acting on 1-based ``site`` of an ``n_sites`` chain."""
    factors = [ID2] * n_sites
    factors[site - 1] = op
    return kron_all(*factors)


def bond_op(op_a: np.ndarray, i: int, op_b: np.ndarray, j: int, n_sites: int) -> np.ndarray:
    factors = [ID2] * n_sites
    factors[i - 1] = op_a
    factors[j - 1] = op_b
    return kron_all(*factors)


def xxz_bond(i: int, j: int, n_sites: int, delta: float) -> np.ndarray:
    """``sx sx + sy sy + delta sz sz`` on the bond (i, j)."""
    return (
        bond_op(SX, i, SX, j, n_sites)
        - bond_op(ISY, i, ISY, j, n_sites)
        + delta * bond_op(SZ, i, SZ, j, n_sites)
    )


def total_sz(n_sites: int) -> np.ndarray:
    return 0.5 * sum(site_op(SZ, i, n_sites) for i in range(1, n_sites + 1))


def build_chain_hamiltonian(n_sites: int, coupling: CouplingState, boundary: str = "periodic") -> np.ndarray:
    if not 2 <= n_sites <= MAX_SITES:
        raise ValueError(f"n_sites must lie in [2, {MAX_SITES}], got {n_sites}")
    if boundary not in ("periodic", "open"):
        raise ValueError(f"boundary must be 'periodic' or 'open', got {boundary!r}")
    bonds = [(i, i + 1) for i in range(1, n_sites)]
    if boundary == "periodic" and n_sites > 2:
        bonds.append((n_sites, 1))
    h = sum(xxz_bond(i, j, n_sites, coupling.delta) for i, j in bonds)
    return 0.25 * coupling.J * h


def build_block_hamiltonian(coupling: CouplingState) -> np.ndarray:
    return build_chain_hamiltonian(3, coupling, "open")


def block_ground_energy(coupling: CouplingState) -> float:
    d = coupling.delta
    return -0.25 * coupling.J * (d + np.sqrt(d * d + 8.0))


@dataclass(frozen=True)
class BlockGroundState:
    amplitudes: np.ndarray
    partner: bool
    q: float


def block_ground_state(delta: float, partner: bool = False) -> BlockGroundState:
    """``(|uud> + q|udu> + |duu>)`` or its spin-flipped partner, normalized."""
    q = q_of_delta(delta)
    psi = np.zeros(8)
    psi[list(SECTOR_DOWN if partner else SECTOR_UP)] = (1.0, q, 1.0)
    psi /= np.sqrt(2.0 + q * q)
    return BlockGroundState(psi, partner, q)


@dataclass(frozen=True)
class Projector:
    """8x2 isometry; column 0 becomes the renamed block state up, column 1 down."""

    matrix: np.ndarray
    q: float


def build_projector(delta: float) -> Projector:
    up = block_ground_state(delta, partner=False)
    down = block_ground_state(delta, partner=True)
    return Projector(np.column_stack([up.amplitudes, down.amplitudes]), up.q)


def renormalize_operator(p: Projector, site: int, axis: str) -> np.ndarray:
    """Block spin ``sigma^axis`` on ``site`` projected onto the kept doublet.

    The result equals ``xi * sigma'^axis`` in the renamed basis (real ``i sy``
    convention for ``axis="y"``).
    """
    if site not in (1, 2, 3):
        raise ValueError(f"site must be 1, 2 or 3, got {site}")
    op = site_op(PAULI[axis], site, 3)
    return p.matrix.T @ op @ p.matrix


def renormalization_factor(p: Projector, site: int, axis: str) -> float:
    m = renormalize_operator(p, site, axis)
    ref = PAULI[axis]
    return float(np.sum(m * ref) / np.sum(ref * ref))


def xi_closed_form(q: float, site: int, axis: str) -> float:
    norm = 2.0 + q * q
    if axis in ("x", "y"):
        return (2.0 / norm) if site == 2 else (2.0 * q / norm)
    return ((2.0 - q * q) / norm) if site == 2 else (q * q / norm)


def two_block_hamiltonian(coupling: CouplingState) -> np.ndarray:
    """Two adjacent open blocks (6 sites): intra-block terms plus the 3-4 bond."""
    hb = build_block_hamiltonian(coupling)
    inter = 0.25 * coupling.J * xxz_bond(3, 4, 6, coupling.delta)
    return kron(hb, np.eye(8)) + kron(np.eye(8), hb) + inter


def effective_two_block_hamiltonian(coupling: CouplingState) -> np.ndarray:
    """``(P0 x P0)^T H (P0 x P0)`` for two blocks; a 4x4 two-site operator."""
    p = build_projector(coupling.delta).matrix
    pp = kron(p, p)
    return pp.T @ two_block_hamiltonian(coupling) @ pp
