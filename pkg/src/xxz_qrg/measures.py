"""Entanglement of the renormalized 3-site block: concurrence, EoF, site entropy."""
from __future__ import annotations

import math
import string
from dataclasses import dataclass

import numpy as np

from .flow import BLOCK_SIZE, flowed_delta, q_of_delta
from .hamiltonian import ISY, block_ground_state
from .linalg import eigh_symmetric, kron, sqrt_psd

# sigma^y (x) sigma^y is real: -(i sy) (x) (i sy)
YY = -kron(ISY, ISY)


def binary_entropy(p: float) -> float:
    """``-p log2 p - (1-p) log2 (1-p)`` with ``0 log 0 = 0``."""
    return von_neumann_entropy_of_spectrum([p, 1.0 - p])


def von_neumann_entropy_of_spectrum(probs) -> float:
    total = 0.0
    for p in probs:
        if p > 0.0:
            total -= p * math.log2(p)
    return total


def von_neumann_entropy(rho) -> float:
    w, _ = eigh_symmetric(rho)
    return von_neumann_entropy_of_spectrum(np.clip(w, 0.0, None))


def density_matrix(delta: float, partner: bool = False) -> np.ndarray:
    psi = block_ground_state(delta, partner).amplitudes
    return np.outer(psi, psi)


def partial_trace(rho, keep) -> np.ndarray:
    """Reduced density matrix on the 1-based sites in ``keep``."""
    rho = np.asarray(rho)
    dim = rho.shape[0]
    n = dim.bit_length() - 1
    if rho.shape != (dim, dim) or 2**n != dim:
        raise ValueError(f"expected a 2^n x 2^n matrix, got shape {rho.shape}")
    keep = sorted(set(keep))
    if not keep or keep[0] < 1 or keep[-1] > n:
        raise ValueError(f"keep must be a non-empty subset of sites 1..{n}, got {keep}")
    letters = string.ascii_letters
    row = list(letters[:n])
    col = list(letters[n : 2 * n])
    for site in range(1, n + 1):
        if site not in keep:
            col[site - 1] = row[site - 1]
    out = [row[s - 1] for s in keep] + [col[s - 1] for s in keep]
    reduced = np.einsum("".join(row) + "".join(col) + "->" + "".join(out), rho.reshape([2] * (2 * n)))
    k = 2 ** len(keep)
    return reduced.reshape(k, k)


def check_two_qubit_density(rho, tol: float = 1e-12) -> np.ndarray:
    rho = np.asarray(rho, dtype=float)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 density matrix, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.T)) > tol:
        raise ValueError("density matrix is not symmetric")
    if abs(np.trace(rho) - 1.0) > tol:
        raise ValueError(f"density matrix trace is {np.trace(rho)!r}, not 1")
    return rho


def wootters_concurrence(rho) -> float:
    """Two-qubit concurrence of a real density matrix.

    With ``m = sqrt(rho) (sy x sy) sqrt(rho)`` the spin-flip matrix is
    ``sqrt(rho) rho~ sqrt(rho) = m @ m``, so the square roots of its eigenvalues are
    ``|eig(m)|`` and no square root of a near-zero eigenvalue is ever taken.
    """
    rho = check_two_qubit_density(rho)
    root = sqrt_psd(rho, neg_tol=1e-12)
    m = root @ YY @ root
    m = 0.5 * (m + m.T)
    s = np.sort(np.abs(eigh_symmetric(m).eigenvalues))[::-1]
    return max(0.0, float(s[0] - s[1] - s[2] - s[3]))


def concurrence_closed_form(delta: float) -> float:
    if math.isinf(delta):
        return 0.0
    q = q_of_delta(delta)
    return 2.0 / (2.0 + q * q)


def entanglement_of_formation(c: float) -> float:
    if not 0.0 <= c <= 1.0:
        raise ValueError(f"concurrence must lie in [0, 1], got {c}")
    y = 0.5 + 0.5 * math.sqrt(1.0 - c * c)
    return binary_entropy(y)


def site2_populations(delta: float) -> tuple[float, float]:
    """Diagonal of the middle-site reduced density matrix (up, down)."""
    if math.isinf(delta):
        return 0.0, 1.0
    q2 = q_of_delta(delta) ** 2
    return 2.0 / (2.0 + q2), q2 / (2.0 + q2)


def entropy_site2(delta: float) -> float:
    """Middle-site entropy; ``log(1 - p)`` is taken as ``-log1p(2/q^2)`` to stay
    accurate deep in the Ising regime where ``p`` is tiny."""
    if math.isinf(delta):
        return 0.0
    q2 = q_of_delta(delta) ** 2
    up = 2.0 / (2.0 + q2)
    down = q2 / (2.0 + q2)
    h = (-up * math.log(up) + down * math.log1p(2.0 / q2)) / math.log(2.0)
    return min(h, 1.0)  # rounding can overshoot by an ulp near delta = 0


@dataclass(frozen=True)
class EntanglementReport:
    delta: float
    rg_step: int
    delta_n: float
    C13: float
    E_formation: float
    E_entropy: float

    @property
    def effective_size(self) -> int:
        return BLOCK_SIZE ** (self.rg_step + 1)


def renormalized_measures(delta0: float, n: int) -> EntanglementReport:
    """Block measures after ``n`` decimations, i.e. for a chain of ``3**(n+1)`` sites."""
    if n < 0:
        raise ValueError("n must be non-negative")
    dn = flowed_delta(delta0, n)
    c = concurrence_closed_form(dn)
    return EntanglementReport(delta0, n, dn, c, entanglement_of_formation(c), entropy_site2(dn))
