"""Small dense linear algebra: Jacobi eigensolver, Kronecker products, PSD square root.

All matrices are plain real ``numpy.ndarray`` objects.  The eigensolver splits the
input into the connected components of its sparsity graph (for the XXZ chain these
are the total-Sz sectors) and runs a cyclic Jacobi iteration on each component.
"""
from __future__ import annotations

from functools import reduce
from typing import NamedTuple

import numpy as np
from scipy.sparse.csgraph import connected_components

MAX_DIM = 4096
SYMMETRY_TOL = 1e-12
JACOBI_TOL = 1e-14
MAX_SWEEPS = 100
DEGENERACY_TOL = 1e-9


class EigenDecomposition(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


class JacobiConvergenceError(ArithmeticError):
    """Raised when the sweep cap is hit; carries the remaining off-diagonal norm."""

    def __init__(self, off_norm: float, sweeps: int):
        super().__init__(f"Jacobi did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:.3e})")
        self.off_norm = off_norm
        self.sweeps = sweeps


def _as_square(a) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {a.shape}")
    return a


def is_symmetric(a: np.ndarray, tol: float = SYMMETRY_TOL) -> bool:
    scale = max(1.0, float(np.max(np.abs(a)))) if a.size else 1.0
    return bool(np.max(np.abs(a - a.T)) <= tol * scale)


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Disjoint (p, q) pairings covering every index pair exactly once per sweep."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            p, q = players[i], players[m - 1 - i]
            if p < n and q < n:
                ps.append(min(p, q))
                qs.append(max(p, q))
        rounds.append((np.array(ps, dtype=int), np.array(qs, dtype=int)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def _off_norm(a: np.ndarray) -> float:
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def _jacobi(a: np.ndarray, tol: float, max_sweeps: int) -> tuple[np.ndarray, np.ndarray]:
    n = a.shape[0]
    a = a.copy()
    v = np.eye(n)
    if n == 1:
        return a.diagonal().copy(), v
    scale = float(np.linalg.norm(a))
    rounds = _round_robin(n)
    for _ in range(max_sweeps):
        if _off_norm(a) <= tol * scale:
            return a.diagonal().copy(), v
        for p, q in rounds:
            apq = a[p, q]
            active = apq != 0.0
            if not active.any():
                continue
            p, q, apq = p[active], q[active], apq[active]
            app, aqq = a[p, p], a[q, q]
            with np.errstate(over="ignore"):  # tiny apq: theta -> inf gives t = 0, as intended
                theta = (aqq - app) / (2.0 * apq)
                t = np.where(theta >= 0.0, 1.0, -1.0) / (np.abs(theta) + np.hypot(theta, 1.0))
            c = 1.0 / np.hypot(t, 1.0)
            s = t * c

            cols_p, cols_q = a[:, p].copy(), a[:, q].copy()
            a[:, p] = c * cols_p - s * cols_q
            a[:, q] = s * cols_p + c * cols_q
            rows_p, rows_q = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c[:, None] * rows_p - s[:, None] * rows_q
            a[q, :] = s[:, None] * rows_p + c[:, None] * rows_q
            # pivot block from the exact update keeps structural zeros exact
            a[p, p] = app - t * apq
            a[q, q] = aqq + t * apq
            a[p, q] = 0.0
            a[q, p] = 0.0

            vp, vq = v[:, p].copy(), v[:, q].copy()
            v[:, p] = c * vp - s * vq
            v[:, q] = s * vp + c * vq
    off = _off_norm(a)
    if off <= tol * scale:
        return a.diagonal().copy(), v
    raise JacobiConvergenceError(off, max_sweeps)


def eigh_symmetric(a, tol: float = JACOBI_TOL, max_sweeps: int = MAX_SWEEPS) -> EigenDecomposition:
    """Eigendecomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Eigenvalues are returned in ascending order with the matching orthonormal
    eigenvectors as columns.  Raises ``ValueError`` for non-square or asymmetric
    input and ``JacobiConvergenceError`` if ``max_sweeps`` is exhausted.
    """
    a = _as_square(a)
    n = a.shape[0]
    if n > MAX_DIM:
        raise ValueError(f"dimension {n} exceeds the cap of {MAX_DIM}")
    if not is_symmetric(a):
        raise ValueError(f"matrix is not symmetric (max asymmetry {np.max(np.abs(a - a.T)):.3e})")
    a = 0.5 * (a + a.T)

    n_comp, labels = connected_components(a != 0.0, directed=False)
    values = np.empty(n)
    vectors = np.zeros((n, n))
    start = 0
    for k in range(n_comp):
        idx = np.flatnonzero(labels == k)
        w, u = _jacobi(a[np.ix_(idx, idx)], tol, max_sweeps)
        cols = slice(start, start + idx.size)
        values[cols] = w
        vectors[idx, cols] = u
        start += idx.size
    order = np.argsort(values, kind="stable")
    return EigenDecomposition(values[order], vectors[:, order])


def kron(a, b, max_dim: int = MAX_DIM) -> np.ndarray:
    """Tensor product with ``a`` as the leftmost (most significant) factor."""
    a = np.atleast_2d(np.asarray(a))
    b = np.atleast_2d(np.asarray(b))
    rows, cols = a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]
    if max(rows, cols) > max_dim:
        raise ValueError(f"Kronecker product of size {rows}x{cols} exceeds the cap of {max_dim}")
    return np.kron(a, b)


def kron_all(*factors) -> np.ndarray:
    return reduce(kron, factors)


def sqrt_psd(a, neg_tol: float = 1e-10) -> np.ndarray:
    """Symmetric square root of a positive semidefinite matrix.

    Eigenvalues down to ``-neg_tol`` are treated as roundoff and clamped to zero;
    anything more negative raises ``ValueError``.
    """
    w, v = eigh_symmetric(a)
    if w[0] < -neg_tol:
        raise ValueError(f"matrix is not positive semidefinite (eigenvalue {w[0]:.3e})")
    root = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.T
    return 0.5 * (root + root.T)


def ground_cluster(values: np.ndarray, tol: float = DEGENERACY_TOL) -> int:
    """Number of ascending eigenvalues degenerate with the lowest one."""
    e0 = values[0]
    return int(np.count_nonzero(np.abs(values - e0) <= tol * max(1.0, abs(e0))))
