"""Symmetric eigenvalue machinery with residual certificates.

The production path delegates to LAPACK (numpy.linalg.eigh); every result is
certified by an explicit residual bound.  A self-contained cyclic Jacobi
sweep is kept as an independent cross-check oracle for small matrices and is
exercised against the LAPACK path in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["SymSpectrum", "sym_eig", "sym_eig_max", "jacobi_eig", "NumericalError"]


class NumericalError(RuntimeError):
    """A numerical contract (symmetry, residual, convergence) was violated."""


@dataclass(frozen=True)
class SymSpectrum:
    """Sorted eigenvalues of a real symmetric matrix plus a residual bound."""

    eigenvalues: np.ndarray  # nondecreasing
    residual: float  # max ||M v - lambda v|| over the returned pairs


def _check_symmetric(M: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("expected a square matrix")
    scale = 1.0 + float(np.max(np.abs(M))) if M.size else 1.0
    if float(np.max(np.abs(M - M.T), initial=0.0)) > tol * scale:
        raise NumericalError("matrix is not symmetric within tolerance")
    return M


def sym_eig(M: np.ndarray, residual_tol: float = 1e-9) -> SymSpectrum:
    """Full spectrum of a real symmetric matrix, residual-certified."""
    M = _check_symmetric(M)
    vals, vecs = np.linalg.eigh(M)
    res = float(np.max(np.linalg.norm(M @ vecs - vecs * vals, axis=0), initial=0.0))
    bound = residual_tol * (1.0 + float(np.max(np.abs(vals), initial=0.0)))
    if res > bound:
        raise NumericalError(f"eigh residual {res:.3e} above tolerance {bound:.3e}")
    return SymSpectrum(eigenvalues=vals, residual=res)


def sym_eig_max(M: np.ndarray, residual_tol: float = 1e-9) -> float:
    """Largest eigenvalue of a real symmetric matrix."""
    return float(sym_eig(M, residual_tol).eigenvalues[-1])


def jacobi_eig(M: np.ndarray, tol: float = 1e-11, max_sweeps: int = 60) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.

    Row-cyclic sweeps with vectorized row/column updates; iterates until the
    off-diagonal Frobenius norm falls below tol * (1 + ||M||_F).  Intended as
    an independent oracle for n up to a few dozen.
    """
    A = _check_symmetric(M).copy()
    n = A.shape[0]
    if n == 1:
        return A.diagonal().copy()
    scale = 1.0 + float(np.linalg.norm(A))
    for _ in range(max_sweeps):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off <= tol * scale:
            return np.sort(np.diag(A))
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= 1e-300 * scale:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                elif theta == 0.0:
                    t = 1.0
                else:
                    t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rp = A[p, :].copy()
                rq = A[q, :].copy()
                A[p, :] = c * rp - s * rq
                A[q, :] = s * rp + c * rq
                cp = A[:, p].copy()
                cq = A[:, q].copy()
                A[:, p] = c * cp - s * cq
                A[:, q] = s * cp + c * cq
                A[p, q] = 0.0
                A[q, p] = 0.0
    raise NumericalError("Jacobi iteration did not converge")


def batched_eig_max(stack: np.ndarray) -> np.ndarray:
    """Largest eigenvalues of a stack (..., d, d) of symmetric matrices."""
    if stack.size == 0:
        return np.full(stack.shape[:-2], -np.inf)
    return np.linalg.eigvalsh(stack)[..., -1]
