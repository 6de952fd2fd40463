"""Dense complex linear algebra used by the rest of the package.

Matrices and vectors are plain ``numpy`` arrays of dtype ``complex128``.
Inner products are linear in the first argument and conjugate-linear in the
second, ``inner(u, v) = sum(u * conj(v))``, so that ``<Ax, x>`` is written
``inner(A @ x, x)``.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import (
    NonFiniteError,
    NotHermitianError,
    ShapeError,
    ZeroOperatorError,
)

__all__ = [
    "EigenPair",
    "as_matrix",
    "as_square",
    "as_vector",
    "adjoint",
    "inner",
    "hermitian_eig_max",
    "jacobi_eigh",
    "operator_norm",
    "max_singular_subspace",
    "is_zero",
]

HERMITIAN_TOL = 1e-12
JACOBI_TOL = 1e-13
SUBSPACE_TOL = 1e-8


class EigenPair(NamedTuple):
    value: float
    vector: np.ndarray


def as_matrix(a) -> np.ndarray:
    """Return ``a`` as a finite 2-d complex array, raising on anything else."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise ShapeError(f"expected a non-empty 2-d matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NonFiniteError("matrix has non-finite entries")
    return m


def as_square(a) -> np.ndarray:
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {m.shape}")
    return m


def as_vector(v) -> np.ndarray:
    x = np.asarray(v, dtype=complex)
    if x.ndim != 1 or x.shape[0] < 1:
        raise ShapeError(f"expected a non-empty 1-d vector, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise NonFiniteError("vector has non-finite entries")
    return x


def is_zero(a: np.ndarray) -> bool:
    return not np.any(a)


def adjoint(a) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(a).conj().T


def inner(u, v) -> complex:
    """Hilbert-space inner product ``<u, v>``, linear in ``u``."""
    u = as_vector(u)
    v = as_vector(v)
    if u.shape != v.shape:
        raise ShapeError(f"dimension mismatch: {u.shape[0]} vs {v.shape[0]}")
    return complex(np.vdot(v, u))


def _check_hermitian(h: np.ndarray) -> np.ndarray:
    h = as_square(h)
    scale = max(1.0, float(np.max(np.abs(h))))
    dev = float(np.max(np.abs(h - h.conj().T)))
    if dev > HERMITIAN_TOL * scale:
        raise NotHermitianError(f"matrix is not Hermitian (max |H - H*| = {dev:.3e})")
    return 0.5 * (h + h.conj().T)


def jacobi_eigh(h, tol: float = JACOBI_TOL, max_sweeps: int = 100):
    """Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi.

    Returns ``(values, vectors)`` with ascending eigenvalues and orthonormal
    eigenvector columns, the same layout as ``numpy.linalg.eigh``.  Sweeps stop
    once the off-diagonal Frobenius mass drops below ``tol * ||H||_F``.
    """
    a = _check_hermitian(h).copy()
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    fro = np.linalg.norm(a)
    if fro == 0.0 or n == 1:
        return np.real(np.diag(a)).copy(), v
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off < tol * fro:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                r = abs(g)
                if r < 1e-300:
                    continue
                u = g / r
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # phase diag(1, conj(u)) makes a[p, q] real, then a real rotation
                rot = np.array([[c, s], [-s * np.conj(u), c * np.conj(u)]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = rot.conj().T @ a[idx, :]
                v[:, idx] = v[:, idx] @ rot
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    w = np.real(np.diag(a))
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def hermitian_eig_max(h, method: str = "lapack") -> EigenPair:
    """Largest eigenvalue of a Hermitian matrix and a unit eigenvector for it.

    ``method="lapack"`` uses ``numpy.linalg.eigh``; ``method="jacobi"`` uses the
    package's own cyclic Jacobi solver.
    """
    hs = _check_hermitian(h)
    if method == "lapack":
        w, vecs = np.linalg.eigh(hs)
    elif method == "jacobi":
        w, vecs = jacobi_eigh(hs)
    else:
        raise ValueError(f"unknown eigensolver {method!r}")
    z = vecs[:, -1]
    return EigenPair(float(w[-1]), z / np.linalg.norm(z))


def operator_norm(a) -> float:
    """Largest singular value; 0 for the zero matrix."""
    m = as_matrix(a)
    if is_zero(m):
        return 0.0
    return float(np.linalg.norm(m, 2))


def max_singular_subspace(a, tol: float = SUBSPACE_TOL) -> np.ndarray:
    """Orthonormal basis (as columns) of the top right-singular subspace of ``a``.

    Singular directions whose squared singular value is within ``tol * s_max**2``
    of ``s_max**2`` are kept.
    """
    m = as_matrix(a)
    if is_zero(m):
        raise ZeroOperatorError("maximal singular subspace of the zero matrix")
    _, s, vh = np.linalg.svd(m)
    s2 = s**2
    keep = s2 >= s2[0] * (1.0 - tol)
    return vh[keep].conj().T
