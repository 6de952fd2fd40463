"""Seeded random generators for the special matrix classes used in checks.

Entries are i.i.d. complex standard normal (real and imaginary parts each
N(0, 1/2)).  Every generator takes a ``numpy.random.Generator`` so callers
control reproducibility.
"""

from __future__ import annotations

import numpy as np

from .radius import as_rho, block_embed, numerical_radius, rho_radius_value


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def random_matrix(rng, n):
    return complex_gaussian(rng, (n, n))


def random_unitary(rng, n):
    """Haar unitary from the QR factorisation of a Gaussian matrix."""
    q, r = np.linalg.qr(complex_gaussian(rng, (n, n)))
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_normal(rng, n):
    u = random_unitary(rng, n)
    return (u * complex_gaussian(rng, n)) @ u.conj().T


def random_nilpotent(rng, n):
    """Square-zero matrix: 2x2 strictly upper blocks conjugated by a unitary."""
    core = np.zeros((n, n), dtype=complex)
    for k in range(0, n - 1, 2):
        core[k, k + 1] = complex_gaussian(rng, ())
    u = random_unitary(rng, n)
    return u @ core @ u.conj().T


def orthogonal_partner(rng, a, rho):
    """A random ``B`` with ``A`` w_rho-orthogonal to ``B``.

    With ``z = [x; y]`` attaining ``w(block_embed(A))`` and
    ``v = sqrt(rho(2-rho)) x + (1-rho) y``, any ``B`` with ``<By, v> = 0`` keeps
    ``(2/rho) |<(A + gamma B) y, v>| = w_rho(A)`` for every gamma.
    """
    r = as_rho(rho)
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    z = numerical_radius(block_embed(a, r)).attaining_vector
    x, y = z[:n], z[n:]
    alpha, beta = r.coefficients
    v = alpha * x + beta * y
    b = random_matrix(rng, n)
    by_v = np.vdot(v, b @ y)
    return b - (by_v / (np.vdot(y, y).real * np.vdot(v, v).real)) * np.outer(v, y.conj())


def norm_orthogonal_partner(rng, a):
    """A random ``B`` with ``<Az, Bz> = 0`` for the top right-singular vector ``z``."""
    a = np.asarray(a, dtype=complex)
    _, _, vh = np.linalg.svd(a)
    z = vh[0].conj()
    az = a @ z
    b = random_matrix(rng, a.shape[0])
    return b - (np.vdot(az, b @ z) / np.vdot(az, az).real) * np.outer(az, z.conj())


def parallel_pair(rng, n, rho):
    """A random pair ``(A, B)`` with ``A`` w_rho-parallel to ``B``.

    Block-diagonal ``A = A1 + A2``, ``B = c e^{i phi} A1 + B2`` with the second
    blocks scaled below the first, conjugated by a random unitary.  Uses
    ``w_rho(X + Y) = max(w_rho(X), w_rho(Y))`` for direct sums.
    """
    r = as_rho(rho)
    k = max(1, n - 1)
    a1 = random_matrix(rng, k)
    w1 = rho_radius_value(a1, r)
    c = 0.5 + rng.random()
    phase = np.exp(2j * np.pi * rng.random())
    a = np.zeros((n, n), dtype=complex)
    b = np.zeros((n, n), dtype=complex)
    a[:k, :k] = a1
    b[:k, :k] = c * phase * a1
    if n > k:
        a2 = random_matrix(rng, n - k)
        b2 = random_matrix(rng, n - k)
        a[k:, k:] = 0.4 * w1 * a2 / rho_radius_value(a2, r)
        b[k:, k:] = 0.4 * c * w1 * b2 / rho_radius_value(b2, r)
    u = random_unitary(rng, n)
    return u @ a @ u.conj().T, u @ b @ u.conj().T
