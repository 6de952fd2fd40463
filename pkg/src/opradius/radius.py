"""Numerical radius and rho-radius of complex matrices.

The numerical radius is computed from the support function of the numerical
range,

    f(theta) = lambda_max((e^{i theta} T + e^{-i theta} T^*) / 2),

whose maximum over theta equals ``w(T)``.  ``f`` is sampled on a uniform grid
and every sample that could sit next to the global maximum is refined by
golden-section search.  The rho-radius reduces to a numerical radius through

    w_rho(X) = (2 / rho) * w([[0, sqrt(rho (2 - rho)) X], [0, (1 - rho) X]]).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._search import golden_max
from .errors import RhoConditioningError, RhoError, ZeroOperatorError
from .linalg import as_square, is_zero

__all__ = [
    "RHO_FLOOR",
    "RhoParam",
    "RadiusCertificate",
    "as_rho",
    "numerical_radius",
    "block_embed",
    "rho_radius",
    "rho_radius_value",
    "rho_radius_batch",
    "attaining_vectors",
]

RHO_FLOOR = 1e-3
DEFAULT_TOL = 1e-9
GRID_POINTS = 720
THETA_WIDTH = 1e-12
MAX_CANDIDATES = 64

# bytes of Hermitian stacks handed to eigvalsh in one call
_CHUNK_BYTES = 1 << 25


@dataclass(frozen=True)
class RhoParam:
    """A validated rho in [RHO_FLOOR, 2]."""

    value: float

    def __post_init__(self):
        v = float(self.value)
        if not math.isfinite(v) or v <= 0.0 or v > 2.0:
            raise RhoError(f"rho must lie in (0, 2], got {self.value!r}")
        if v < RHO_FLOOR:
            raise RhoConditioningError(
                f"rho={v:g} is below the conditioning floor {RHO_FLOOR:g}; "
                "the 2/rho scaling of the block reduction loses precision there"
            )
        object.__setattr__(self, "value", v)

    @property
    def amplification(self) -> float:
        """Factor 2/rho by which block-level errors are magnified."""
        return 2.0 / self.value

    @property
    def coefficients(self) -> tuple[float, float]:
        """The block coefficients (sqrt(rho (2 - rho)), 1 - rho)."""
        r = self.value
        return math.sqrt(max(r * (2.0 - r), 0.0)), 1.0 - r


def as_rho(rho) -> RhoParam:
    return rho if isinstance(rho, RhoParam) else RhoParam(rho)


@dataclass(frozen=True)
class RadiusCertificate:
    radius: float
    theta_star: float
    attaining_vector: np.ndarray
    residual: float


# --------------------------------------------------------------------------
# batched support-function maximisation


def _hermitian_parts(t: np.ndarray):
    """Split T = P + iQ with P, Q Hermitian (works on stacks)."""
    th = np.conj(np.swapaxes(t, -1, -2))
    return 0.5 * (t + th), -0.5j * (t - th)


def _lam_max(p, q, idx, theta):
    c = np.cos(theta)[:, None, None]
    s = np.sin(theta)[:, None, None]
    return np.linalg.eigvalsh(c * p[idx] - s * q[idx])[:, -1]


def _grid_values(p, q, grid_points):
    """f on the uniform grid 2 pi k / grid_points for every matrix in the stack.

    H(theta + pi) = -H(theta), so for an even grid one eigen-solve per angle in
    [0, pi) yields both f(theta) = max eig and f(theta + pi) = -min eig.
    """
    m, d, _ = p.shape
    half = grid_points // 2 if grid_points % 2 == 0 else grid_points
    thetas = 2.0 * math.pi * np.arange(half) / grid_points
    c = np.cos(thetas)[None, :, None, None]
    s = np.sin(thetas)[None, :, None, None]
    per_matrix = half * d * d * 16
    step = max(1, _CHUNK_BYTES // per_matrix)
    out = np.empty((m, grid_points))
    for lo in range(0, m, step):
        hi = min(m, lo + step)
        w = np.linalg.eigvalsh(c * p[lo:hi, None] - s * q[lo:hi, None])
        out[lo:hi, :half] = w[..., -1]
        if half != grid_points:
            out[lo:hi, half:] = -w[..., 0]
    return out


def _select_candidates(vals, h, scales):
    """Grid indices that may neighbour the global maximum, per matrix.

    ``f`` dominates ``w cos(theta - theta*)`` so the grid point nearest the
    maximiser keeps at least ``max * cos(h/2)``.
    """
    owners, centers = [], []
    plateau = np.zeros(vals.shape[0], dtype=bool)
    drop = 1.0 - math.cos(h / 2.0)
    for k, row in enumerate(vals):
        gmax = row.max()
        eps = 1e-13 * scales[k]
        if gmax - row.min() <= eps:
            plateau[k] = True
            continue
        cand = np.flatnonzero(row >= gmax - abs(gmax) * drop - eps)
        if cand.size > MAX_CANDIDATES:
            left = np.roll(row, 1)[cand]
            right = np.roll(row, -1)[cand]
            peaks = cand[(row[cand] >= left) & (row[cand] >= right)]
            cand = peaks if peaks.size else cand
            if cand.size > MAX_CANDIDATES:
                cand = cand[np.argsort(-row[cand], kind="stable")[:MAX_CANDIDATES]]
        owners.append(np.full(cand.size, k))
        centers.append(cand)
    if owners:
        return np.concatenate(owners), np.concatenate(centers), plateau
    return np.zeros(0, dtype=int), np.zeros(0, dtype=int), plateau


def _support_maxima(t_stack: np.ndarray, grid_points: int = GRID_POINTS):
    """Locate the maxima of the support function for a stack of matrices.

    Returns ``(best_theta, best_value, owners, thetas, values)`` where the last
    three arrays list every refined local candidate.
    """
    t_stack = np.asarray(t_stack, dtype=complex)
    p, q = _hermitian_parts(t_stack)
    m = t_stack.shape[0]
    grid = 2.0 * math.pi * np.arange(grid_points) / grid_points
    h = 2.0 * math.pi / grid_points
    vals = _grid_values(p, q, grid_points)
    scales = np.maximum(1.0, np.abs(t_stack).reshape(m, -1).max(axis=1))
    owner, center, plateau = _select_candidates(vals, h, scales)

    best_theta = grid[np.argmax(vals, axis=1)]
    best_value = vals.max(axis=1)
    cand_theta = best_theta[plateau]
    cand_value = best_value[plateau]
    cand_owner = np.flatnonzero(plateau)

    if owner.size:
        th0 = grid[center]
        th, fv = golden_max(lambda x: _lam_max(p, q, owner, x), th0 - h, th0 + h, THETA_WIDTH)
        g0 = vals[owner, center]
        worse = fv < g0
        th = np.where(worse, th0, th)
        fv = np.where(worse, g0, fv)
        th = np.mod(th, 2.0 * math.pi)
        for k in np.unique(owner):
            sel = owner == k
            j = np.argmax(fv[sel])
            if fv[sel][j] >= best_value[k]:
                best_value[k] = fv[sel][j]
                best_theta[k] = th[sel][j]
        cand_owner = np.concatenate([cand_owner, owner])
        cand_theta = np.concatenate([cand_theta, th])
        cand_value = np.concatenate([cand_value, fv])
    return best_theta, best_value, cand_owner, cand_theta, cand_value


def _certificate(t: np.ndarray, grid_points: int) -> RadiusCertificate:
    n = t.shape[0]
    if is_zero(t):
        e1 = np.zeros(n, dtype=complex)
        e1[0] = 1.0
        return RadiusCertificate(0.0, 0.0, e1, 0.0)
    theta, value, *_ = _support_maxima(t[None], grid_points)
    theta, value = float(theta[0]), float(value[0])
    p, q = _hermitian_parts(t)
    w, v = np.linalg.eigh(math.cos(theta) * p - math.sin(theta) * q)
    z = v[:, -1] / np.linalg.norm(v[:, -1])
    value = max(value, float(w[-1]))
    modulus = abs(np.vdot(z, t @ z))
    return RadiusCertificate(value, theta % (2.0 * math.pi), z, abs(modulus - value))


# --------------------------------------------------------------------------
# public operations


def numerical_radius(a, tol: float = DEFAULT_TOL, grid_points: int = GRID_POINTS) -> RadiusCertificate:
    """Numerical radius ``w(A) = max |<Az, z>|`` with its attaining angle and vector.

    ``theta_star`` maximises the largest eigenvalue of the Hermitian part of
    ``e^{i theta} A`` and ``attaining_vector`` is a top eigenvector there.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    return _certificate(as_square(a), grid_points)


def block_embed(a, rho) -> np.ndarray:
    """The 2n x 2n matrix ``[[0, sqrt(rho (2 - rho)) A], [0, (1 - rho) A]]``."""
    x = as_square(a)
    alpha, beta = as_rho(rho).coefficients
    n = x.shape[0]
    out = np.zeros((2 * n, 2 * n), dtype=complex)
    out[:n, n:] = alpha * x
    out[n:, n:] = beta * x
    return out


def _embed_stack(xs: np.ndarray, rho: RhoParam) -> np.ndarray:
    alpha, beta = rho.coefficients
    m, n, _ = xs.shape
    out = np.zeros((m, 2 * n, 2 * n), dtype=complex)
    out[:, :n, n:] = alpha * xs
    out[:, n:, n:] = beta * xs
    return out


def rho_radius(a, rho, tol: float = DEFAULT_TOL, grid_points: int = GRID_POINTS) -> RadiusCertificate:
    """rho-radius of ``A`` via the numerical radius of its block embedding.

    The certificate's vector is the stacked unit vector ``[x; y]`` of length 2n
    and ``radius``/``residual`` are already scaled by 2/rho.
    """
    r = as_rho(rho)
    if not tol > 0:
        raise ValueError("tol must be positive")
    inner = _certificate(block_embed(a, r), grid_points)
    k = r.amplification
    return RadiusCertificate(k * inner.radius, inner.theta_star, inner.attaining_vector, k * inner.residual)


def rho_radius_batch(stack, rho, grid_points: int = GRID_POINTS) -> np.ndarray:
    """rho-radii of a stack of square matrices with shape (m, n, n)."""
    r = as_rho(rho)
    xs = np.asarray(stack, dtype=complex)
    if xs.ndim == 2:
        xs = xs[None]
    out = np.zeros(xs.shape[0])
    live = np.flatnonzero(np.any(xs.reshape(xs.shape[0], -1) != 0, axis=1))
    if live.size:
        _, best, *_ = _support_maxima(_embed_stack(xs[live], r), grid_points)
        out[live] = r.amplification * best
    return out


def rho_radius_value(a, rho, grid_points: int = GRID_POINTS) -> float:
    """Just the value of ``w_rho(A)``; cheaper than :func:`rho_radius`."""
    return float(rho_radius_batch(as_square(a)[None], rho, grid_points)[0])


def _attaining_groups(t: np.ndarray, gap: float, grid_points: int):
    """Per maximising angle, an orthonormal basis of the top eigenspace."""
    _, best, _, thetas, values = _support_maxima(t[None], grid_points)
    best = float(best[0])
    keep = values >= best - gap
    thetas = thetas[keep]
    values = values[keep]
    order = np.argsort(-values, kind="stable")
    chosen: list[float] = []
    for th in thetas[order]:
        if all(abs(math.remainder(th - c, 2.0 * math.pi)) > 1e-6 for c in chosen):
            chosen.append(float(th))
    groups = []
    p, q = _hermitian_parts(t)
    for th in sorted(chosen):
        w, v = np.linalg.eigh(math.cos(th) * p - math.sin(th) * q)
        basis = v[:, w >= w[-1] - gap]
        groups.append((th, basis))
    return groups


def attaining_vectors(a, rho, tol: float = DEFAULT_TOL, grid_points: int = GRID_POINTS):
    """All (theta, z) with z spanning the top eigenspace at a maximising theta.

    Each unit ``z`` satisfies ``(2/rho) |<T z, z>| = w_rho(A)`` within ``tol``
    for ``T = block_embed(A, rho)``.
    """
    r = as_rho(rho)
    x = as_square(a)
    if is_zero(x):
        raise ZeroOperatorError("attaining vectors of the zero matrix")
    t = block_embed(x, r)
    gap = tol / r.amplification
    return [(th, basis[:, j].copy()) for th, basis in _attaining_groups(t, gap, grid_points) for j in range(basis.shape[1])]
