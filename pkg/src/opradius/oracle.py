"""Brute-force verifiers that share no search logic with the deciders.

Every verdict here comes from exhaustive grids over gamma or lambda, or from
direct sampling of ``sup |<Tz, z>|``; none of it calls the Nelder-Mead or
golden-section searches in :mod:`opradius.geometry`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonUnitVectorError, ShapeError, ZeroOperatorError
from .geometry import _pair, is_orthogonal, is_parallel
from .linalg import as_square, as_vector, is_zero
from .radius import GRID_POINTS, as_rho, rho_radius_batch, rho_radius_value

__all__ = [
    "GridSpec",
    "OracleVerdict",
    "grid_min_gamma",
    "grid_max_lambda",
    "sphere_radius_estimate",
    "buzano_check",
    "cross_check",
]

BUZANO_SLACK = 1e-10


@dataclass(frozen=True)
class GridSpec:
    """Polar gamma-grid plus the number of unimodular lambda samples.

    ``radius_bound=None`` means ``2 w_rho(A) / w_rho(B)``.
    """

    radial_points: int = 64
    angular_points: int = 128
    radius_bound: float | None = None
    lambda_points: int = 720

    def __post_init__(self):
        for name in ("radial_points", "angular_points", "lambda_points"):
            v = getattr(self, name)
            if int(v) != v or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")
        if self.radius_bound is not None and not self.radius_bound > 0:
            raise ValueError("radius_bound must be positive")

    def points(self, bound: float) -> np.ndarray:
        """The origin plus ``radial_points x angular_points`` polar nodes."""
        radii = bound * np.arange(1, self.radial_points + 1) / self.radial_points
        angles = 2.0 * math.pi * np.arange(self.angular_points) / self.angular_points
        ring = (radii[:, None] * np.exp(1j * angles)[None, :]).ravel()
        return np.concatenate([[0j], ring])

    def mesh(self, bound: float) -> float:
        """Largest distance from a point of the disk to its nearest node."""
        return bound / (2.0 * self.radial_points) + bound * math.pi / self.angular_points


@dataclass(frozen=True)
class OracleVerdict:
    agrees: bool
    oracle_value: float
    main_value: float
    discrepancy: float
    main_decision: bool = False
    oracle_decision: bool = False
    resolution: float = 0.0


def _gamma_bound(a, b, rho, grid: GridSpec, grid_points):
    if grid.radius_bound is not None:
        return grid.radius_bound
    wa = rho_radius_value(a, rho, grid_points)
    wb = rho_radius_value(b, rho, grid_points)
    return 2.0 * wa / wb


def grid_min_gamma(a, b, rho, grid: GridSpec = GridSpec(), grid_points: int = GRID_POINTS):
    """Minimum of ``w_rho(A + gamma B)`` over the polar gamma grid.

    Returns ``(gamma, value)``; ``value`` exceeds the true minimum by at most
    ``w_rho(B) * grid.mesh(bound)``.
    """
    a, b = _pair(a, b)
    r = as_rho(rho)
    if is_zero(b):
        raise ZeroOperatorError("grid_min_gamma needs B != 0")
    bound = _gamma_bound(a, b, r, grid, grid_points)
    gammas = grid.points(bound)
    vals = rho_radius_batch(a[None] + gammas[:, None, None] * b[None], r, grid_points)
    k = int(np.argmin(vals))
    return complex(gammas[k]), float(vals[k])


def grid_max_lambda(a, b, rho, angular_points: int = 720, grid_points: int = GRID_POINTS):
    """Maximum of ``w_rho(A + lambda B)`` over equispaced unimodular lambda.

    The true maximum is larger by at most ``w_rho(B) * pi / angular_points``.
    """
    a, b = _pair(a, b)
    r = as_rho(rho)
    lams = np.exp(2j * math.pi * np.arange(angular_points) / angular_points)
    vals = rho_radius_batch(a[None] + lams[:, None, None] * b[None], r, grid_points)
    k = int(np.argmax(vals))
    return complex(lams[k]), float(vals[k])


def sphere_radius_estimate(t, samples: int, refine_steps: int, seed: int = 0) -> float:
    """Lower bound on ``w(T)`` from random unit vectors and a power-type ascent.

    Each start ``z`` is pushed towards the top eigenvector of the Hermitian
    part of ``e^{-i phi} T`` with ``phi = arg <Tz, z>``; the Hermitian part is
    shifted by ``||T||_F`` so the iteration cannot lock onto the bottom of the
    spectrum.  The best modulus seen anywhere is returned.
    """
    t = as_square(t)
    if samples < 1:
        raise ValueError("samples must be >= 1")
    n = t.shape[0]
    rng = np.random.default_rng(seed)
    raw = rng.standard_normal((samples, n, 2))
    z = (raw[..., 0] + 1j * raw[..., 1]).T
    z /= np.linalg.norm(z, axis=0)
    shift = np.linalg.norm(t)
    th = t.conj().T

    def moduli(z):
        return np.sum(z.conj() * (t @ z), axis=0)

    q = moduli(z)
    best = float(np.max(np.abs(q)))
    for _ in range(refine_steps):
        ph = np.exp(-1j * np.angle(q))
        z = 0.5 * (ph * (t @ z) + ph.conj() * (th @ z)) + shift * z
        nrm = np.linalg.norm(z, axis=0)
        nrm[nrm == 0.0] = 1.0
        z /= nrm
        q = moduli(z)
        best = max(best, float(np.max(np.abs(q))))
    return best


def buzano_check(a, b, x, y) -> bool:
    """``|<Ay, x><x, By>| <= (||Ay|| ||By|| + |<Ay, By>|) / 2`` for unit ``x``."""
    a, b = _pair(a, b)
    x = as_vector(x)
    y = as_vector(y)
    if x.shape[0] != a.shape[0] or y.shape[0] != a.shape[0]:
        raise ShapeError("vector dimension does not match the matrices")
    if abs(np.linalg.norm(x) - 1.0) > 1e-10:
        raise NonUnitVectorError(f"x must be a unit vector (norm {np.linalg.norm(x):.3e})")
    ay = a @ y
    by = b @ y
    lhs = abs(np.vdot(x, ay) * np.vdot(by, x))
    rhs = 0.5 * (np.linalg.norm(ay) * np.linalg.norm(by) + abs(np.vdot(by, ay)))
    return bool(lhs <= rhs + BUZANO_SLACK * max(1.0, rhs))


def cross_check(a, b, rho, mode: str, grid: GridSpec = GridSpec(), tol: float | None = None,
                grid_points: int = GRID_POINTS) -> OracleVerdict:
    """Run a decider and its grid oracle and compare decisions and values.

    For ``mode="orthogonal"`` the oracle calls the pair orthogonal unless some
    grid node beats ``w_rho(A)`` by more than ``tol``.  For ``mode="parallel"``
    it calls them parallel when the best lambda node comes within ``tol`` plus
    the grid resolution of ``w_rho(A) + w_rho(B)``.
    """
    a, b = _pair(a, b)
    r = as_rho(rho)
    if mode == "orthogonal":
        rep = is_orthogonal(a, b, r, tol, grid_points=grid_points, witnesses=False)
        tol = rep.tolerance
        if is_zero(b) or is_zero(a):
            oracle_value, res = rep.base_radius, 0.0
        else:
            bound = _gamma_bound(a, b, r, grid, grid_points)
            _, oracle_value = grid_min_gamma(a, b, r, GridSpec(grid.radial_points, grid.angular_points, bound),
                                             grid_points)
            res = rho_radius_value(b, r, grid_points) * grid.mesh(bound)
        main_value, main = rep.min_value, rep.orthogonal
        oracle = oracle_value >= rep.base_radius - tol
    elif mode == "parallel":
        rep = is_parallel(a, b, r, tol, grid_points=grid_points, witnesses=False)
        tol = rep.tolerance
        _, oracle_value = grid_max_lambda(a, b, r, grid.lambda_points, grid_points)
        res = rho_radius_value(b, r, grid_points) * math.pi / grid.lambda_points
        main_value, main = rep.max_value, rep.parallel
        oracle = oracle_value >= rep.sum_radius - tol - res
    else:
        raise ValueError(f"mode must be 'orthogonal' or 'parallel', got {mode!r}")
    gap = abs(oracle_value - main_value)
    agrees = (main == oracle) and gap <= tol + res
    return OracleVerdict(bool(agrees), float(oracle_value), float(main_value), float(gap), bool(main), bool(oracle),
                         float(res))

