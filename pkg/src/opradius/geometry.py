"""rho-Birkhoff-James orthogonality and rho-parallelism of matrix pairs.

``A`` is w_rho-orthogonal to ``B`` when ``min_gamma w_rho(A + gamma B) = w_rho(A)``
and w_rho-parallel to ``B`` when ``max_{|lambda|=1} w_rho(A + lambda B)`` equals
``w_rho(A) + w_rho(B)``.  Both decisions come with witness vectors ``[x; y]``
drawn from the attaining eigenspaces of the block embedding, which are
re-checked against the finite-dimensional witness conditions using nothing
but inner products.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import NamedTuple

import numpy as np
from scipy.optimize import minimize

from ._search import circular_peaks, golden_max
from .errors import ShapeError, ZeroOperatorError
from .linalg import as_square, as_vector, is_zero, max_singular_subspace, operator_norm
from .radius import (
    GRID_POINTS,
    RhoParam,
    _attaining_groups,
    as_rho,
    block_embed,
    numerical_radius,
    rho_radius_batch,
    rho_radius_value,
)

__all__ = [
    "WitnessRecord",
    "OrthogonalityReport",
    "ParallelismReport",
    "CheckResult",
    "decision_tolerance",
    "scaled_witness_vector",
    "witness_residuals",
    "find_orthogonality_witness",
    "find_parallelism_witness",
    "is_orthogonal",
    "is_parallel",
    "bhatia_semrl_check",
    "norm_parallel_check",
    "numerical_radius_orthogonal",
    "numerical_radius_parallel",
]

THETA_SAMPLES = 16
WITNESS_TOL = 1e-6
LAMBDA_POINTS = 360
NM_XATOL = 1e-10
CHECK_TOL = 1e-7
# combination grid for degenerate attaining eigenspaces
_WEIGHTS = np.arange(1, 16) * (math.pi / 32.0)
_PHASES = np.arange(16) * (2.0 * math.pi / 16.0)

@dataclass(frozen=True)
class WitnessRecord:
    theta: float | None
    x: np.ndarray | None
    y: np.ndarray
    attainment_residual: float
    sign_or_product_residual: float
    found: bool = True


@dataclass(frozen=True)
class OrthogonalityReport:
    orthogonal: bool
    rho: RhoParam
    base_radius: float
    min_value: float
    gamma_star: complex
    witnesses: list = field(default_factory=list)
    tolerance: float = 0.0
    degenerate: str | None = None


@dataclass(frozen=True)
class ParallelismReport:
    parallel: bool
    rho: RhoParam
    sum_radius: float
    max_value: float
    lambda_star: complex
    witnesses: list = field(default_factory=list)
    tolerance: float = 0.0
    degenerate: str | None = None


class CheckResult(NamedTuple):
    found: bool
    z: np.ndarray | None
    residual: float


def decision_tolerance(scale: float) -> float:
    """Default decision threshold ``1e-7 * max(1, scale)``."""
    return 1e-7 * max(1.0, scale)


def _pair(a, b):
    x = as_square(a)
    y = as_square(b)
    if x.shape != y.shape:
        raise ShapeError(f"dimension mismatch: {x.shape} vs {y.shape}")
    return x, y


# --------------------------------------------------------------------------
# witness vectors


def scaled_witness_vector(x, y, rho) -> np.ndarray:
    """``sqrt((8 - 4 rho)/rho) x + ((2 - 2 rho)/rho) y``.

    Equals ``(2/rho) (sqrt(rho (2 - rho)) x + (1 - rho) y)``.
    """
    x = as_vector(x)
    y = as_vector(y)
    if x.shape != y.shape:
        raise ShapeError(f"dimension mismatch: {x.shape[0]} vs {y.shape[0]}")
    r = as_rho(rho).value
    return math.sqrt(max((8.0 - 4.0 * r) / r, 0.0)) * x + ((2.0 - 2.0 * r) / r) * y


def _split(z: np.ndarray):
    n = z.shape[-1] // 2
    return z[..., :n], z[..., n:]


def _terms(a, b, zs, rho: RhoParam):
    """Vectorised ``<Ay, u>``, ``<By, u>`` and ``<v, Ay><By, v>`` for rows of ``zs``."""
    xs, ys = _split(zs)
    alpha, beta = rho.coefficients
    vs = alpha * xs + beta * ys
    us = rho.amplification * vs
    ay = ys @ a.T
    by = ys @ b.T
    ay_u = np.sum(ay * us.conj(), axis=-1)
    by_u = np.sum(by * us.conj(), axis=-1)
    v_ay = np.sum(vs * ay.conj(), axis=-1)
    by_v = np.sum(by * vs.conj(), axis=-1)
    return ay_u, by_u, v_ay * by_v


def witness_residuals(a, b, x, y, rho, theta=None):
    """Re-evaluate the witness conditions for ``z = [x; y]`` from inner products.

    With ``theta`` given, returns the orthogonality pair ``(| |<Ay,u>| - w_rho(A) |,
    max(0, -Re(e^{i theta} <v,Ay><By,v>)))``; otherwise the parallelism residual
    ``| |<Ay,u><By,u>| - w_rho(A) w_rho(B) |`` alone.
    """
    a, b = _pair(a, b)
    r = as_rho(rho)
    z = np.concatenate([as_vector(x), as_vector(y)])[None]
    ay_u, by_u, prod = _terms(a, b, z, r)
    wa = rho_radius_value(a, r)
    if theta is None:
        wb = rho_radius_value(b, r)
        return float(abs(abs(ay_u[0] * by_u[0]) - wa * wb))
    sign = max(0.0, -float((np.exp(1j * theta) * prod[0]).real))
    return float(abs(abs(ay_u[0]) - wa)), sign


def _candidates(groups):
    """Stacked candidate vectors: every basis vector, then pairwise combinations."""
    out = [basis.T for _, basis in groups]
    tags = [np.full(basis.shape[1], th) for th, basis in groups]
    cw = np.cos(_WEIGHTS)[:, None]
    sw = np.sin(_WEIGHTS)[:, None]
    ph = np.exp(1j * _PHASES)[None, :]
    for th, basis in groups:
        k = basis.shape[1]
        for i in range(k):
            for j in range(i + 1, k):
                mix = (cw[..., None] * basis[:, i]) + (sw * ph)[..., None] * basis[:, j]
                mix = mix.reshape(-1, basis.shape[0])
                out.append(mix)
                tags.append(np.full(mix.shape[0], th))
    return np.concatenate(out), np.concatenate(tags)


def _scan_orthogonality(a, b, r, wa, zs, theta, tol):
    ay_u, _, prod = _terms(a, b, zs, r)
    att = np.abs(np.abs(ay_u) - wa)
    sign = np.maximum(0.0, -(np.exp(1j * theta) * prod).real)
    ok = np.flatnonzero((att <= tol) & (sign <= tol))
    if ok.size:
        i, found = ok[0], True
    else:
        i, found = int(np.argmin(np.maximum(att, sign))), False
    x, y = _split(zs[i])
    return WitnessRecord(float(theta), x.copy(), y.copy(), float(att[i]), float(sign[i]), found)


def find_orthogonality_witness(a, b, rho, theta: float, tol: float = WITNESS_TOL,
                               grid_points: int = GRID_POINTS) -> WitnessRecord:
    """Search the attaining vectors of ``A`` for a witness at angle ``theta``.

    The returned record has ``found=False`` when no candidate meets both
    conditions; it then carries the candidate with the smallest worse residual.
    """
    a, b = _pair(a, b)
    r = as_rho(rho)
    if is_zero(a):
        raise ZeroOperatorError("orthogonality witness for A = 0")
    wa = rho_radius_value(a, r, grid_points)
    groups = _attaining_groups(block_embed(a, r), 1e-9 / r.amplification, grid_points)
    zs, _ = _candidates(groups)
    return _scan_orthogonality(a, b, r, wa, zs, theta % (2.0 * math.pi), tol)


def find_parallelism_witness(a, b, rho, tol: float = WITNESS_TOL, lambda_star: complex | None = None,
                             grid_points: int = GRID_POINTS) -> WitnessRecord:
    """Search attaining vectors of ``A + lambda* B`` for the product witness.

    ``lambda_star`` defaults to the maximiser found by :func:`is_parallel`.
    """
    a, b = _pair(a, b)
    r = as_rho(rho)
    if is_zero(a) or is_zero(b):
        raise ZeroOperatorError("parallelism witness needs A != 0 and B != 0")
    if lambda_star is None:
        lambda_star = _maximize_lambda(a, b, r, LAMBDA_POINTS, grid_points)[0]
    wa = rho_radius_value(a, r, grid_points)
    wb = rho_radius_value(b, r, grid_points)
    groups = _attaining_groups(block_embed(a + lambda_star * b, r), 1e-9 / r.amplification, grid_points)
    zs, _ = _candidates(groups)
    ay_u, by_u, _ = _terms(a, b, zs, r)
    res = np.abs(np.abs(ay_u * by_u) - wa * wb)
    ok = np.flatnonzero(res <= tol)
    i, found = (ok[0], True) if ok.size else (int(np.argmin(res)), False)
    x, y = _split(zs[i])
    return WitnessRecord(None, x.copy(), y.copy(), float(abs(abs(ay_u[i]) - wa)), float(res[i]), found)


# --------------------------------------------------------------------------
# orthogonality


def _minimize_gamma(a, b, r, radius_bound, grid_points):
    best = {"value": math.inf, "gamma": 0j}

    def objective(p):
        g = complex(p[0], p[1])
        val = rho_radius_value(a + g * b, r, grid_points)
        if val < best["value"]:
            best["value"], best["gamma"] = val, g
        return val

    axis = np.linspace(-radius_bound, radius_bound, 5)
    starts = np.array([complex(u, v) for u in axis for v in axis if abs(complex(u, v)) <= radius_bound * (1 + 1e-12)])
    vals = rho_radius_batch(a[None] + starts[:, None, None] * b[None], r, grid_points)
    order = np.argsort(vals, kind="stable")
    best["value"], best["gamma"] = float(vals[order[0]]), complex(starts[order[0]])

    fatol = 1e-14 * max(1.0, best["value"])
    step = radius_bound / 4.0
    x0 = np.array([best["gamma"].real, best["gamma"].imag])
    for _ in range(6):
        simplex = np.array([x0, x0 + [step, 0.0], x0 + [0.0, step]])
        before = best["value"]
        minimize(objective, x0, method="Nelder-Mead",
                 options={"initial_simplex": simplex, "xatol": NM_XATOL, "fatol": fatol, "maxfev": 2000})
        x0 = np.array([best["gamma"].real, best["gamma"].imag])
        step = max(step * 1e-2, 1e-6 * radius_bound)
        if before - best["value"] <= 1e-14 * max(1.0, before):
            break
    return best["gamma"], best["value"]


def is_orthogonal(a, b, rho, tol: float | None = None, theta_samples: int = THETA_SAMPLES,
                  witness_tol: float = WITNESS_TOL, grid_points: int = GRID_POINTS,
                  witnesses: bool = True) -> OrthogonalityReport:
    """Decide ``A`` w_rho-orthogonal to ``B`` by minimising ``w_rho(A + gamma B)``.

    The search uses Nelder-Mead restarted from the best point of a 5x5 grid over
    the disk ``|gamma| <= 2 w_rho(A) / w_rho(B)``; outside that disk the
    objective already exceeds ``w_rho(A)``.  When orthogonal, a witness is
    sought at each of ``theta_samples`` equispaced angles.
    """
    a, b = _pair(a, b)
    r = as_rho(rho)
    base = rho_radius_value(a, r, grid_points)
    tol = decision_tolerance(base) if tol is None else float(tol)
    if is_zero(a) or is_zero(b):
        flag = "A=0" if is_zero(a) else "B=0"
        return OrthogonalityReport(True, r, base, base, 0j, [], tol, flag)

    wb = rho_radius_value(b, r, grid_points)
    gamma, value = _minimize_gamma(a, b, r, 2.0 * base / wb, grid_points)
    value = min(value, base)
    if value == base:
        gamma = 0j
    orthogonal = value >= base - tol
    records = []
    if orthogonal and witnesses and theta_samples > 0:
        groups = _attaining_groups(block_embed(a, r), 1e-9 / r.amplification, grid_points)
        zs, _ = _candidates(groups)
        for k in range(theta_samples):
            theta = 2.0 * math.pi * k / theta_samples
            records.append(_scan_orthogonality(a, b, r, base, zs, theta, witness_tol))
    return OrthogonalityReport(orthogonal, r, base, float(value), complex(gamma), records, tol)


# --------------------------------------------------------------------------
# parallelism


def _maximize_lambda(a, b, r, lambda_points, grid_points):
    ts = 2.0 * math.pi * np.arange(lambda_points) / lambda_points
    h = 2.0 * math.pi / lambda_points
    vals = rho_radius_batch(a[None] + np.exp(1j * ts)[:, None, None] * b[None], r, grid_points)
    k = int(np.argmax(vals))
    t_best, v_best = ts[k], float(vals[k])
    scale = max(1.0, v_best)
    if v_best - vals.min() > 1e-12 * scale:
        wb = rho_radius_value(b, r, grid_points)
        peaks = circular_peaks(vals, v_best - wb * h, 8)

        def fun(t):
            return rho_radius_batch(a[None] + np.exp(1j * t)[:, None, None] * b[None], r, grid_points)

        th, fv = golden_max(fun, ts[peaks] - h, ts[peaks] + h, 1e-11)
        j = int(np.argmax(fv))
        if fv[j] > v_best:
            t_best, v_best = float(th[j]), float(fv[j])
    return complex(np.exp(1j * t_best)), v_best


def is_parallel(a, b, rho, tol: float | None = None, lambda_points: int = LAMBDA_POINTS,
                witness_tol: float = WITNESS_TOL, grid_points: int = GRID_POINTS,
                witnesses: bool = True) -> ParallelismReport:
    """Decide ``A`` w_rho-parallel to ``B`` by maximising ``w_rho(A + e^{it} B)`` over t."""
    a, b = _pair(a, b)
    r = as_rho(rho)
    wa = rho_radius_value(a, r, grid_points)
    wb = rho_radius_value(b, r, grid_points)
    total = wa + wb
    tol = decision_tolerance(total) if tol is None else float(tol)
    if is_zero(a) or is_zero(b):
        flag = "A=0" if is_zero(a) else "B=0"
        return ParallelismReport(True, r, total, total, 1 + 0j, [], tol, flag)
    lam, value = _maximize_lambda(a, b, r, lambda_points, grid_points)
    parallel = value >= total - tol
    records = []
    if parallel and witnesses:
        records.append(find_parallelism_witness(a, b, r, witness_tol, lam, grid_points))
    return ParallelismReport(parallel, r, total, value, lam, records, tol)


# --------------------------------------------------------------------------
# rho = 1 and rho = 2 specialisations


def _support_extreme(m: np.ndarray, points: int = 720):
    """``min_theta lambda_max(Herm(e^{i theta} M))`` and the top vector there.

    A negative minimum is minus the distance from 0 to the numerical range of M.
    """
    p = 0.5 * (m + m.conj().T)
    q = -0.5j * (m - m.conj().T)

    def f(t):
        c = np.cos(t)[:, None, None]
        s = np.sin(t)[:, None, None]
        return -np.linalg.eigvalsh(c * p - s * q)[:, -1]

    ts = 2.0 * math.pi * np.arange(points) / points
    vals = f(ts)
    h = 2.0 * math.pi / points
    peaks = circular_peaks(vals, vals.max() - 1e-3 * max(1.0, abs(vals.max())), 8)
    th, fv = golden_max(f, ts[peaks] - h, ts[peaks] + h, 1e-12)
    j = int(np.argmax(fv))
    t = float(th[j])
    _, v = np.linalg.eigh(math.cos(t) * p - math.sin(t) * q)
    return -float(fv[j]), v[:, -1]


def _sphere_starts(k: int, m: np.ndarray, rng: np.random.Generator):
    starts = [np.eye(k, dtype=complex)[i] for i in range(k)]
    p = 0.5 * (m + m.conj().T)
    q = -0.5j * (m - m.conj().T)
    for t in np.arange(8) * (math.pi / 4.0):
        w, v = np.linalg.eigh(math.cos(t) * p - math.sin(t) * q)
        starts.extend([v[:, 0], v[:, -1]])
    for i in range(k):
        for j in range(i + 1, k):
            for ph in (1, -1, 1j, -1j):
                e = np.zeros(k, dtype=complex)
                e[i], e[j] = 1.0, ph
                starts.append(e / math.sqrt(2.0))
    for _ in range(8):
        g = rng.standard_normal(k) + 1j * rng.standard_normal(k)
        starts.append(g / np.linalg.norm(g))
    return starts


def _quad_form_search(m: np.ndarray, goal, stop):
    """Optimise ``|c* M c| / |c|^2`` over c in C^k from a fixed set of starts.

    ``goal`` is "min" or "max"; stops once ``stop(value)`` is true.
    """
    k = m.shape[0]
    sign = 1.0 if goal == "min" else -1.0

    def obj(p):
        c = p[:k] + 1j * p[k:]
        nn = np.vdot(c, c).real
        if nn == 0.0:
            return 0.0
        val = abs(np.vdot(c, m @ c)) / nn
        return sign * (val * val if goal == "min" else val)

    best_c, best_val = None, math.inf if goal == "min" else -math.inf
    rng = np.random.default_rng(20240611)
    for c0 in _sphere_starts(k, m, rng):
        res = minimize(obj, np.concatenate([c0.real, c0.imag]), method="BFGS", options={"gtol": 1e-14})
        c = res.x[:k] + 1j * res.x[k:]
        nrm = np.linalg.norm(c)
        if nrm == 0.0:
            continue
        c = c / nrm
        val = abs(np.vdot(c, m @ c))
        better = val < best_val if goal == "min" else val > best_val
        if better:
            best_c, best_val = c, val
        if stop(best_val):
            break
    return best_c, best_val


def bhatia_semrl_check(a, b, tol: float = CHECK_TOL) -> CheckResult:
    """Look for a unit ``z`` with ``||Az|| = ||A||`` and ``<Az, Bz> = 0``.

    ``z`` is restricted to the maximal right-singular subspace of ``A``;
    ``found`` means ``|<Az, Bz>| <= tol ||A|| ||B||``, which certifies
    operator-norm Birkhoff-James orthogonality of ``A`` to ``B``.
    """
    a, b = _pair(a, b)
    if is_zero(a):
        raise ZeroOperatorError("Bhatia-Semrl check for A = 0")
    basis = max_singular_subspace(a)
    if is_zero(b):
        return CheckResult(True, basis[:, 0].copy(), 0.0)
    bound = tol * operator_norm(a) * operator_norm(b)
    m = basis.conj().T @ b.conj().T @ a @ basis
    if m.shape[0] == 1:
        z = basis[:, 0].copy()
    else:
        lowest, c = _support_extreme(m)
        if lowest > bound:
            z = basis @ c
        else:
            c, _ = _quad_form_search(m, "min", lambda v: v <= 0.01 * bound)
            z = basis @ c
    z = z / np.linalg.norm(z)
    resid = float(abs(np.vdot(b @ z, a @ z)))
    return CheckResult(resid <= bound, z, resid)


def norm_parallel_check(a, b, tol: float = CHECK_TOL) -> CheckResult:
    """Look for a unit ``z`` with ``|<Az, Bz>| = ||A|| ||B||``.

    Seeds come from the maximal singular subspaces of ``A`` and ``B`` (the
    numerical radius of the compressed form), then a local ascent over the
    whole sphere.  ``found`` means the gap is at most ``tol ||A|| ||B||``;
    ``residual`` is that gap.
    """
    a, b = _pair(a, b)
    if is_zero(a) or is_zero(b):
        raise ZeroOperatorError("norm parallelism check needs A != 0 and B != 0")
    target = operator_norm(a) * operator_norm(b)
    g = b.conj().T @ a
    candidates = []
    for basis in (max_singular_subspace(a), max_singular_subspace(b)):
        cert = numerical_radius(basis.conj().T @ g @ basis)
        candidates.append(basis @ cert.attaining_vector)
    best = max(candidates, key=lambda z: abs(np.vdot(z, g @ z)))
    if target - abs(np.vdot(best, g @ best)) > tol * target:
        z, _ = _quad_form_search(g, "max", lambda v: target - v <= 0.01 * tol * target)
        if abs(np.vdot(z, g @ z)) > abs(np.vdot(best, g @ best)):
            best = z
    best = best / np.linalg.norm(best)
    gap = float(abs(abs(np.vdot(b @ best, a @ best)) - target))
    return CheckResult(gap <= tol * target, best, gap)


def _reduce(record: WitnessRecord, a, b, theta) -> WitnessRecord:
    y = record.y
    ay_y = np.vdot(y, a @ y)
    by_y = np.vdot(y, b @ y)
    wa = rho_radius_value(a, 2.0)
    if theta is None:
        wb = rho_radius_value(b, 2.0)
        return replace(record, x=None, attainment_residual=float(abs(abs(ay_y) - wa)),
                       sign_or_product_residual=float(abs(abs(ay_y * by_y) - wa * wb)))
    sign = max(0.0, -float((np.exp(1j * theta) * np.conj(ay_y) * by_y).real))
    return replace(record, x=None, attainment_residual=float(abs(abs(ay_y) - wa)), sign_or_product_residual=sign)


def numerical_radius_orthogonal(a, b, tol: float | None = None, **kwargs) -> OrthogonalityReport:
    """Numerical-radius orthogonality (rho = 2) with single-vector witnesses ``y``."""
    a, b = _pair(a, b)
    rep = is_orthogonal(a, b, 2.0, tol, **kwargs)
    return replace(rep, witnesses=[_reduce(w, a, b, w.theta) for w in rep.witnesses])


def numerical_radius_parallel(a, b, tol: float | None = None, **kwargs) -> ParallelismReport:
    """Numerical-radius parallelism (rho = 2) with single-vector witnesses ``y``."""
    a, b = _pair(a, b)
    rep = is_parallel(a, b, 2.0, tol, **kwargs)
    return replace(rep, witnesses=[_reduce(w, a, b, None) for w in rep.witnesses])
