"""Randomised property suites behind ``opradius selftest``.

Each property maps a seeded generator to a non-negative discrepancy; a trial
passes when the discrepancy is within the property's bound.  Decision-level
properties run the full optimisers and an oracle grid, so they use one trial
in ten (at least one).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import samplers as S
from .geometry import (
    bhatia_semrl_check,
    is_orthogonal,
    is_parallel,
    norm_parallel_check,
    scaled_witness_vector,
)
from .linalg import adjoint, hermitian_eig_max, inner, jacobi_eigh, operator_norm
from .oracle import GridSpec, buzano_check, cross_check, sphere_radius_estimate
from .radius import block_embed, numerical_radius, rho_radius_value

SMALL_GRID = GridSpec(radial_points=16, angular_points=32, lambda_points=360)


@dataclass(frozen=True)
class Property:
    name: str
    check: Callable[[np.random.Generator], float]
    bound: float
    heavy: bool = False


@dataclass(frozen=True)
class PropertyResult:
    name: str
    trials: int
    failures: int
    worst: float
    bound: float

    @property
    def passed(self) -> bool:
        return self.failures == 0


def _dim(rng, hi=6):
    return int(rng.integers(2, hi + 1))


def _rho(rng):
    return float(rng.uniform(0.05, 2.0))


def _adjoint_norm(rng):
    a = S.random_matrix(rng, _dim(rng, 8))
    return max(float(np.max(np.abs(adjoint(adjoint(a)) - a))),
               abs(operator_norm(adjoint(a)) - operator_norm(a)))


def _jacobi_vs_lapack(rng):
    a = S.random_matrix(rng, _dim(rng, 8))
    h = a + a.conj().T
    w, _ = jacobi_eigh(h)
    return abs(float(w[-1]) - hermitian_eig_max(h).value)


def _triangle(rng):
    n, r = _dim(rng), _rho(rng)
    a, b = S.random_matrix(rng, n), S.random_matrix(rng, n)
    return max(0.0, rho_radius_value(a + b, r) - rho_radius_value(a, r) - rho_radius_value(b, r))


def _homogeneity(rng):
    n, r = _dim(rng), _rho(rng)
    a = S.random_matrix(rng, n)
    c = complex(*rng.standard_normal(2))
    return abs(rho_radius_value(c * a, r) - abs(c) * rho_radius_value(a, r))


def _reductions(rng):
    a = S.random_matrix(rng, _dim(rng))
    return max(abs(rho_radius_value(a, 1.0) - operator_norm(a)),
               abs(rho_radius_value(a, 2.0) - numerical_radius(a).radius))


def _closed_forms(rng):
    n, r = _dim(rng), _rho(rng)
    nil = S.random_nilpotent(rng, n)
    nor = S.random_normal(rng, n)
    want = operator_norm(nor) * (1.0 if r >= 1 else 2.0 / r - 1.0)
    return max(abs(rho_radius_value(nil, r) - operator_norm(nil) / r), abs(rho_radius_value(nor, r) - want))


def _unitary_invariance(rng):
    n, r = _dim(rng), _rho(rng)
    a, u = S.random_matrix(rng, n), S.random_unitary(rng, n)
    w = rho_radius_value(a, r)
    return max(abs(rho_radius_value(u.conj().T @ a @ u, r) - w), abs(rho_radius_value(a.conj().T, r) - w))


def _sphere_below(rng):
    n, r = _dim(rng, 4), _rho(rng)
    a = S.random_matrix(rng, n)
    est = sphere_radius_estimate(block_embed(a, r), 64, 30, seed=int(rng.integers(2**31)))
    return max(0.0, est - r / 2.0 * rho_radius_value(a, r))


def _buzano(rng):
    n = _dim(rng, 8)
    a, b = S.random_matrix(rng, n), S.random_matrix(rng, n)
    x = S.complex_gaussian(rng, n)
    y = S.complex_gaussian(rng, n)
    return 0.0 if buzano_check(a, b, x / np.linalg.norm(x), y) else 1.0


def _witness_vector_identity(rng):
    n, r = _dim(rng), _rho(rng)
    a = S.random_matrix(rng, n)
    x, y = S.complex_gaussian(rng, n), S.complex_gaussian(rng, n)
    alpha = math.sqrt(r * (2 - r))
    lhs = inner(a @ y, scaled_witness_vector(x, y, r))
    rhs = (2 / r) * inner(a @ y, alpha * x + (1 - r) * y)
    return abs(lhs - rhs) / max(1.0, abs(rhs))


def _orthogonality_oracle(rng):
    n, r = int(rng.integers(2, 4)), _rho(rng)
    a = S.random_matrix(rng, n)
    b = S.orthogonal_partner(rng, a, r) if rng.random() < 0.5 else S.random_matrix(rng, n)
    return 0.0 if cross_check(a, b, r, "orthogonal", SMALL_GRID).agrees else 1.0


def _parallelism_oracle(rng):
    n, r = int(rng.integers(2, 4)), _rho(rng)
    if rng.random() < 0.5:
        a, b = S.parallel_pair(rng, n, r)
    else:
        a, b = S.random_matrix(rng, n), S.random_matrix(rng, n)
    return 0.0 if cross_check(a, b, r, "parallel", SMALL_GRID).agrees else 1.0


def _bhatia_semrl(rng):
    n = int(rng.integers(2, 4))
    a = S.random_matrix(rng, n)
    b = S.norm_orthogonal_partner(rng, a) if rng.random() < 0.5 else S.random_matrix(rng, n)
    found = bhatia_semrl_check(a, b).found
    return 0.0 if found == is_orthogonal(a, b, 1.0, witnesses=False).orthogonal else 1.0


def _norm_parallel(rng):
    n = int(rng.integers(2, 4))
    if rng.random() < 0.5:
        a, b = S.parallel_pair(rng, n, 1.0)
    else:
        a, b = S.random_matrix(rng, n), S.random_matrix(rng, n)
    found = norm_parallel_check(a, b).found
    return 0.0 if found == is_parallel(a, b, 1.0, witnesses=False).parallel else 1.0


def _decision_invariance(rng):
    n, r = int(rng.integers(2, 4)), _rho(rng)
    a = S.random_matrix(rng, n)
    b = S.orthogonal_partner(rng, a, r) if rng.random() < 0.5 else S.random_matrix(rng, n)
    u = S.random_unitary(rng, n)
    alpha = complex(*rng.standard_normal(2))
    beta = complex(*rng.standard_normal(2))
    base = is_orthogonal(a, b, r, witnesses=False).orthogonal
    variants = [
        is_orthogonal(a.conj().T, b.conj().T, r, witnesses=False).orthogonal,
        is_orthogonal(alpha * a, beta * b, r, witnesses=False).orthogonal,
        is_orthogonal(u.conj().T @ a @ u, u.conj().T @ b @ u, r, witnesses=False).orthogonal,
    ]
    return float(sum(v != base for v in variants))


PROPERTIES = (
    Property("adjoint involution and norm", _adjoint_norm, 1e-10),
    Property("jacobi agrees with lapack", _jacobi_vs_lapack, 1e-10),
    Property("rho-radius triangle inequality", _triangle, 1e-8),
    Property("rho-radius homogeneity", _homogeneity, 1e-8),
    Property("reductions rho=1, rho=2", _reductions, 1e-8),
    Property("nilpotent and normal closed forms", _closed_forms, 1e-7),
    Property("adjoint and unitary invariance", _unitary_invariance, 1e-8),
    Property("sphere estimate below radius", _sphere_below, 1e-8),
    Property("buzano inequality", _buzano, 0.0),
    Property("witness vector identity", _witness_vector_identity, 1e-12),
    Property("orthogonality oracle agreement", _orthogonality_oracle, 0.0, heavy=True),
    Property("parallelism oracle agreement", _parallelism_oracle, 0.0, heavy=True),
    Property("bhatia-semrl equivalence", _bhatia_semrl, 0.0, heavy=True),
    Property("norm parallel equivalence", _norm_parallel, 0.0, heavy=True),
    Property("orthogonality decision invariance", _decision_invariance, 0.0, heavy=True),
)


def run_selftest(seed: int, trials: int, properties=PROPERTIES) -> list[PropertyResult]:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    out = []
    for idx, prop in enumerate(properties):
        rng = np.random.default_rng([seed, idx])
        count = max(1, trials // 10) if prop.heavy else trials
        worst, failures = 0.0, 0
        for _ in range(count):
            d = float(prop.check(rng))
            worst = max(worst, d)
            failures += d > prop.bound
        out.append(PropertyResult(prop.name, count, failures, worst, prop.bound))
    return out


def format_table(results) -> str:
    width = max(len(r.name) for r in results)
    lines = [f"{'property':<{width}}  trials  fail  worst      status"]
    for r in results:
        lines.append(f"{r.name:<{width}}  {r.trials:>6}  {r.failures:>4}  {r.worst:9.2e}  "
                     f"{'PASS' if r.passed else 'FAIL'}")
    return "\n".join(lines)
