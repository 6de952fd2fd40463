import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import cgauss
from opradius import (
    NonFiniteError,
    NotHermitianError,
    ShapeError,
    ZeroOperatorError,
    adjoint,
    hermitian_eig_max,
    inner,
    jacobi_eigh,
    max_singular_subspace,
    operator_norm,
)
from opradius.samplers import random_unitary


class TestAdjoint:
    def test_nilpotent(self):
        assert np.array_equal(adjoint([[0, 1], [0, 0]]), [[0, 0], [1, 0]])

    def test_scalar_conjugation(self):
        assert adjoint([[1j]])[0, 0] == -1j

    def test_hermitian_fixed(self):
        h = np.array([[2, 1 - 1j], [1 + 1j, -3]])
        assert np.array_equal(adjoint(h), h)

    def test_rejects_nan(self):
        with pytest.raises(NonFiniteError):
            adjoint([[np.nan]])


class TestInner:
    def test_examples(self):
        assert inner([1, 0], [1, 0]) == 1
        assert inner([1, 0], [0, 1]) == 0
        assert inner([1, 1j], [1, 1j]) == 2

    def test_linear_in_first_argument(self):
        assert inner([1j, 0], [1, 0]) == 1j
        assert inner([1, 0], [1j, 0]) == -1j

    def test_dimension_mismatch(self):
        with pytest.raises(ShapeError):
            inner([1, 0], [1, 0, 0])

    def test_conjugate_symmetry(self, rng):
        u, v = cgauss(rng, 5), cgauss(rng, 5)
        assert inner(u, v) == pytest.approx(np.conj(inner(v, u)), abs=1e-14)
        assert inner(u, u).imag == 0 and inner(u, u).real > 0


class TestEigMax:
    @pytest.mark.parametrize("method", ["lapack", "jacobi"])
    def test_identity(self, method):
        assert hermitian_eig_max(np.eye(2), method).value == pytest.approx(1.0)

    @pytest.mark.parametrize("method", ["lapack", "jacobi"])
    def test_diag(self, method):
        pair = hermitian_eig_max(np.diag([2.0, 5.0]), method)
        assert pair.value == pytest.approx(5.0)
        assert abs(abs(pair.vector[1]) - 1) < 1e-12

    @pytest.mark.parametrize("method", ["lapack", "jacobi"])
    def test_pauli_x(self, method):
        pair = hermitian_eig_max([[0, 1], [1, 0]], method)
        assert pair.value == pytest.approx(1.0)
        assert np.allclose(np.abs(pair.vector), [2**-0.5, 2**-0.5], atol=1e-12)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitianError):
            hermitian_eig_max([[0, 1], [0, 0]])

    def test_rejects_rectangular(self):
        with pytest.raises(ShapeError):
            hermitian_eig_max(np.ones((2, 3)))

    def test_tiny_asymmetry_is_symmetrised(self):
        h = np.array([[1.0, 1e-14], [0.0, 2.0]])
        assert hermitian_eig_max(h).value == pytest.approx(2.0)

    @pytest.mark.parametrize("n", [1, 2, 5, 12])
    def test_residual_and_unit_norm(self, rng, n):
        a = cgauss(rng, n, n)
        h = a + a.conj().T
        for method in ("lapack", "jacobi"):
            lam, v = hermitian_eig_max(h, method)
            assert abs(np.linalg.norm(v) - 1) < 1e-12
            assert np.linalg.norm(h @ v - lam * v) <= 1e-10 * (1 + np.linalg.norm(h, 2))

    def test_rayleigh_bound(self, rng):
        for _ in range(10):
            a = cgauss(rng, 6, 6)
            h = a + a.conj().T
            lam = hermitian_eig_max(h).value
            vs = cgauss(rng, 100, 6)
            vs /= np.linalg.norm(vs, axis=1, keepdims=True)
            rq = np.einsum("ki,ij,kj->k", vs.conj(), h, vs).real
            assert np.all(rq <= lam + 1e-10)


class TestJacobi:
    @pytest.mark.parametrize("n", [2, 3, 8, 16])
    def test_matches_lapack(self, rng, n):
        a = cgauss(rng, n, n)
        h = a + a.conj().T
        w, v = jacobi_eigh(h)
        assert np.allclose(w, np.linalg.eigvalsh(h), atol=1e-12 * np.linalg.norm(h))
        assert np.allclose(v.conj().T @ v, np.eye(n), atol=1e-12)
        assert np.allclose(h @ v, v * w, atol=1e-11 * np.linalg.norm(h))

    def test_degenerate_spectrum(self, rng):
        u = random_unitary(rng, 4)
        h = u @ np.diag([1.0, 1.0, -2.0, 3.0]) @ u.conj().T
        w, _ = jacobi_eigh(h)
        assert np.allclose(w, [-2, 1, 1, 3], atol=1e-12)


class TestOperatorNorm:
    def test_examples(self):
        assert operator_norm([[0, 1], [0, 0]]) == pytest.approx(1.0)
        assert operator_norm(np.diag([3, 4j])) == pytest.approx(4.0)
        assert operator_norm([[1, 1], [1, 1]]) == pytest.approx(2.0)

    def test_zero(self):
        assert operator_norm(np.zeros((3, 3))) == 0.0

    def test_equals_sqrt_of_top_eigenvalue(self, rng):
        a = cgauss(rng, 5, 5)
        assert operator_norm(a) == pytest.approx(np.sqrt(hermitian_eig_max(a.conj().T @ a, "jacobi").value), abs=1e-12)

    def test_adjoint_and_unitary_invariance(self, rng):
        for n in range(1, 9):
            a, u = cgauss(rng, n, n), random_unitary(rng, n)
            assert abs(operator_norm(adjoint(a)) - operator_norm(a)) <= 1e-10
            assert abs(operator_norm(u.conj().T @ a @ u) - operator_norm(a)) <= 1e-9


matrices = st.integers(1, 8).flatmap(
    lambda n: st.lists(st.floats(-10, 10), min_size=6 * n * n, max_size=6 * n * n).map(
        lambda xs, n=n: [np.array(xs[k * 2 * n * n:(k + 1) * 2 * n * n]).view(complex).reshape(n, n) for k in range(3)]
    )
)


@settings(max_examples=60, deadline=None)
@given(matrices, st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False))
def test_norm_axioms(triple, c):
    a, b, _ = triple
    scale = 1 + operator_norm(a) + operator_norm(b)
    assert operator_norm(a + b) <= operator_norm(a) + operator_norm(b) + 1e-9 * scale
    assert abs(operator_norm(c * a) - abs(c) * operator_norm(a)) <= 1e-9 * (1 + abs(c)) * scale
    assert np.array_equal(adjoint(adjoint(a)), a)


class TestMaxSingularSubspace:
    def test_examples(self):
        assert max_singular_subspace(np.diag([1, -1])).shape == (2, 2)
        basis = max_singular_subspace(np.diag([2, 1]))
        assert basis.shape == (2, 1) and abs(abs(basis[0, 0]) - 1) < 1e-12
        basis = max_singular_subspace([[0, 1], [0, 0]])
        assert basis.shape == (2, 1) and abs(abs(basis[1, 0]) - 1) < 1e-12

    def test_zero_matrix(self):
        with pytest.raises(ZeroOperatorError):
            max_singular_subspace(np.zeros((2, 2)))

    def test_attainment_and_orthonormality(self, rng):
        u = random_unitary(rng, 5)
        a = u @ np.diag([3.0, 3.0, 3.0 * (1 - 1e-12), 1.0, 0.5]) @ random_unitary(rng, 5)
        basis = max_singular_subspace(a)
        assert basis.shape[1] == 3
        assert np.allclose(basis.conj().T @ basis, np.eye(3), atol=1e-12)
        z = basis @ cgauss(rng, 3)
        z /= np.linalg.norm(z)
        assert np.linalg.norm(a @ z) >= (1 - 1e-8) * operator_norm(a)
