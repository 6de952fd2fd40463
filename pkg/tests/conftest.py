import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def cgauss(rng, *shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def dense_support_max(t, points=200_000):
    """Independent w(T): max over a very fine theta grid of the top eigenvalue, no refinement."""
    t = np.asarray(t, dtype=complex)
    p = (t + t.conj().T) / 2
    q = (t - t.conj().T) / 2j
    best = -np.inf
    for chunk in np.array_split(np.linspace(0, 2 * np.pi, points, endpoint=False), 20):
        h = np.cos(chunk)[:, None, None] * p - np.sin(chunk)[:, None, None] * q
        best = max(best, float(np.linalg.eigvalsh(h)[:, -1].max()))
    return best
