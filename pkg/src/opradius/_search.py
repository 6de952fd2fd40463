"""Small derivative-free search helpers shared by radius and geometry."""

from __future__ import annotations

import math

import numpy as np

INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_max(fun, lo, hi, width):
    """Golden-section maximisation run on many brackets at once.

    ``fun`` maps an array of abscissae (one per bracket) to the array of
    objective values.  Returns ``(argmax, max)`` arrays.
    """
    a = np.array(lo, dtype=float)
    b = np.array(hi, dtype=float)
    c = b - INVPHI * (b - a)
    d = a + INVPHI * (b - a)
    fc = fun(c)
    fd = fun(d)
    span = float(np.max(b - a))
    steps = max(0, math.ceil(math.log(width / span) / math.log(INVPHI))) if span > width else 0
    for _ in range(steps):
        left = fc > fd
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        new_c = b - INVPHI * (b - a)
        new_d = a + INVPHI * (b - a)
        x = np.where(left, new_c, new_d)
        fx = fun(x)
        c, fc, d, fd = (
            np.where(left, new_c, d),
            np.where(left, fx, fd),
            np.where(left, c, new_d),
            np.where(left, fc, fx),
        )
    take_c = fc >= fd
    return np.where(take_c, c, d), np.where(take_c, fc, fd)


def circular_peaks(values: np.ndarray, threshold: float, limit: int) -> np.ndarray:
    """Indices of a periodic sample that are local maxima at or above ``threshold``.

    At most ``limit`` indices are returned, highest values first on overflow.
    """
    left = np.roll(values, 1)
    right = np.roll(values, -1)
    idx = np.flatnonzero((values >= left) & (values >= right) & (values >= threshold))
    if idx.size > limit:
        idx = idx[np.argsort(-values[idx], kind="stable")[:limit]]
    return np.sort(idx)
