"""Random exact elements of O(k) and U(k) via the Cayley transform.

For a skew matrix K the Cayley transform (I + K)^{-1}(I - K) is orthogonal
and has rational entries whenever K does, so random translates of exact
frames stay exact.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .exactnum import QSqrt2, exact_array, solve
from .frames import OctFrame
from .octonion import Octonion

__all__ = ["random_orthogonal", "random_unitary", "unitary_frame"]


def _rand_fraction(rng: np.random.Generator, bound: int = 3) -> Fraction:
    return Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, bound + 1)))


def _cayley(K: np.ndarray) -> np.ndarray:
    n = K.shape[0]
    I = exact_array(np.eye(n, dtype=int).tolist())
    return solve(I + K, I - K)


def random_orthogonal(k: int, rng: np.random.Generator) -> np.ndarray:
    """Exact k x k orthogonal matrix, with determinant of either sign."""
    K = exact_array([[0] * k for _ in range(k)])
    for i in range(k):
        for j in range(i + 1, k):
            v = QSqrt2(_rand_fraction(rng))
            K[i, j] = v
            K[j, i] = -v
    Q = _cayley(K)
    if rng.integers(2):
        Q[0, :] = -Q[0, :]
    return Q


def random_unitary(k: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Exact unitary U = P + iW, returned as the real pair (P, W)."""
    # skew-Hermitian X + iY: X skew, Y symmetric; its real form [[X, -Y], [Y, X]] is skew
    X = np.zeros((k, k), dtype=object)
    Y = np.zeros((k, k), dtype=object)
    for i in range(k):
        Y[i, i] = _rand_fraction(rng)
        for j in range(i + 1, k):
            X[i, j] = _rand_fraction(rng)
            X[j, i] = -X[i, j]
            Y[i, j] = Y[j, i] = _rand_fraction(rng)
    R = exact_array(np.block([[X, -Y], [Y, X]]).tolist())
    Q = _cayley(R)
    return Q[:k, :k], Q[k:, :k]


def unitary_frame(P: np.ndarray, W: np.ndarray) -> OctFrame:
    """Embed P + iW into octonion matrices through i -> e_1."""
    zero = QSqrt2(0)
    k = P.shape[0]
    return OctFrame(
        tuple(
            tuple(Octonion([P[r, c], W[r, c]] + [zero] * 6) for c in range(k))
            for r in range(k)
        )
    )
