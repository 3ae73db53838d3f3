"""Extrinsic geometry of Omega_{4n,4} (definite) inside S^{12n-1}(sqrt 3).

Points are row vectors x = (a, b, c) in R^{12n}.  Every normal matrix is
stored as ``scale * M`` with ``M`` integral and ``scale`` in {1/sqrt2,
1/sqrt6}; only ``scale**2`` is needed for the exact identities, so the
scale itself never enters a computation over Q(sqrt 2).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cache, cached_property
from fractions import Fraction

import numpy as np

from .clifford import CliffordSystem, Definite, build_system
from .errors import BadDimension, DimensionMismatch, IdentityFailed, NotAMember
from .exactnum import EXACT, INV_SQRT2, Float, QSqrt2, ScalarMode, kernel_basis, rank, solve, to_float
from .omega.core import OmegaPoint, _dot, gradient_matrix, is_member

__all__ = [
    "NORMAL_NAMES",
    "NormalMatrix",
    "NormalFrame",
    "Spectrum",
    "normal_frame",
    "base_point",
    "mean_curvature_component",
    "tangent_basis",
    "skew_hermitian_basis",
    "shape_operator_matrix",
    "shape_operator_spectrum",
    "shape_operator_eigenvalues",
    "austere_test",
]

NORMAL_NAMES = tuple(
    [f"A{i}{s}" for s in "fgh" for i in range(4)] + ["A13", "A14"]
)

# claimed eigenvalues of sqrt6 * A_{xi_14} at the base point, n = 3
_XI14_SPECTRUM = {Fraction(-1): 10, Fraction(1, 2): 8, Fraction(2): 3}


@dataclass(eq=False)
class NormalMatrix:
    """A_beta = scale * M with M an integral symmetric 12n x 12n matrix."""

    name: str
    M: np.ndarray
    scale2: Fraction

    @cached_property
    def entries(self) -> tuple:
        """Nonzero (row, col, value) triples; the matrices are very sparse."""
        return tuple((i, j, int(v)) for (i, j), v in np.ndenumerate(self.M) if v)

    def row_times(self, x: np.ndarray) -> np.ndarray:
        """x M for a row vector x, exact or float."""
        if x.dtype != object:
            return x @ to_float(self.M)
        out = [QSqrt2(0)] * len(x)
        for i, j, v in self.entries:
            out[j] = out[j] + x[i] * v
        return np.array(out, dtype=object)

    def exact(self) -> np.ndarray:
        """The matrix itself over Q(sqrt 2); only available for scale 1/sqrt2."""
        if self.scale2 != Fraction(1, 2):
            raise ValueError(f"{self.name} has scale 1/sqrt6, not in Q(sqrt 2)")
        return self.M * INV_SQRT2

    def to_float(self) -> np.ndarray:
        return to_float(self.M) * float(self.scale2) ** 0.5

    def trace(self) -> int:
        return int(sum(self.M[i, i] for i in range(self.M.shape[0])))

    def is_symmetric(self) -> bool:
        return bool(np.all(self.M == self.M.T))


@dataclass(frozen=True, eq=False)
class NormalFrame:
    n: int
    matrices: tuple

    def __len__(self):
        return len(self.matrices)

    def __getitem__(self, beta: int) -> NormalMatrix:
        """1-based, matching the order A0f..A3f, A0g..A3g, A0h..A3h, A13, A14."""
        if not 1 <= beta <= len(self.matrices):
            raise IndexError("normal index runs from 1 to 14")
        return self.matrices[beta - 1]


def _zeros(k: int) -> np.ndarray:
    out = np.empty((k, k), dtype=object)
    out[:] = 0
    return out


def _ident(k: int) -> np.ndarray:
    out = _zeros(k)
    for i in range(k):
        out[i, i] = 1
    return out


def _blocks3(parts: dict, k: int) -> np.ndarray:
    out = _zeros(3 * k)
    for (r, c), B in parts.items():
        out[r * k:(r + 1) * k, c * k:(c + 1) * k] = B
    return out


def _system(n: int) -> CliffordSystem:
    return build_system(4, n, Definite())


@cache
def normal_frame(n: int) -> NormalFrame:
    """The 14 symmetric traceless matrices whose images x A_beta span the normal space."""
    if n < 3:
        raise BadDimension("the normal frame is defined for n >= 3")
    sys = _system(n)
    k = 4 * n
    I = _ident(k)
    half, sixth = Fraction(1, 2), Fraction(1, 6)
    pairs = {"f": (0, 1), "g": (1, 2), "h": (0, 2)}
    mats = []
    for s, (r, c) in pairs.items():
        mats.append(NormalMatrix(f"A0{s}", _blocks3({(r, c): I, (c, r): I}, k), half))
        for i in range(1, 4):
            # D~_i is the transpose of E_i, so x A_i^f = (E_i b, -E_i a, 0)/sqrt2
            D = sys.E[i - 1].T.copy()
            mats.append(NormalMatrix(f"A{i}{s}", _blocks3({(r, c): -D, (c, r): D}, k), half))
    mats.append(NormalMatrix("A13", _blocks3({(0, 0): I, (2, 2): -I}, k), half))
    mats.append(NormalMatrix("A14", _blocks3({(0, 0): I, (1, 1): -2 * I, (2, 2): I}, k), sixth))
    order = {name: i for i, name in enumerate(NORMAL_NAMES)}
    mats.sort(key=lambda A: order[A.name])
    return NormalFrame(n, tuple(mats))


def base_point(n: int) -> OmegaPoint:
    """(e^(1), e^(2), e^(3)) in H^n, i.e. the identity in the first three quaternion columns."""
    if n < 3:
        raise BadDimension("need n >= 3")
    vecs = []
    for r in range(3):
        v = [0] * (4 * n)
        v[4 * r] = 1
        vecs.append(np.array([QSqrt2(x) for x in v], dtype=object))
    return OmegaPoint(*vecs)


def _check(n: int, p: OmegaPoint, mode: ScalarMode) -> CliffordSystem:
    sys = _system(n)
    if p.l != sys.l:
        raise DimensionMismatch(f"point has length {p.l}, expected {sys.l}")
    if not is_member(sys, p, mode if p.is_exact() else Float()):
        raise NotAMember("point is not in Omega_{4n,4}")
    return sys


def mean_curvature_component(
    n: int, p: OmegaPoint, beta: int, mode: ScalarMode = EXACT, frame: NormalFrame | None = None
):
    """<H, xi_beta> divided by the scale of A_beta.

    Evaluates -Tr A + <xA, x>/3 + sum_alpha <xi_alpha A, xi_alpha> with
    xi_alpha = x A_alpha.  The scale factor is dropped so the value stays in
    Q; it vanishes exactly when the true component does.
    """
    _check(n, p, mode)
    frame = frame or normal_frame(n)
    A = frame[beta]
    x = p.stacked() if p.is_exact() else to_float(p.stacked())
    xA = A.row_times(x)
    third = Fraction(1, 3) if p.is_exact() else 1 / 3
    total = -A.trace() + third * _dot(xA, x)
    for N in frame.matrices:
        xi = N.row_times(x)
        w = N.scale2 if p.is_exact() else float(N.scale2)
        total = total + w * _dot(A.row_times(xi), xi)
    return total


def tangent_basis(n: int = 3, p: OmegaPoint | None = None) -> np.ndarray:
    """Exact basis of ker(dF) at p (default: the base point), as columns."""
    p = p or base_point(n)
    sys = _check(n, p, EXACT)
    basis = kernel_basis(gradient_matrix(sys, p))
    return np.array(basis, dtype=object).T


def _conj_coords(t: int) -> int:
    return 1 if t == 0 else -1


def skew_hermitian_basis(n: int = 3) -> np.ndarray:
    """Orthonormal basis (columns) of {X : X_{3x3} + conj(X_{3x3})^t = 0} padded by free columns 4..n."""
    if n < 3:
        raise BadDimension("need n >= 3")
    k = 4 * n
    cols = []

    def slot(r, c, t):
        return r * k + 4 * c + t

    def empty():
        return np.array([QSqrt2(0)] * (3 * k), dtype=object)

    for r in range(3):
        for t in range(1, 4):
            v = empty()
            v[slot(r, r, t)] = QSqrt2(1)
            cols.append(v)
    for r in range(3):
        for c in range(r + 1, 3):
            for t in range(4):
                v = empty()
                v[slot(r, c, t)] = INV_SQRT2
                # X_cr = -conj(X_rc)
                v[slot(c, r, t)] = -_conj_coords(t) * INV_SQRT2
                cols.append(v)
    for r in range(3):
        for c in range(3, n):
            for t in range(4):
                v = empty()
                v[slot(r, c, t)] = QSqrt2(1)
                cols.append(v)
    return np.array(cols, dtype=object).T


def shape_operator_matrix(n: int = 3, beta: int = 14, basis: str = "orthonormal") -> np.ndarray:
    """Matrix of A_{xi_beta} / scale_beta at the base point on the tangent space.

    The shape operator is X -> -(X A_beta)^T.  With ``basis="orthonormal"``
    the skew-Hermitian basis is used and the result is symmetric; with
    ``basis="kernel"`` the exact kernel of dF is used and the operator is
    expressed through the Gram inverse.
    """
    frame = normal_frame(n)
    M = frame[beta].M
    if basis == "orthonormal":
        Q = skew_hermitian_basis(n)
        return -Q.T.dot(M.dot(Q))
    if basis == "kernel":
        B = tangent_basis(n)
        return solve(B.T.dot(B), -B.T.dot(M.dot(B)))
    raise ValueError("basis must be 'orthonormal' or 'kernel'")


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues c/sqrt6 (c rational) with multiplicities."""

    pairs: tuple

    @property
    def dimension(self) -> int:
        return sum(m for _, m in self.pairs)

    def scaled_trace(self) -> Fraction:
        return sum((c * m for c, m in self.pairs), Fraction(0))

    def to_json(self) -> list:
        return [{"eigenvalue": _format_over_sqrt6(c), "multiplicity": m} for c, m in self.pairs]


def _format_over_sqrt6(c: Fraction) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return f"{c.numerator}/√6"
    return f"({c})/√6"


def _identity(k: int) -> np.ndarray:
    return np.array([[QSqrt2(int(i == j)) for j in range(k)] for i in range(k)], dtype=object)


def shape_operator_spectrum(n: int = 3, claimed: dict | None = None) -> Spectrum:
    """Certified spectrum of sqrt6 * A_{xi_14} at the base point.

    For each claimed eigenvalue c the multiplicity is read off as the rank
    deficiency of (S - cI), computed exactly on both tangent bases; the
    deficiencies must match the claim and sum to the dimension, so no
    eigenvalue is missed.
    """
    if claimed is None:
        if n != 3:
            raise BadDimension("the built-in claim covers n = 3; pass claimed= for other n")
        claimed = _XI14_SPECTRUM
    S = shape_operator_matrix(n, 14, "orthonormal")
    if not np.all(S == S.T):
        raise IdentityFailed("shape operator is not symmetric")
    K = shape_operator_matrix(n, 14, "kernel")
    dim = S.shape[0]
    if K.shape[0] != dim:
        raise IdentityFailed("tangent space dimensions disagree")
    I = _identity(dim)
    pairs = []
    for c, mult in sorted(claimed.items()):
        defects = {dim - rank(X - I * QSqrt2(Fraction(c))) for X in (S, K)}
        if defects != {mult}:
            raise IdentityFailed(f"eigenvalue {c}/sqrt6 has multiplicity {sorted(defects)}, not {mult}")
        pairs.append((Fraction(c), mult))
    spec = Spectrum(tuple(pairs))
    if spec.dimension != dim:
        raise IdentityFailed(f"multiplicities sum to {spec.dimension}, not {dim}")
    return spec


def shape_operator_eigenvalues(n: int = 3, beta: int = 14) -> np.ndarray:
    """Float eigenvalues of A_{xi_beta}/scale at the base point (exploratory only)."""
    return np.sort(np.linalg.eigvalsh(to_float(shape_operator_matrix(n, beta))))


def austere_test(spectrum) -> bool:
    """True iff the (eigenvalue, multiplicity) multiset is fixed by negation."""
    pairs = spectrum.pairs if isinstance(spectrum, Spectrum) else spectrum
    counts = Counter()
    for c, m in pairs:
        counts[Fraction(c)] += m
    return all(counts[-c] == m for c, m in counts.items())
