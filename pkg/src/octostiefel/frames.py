"""Octonionic Stiefel frames: membership, the map F(A) = A conj(A)^t - I and its critical points.

A frame is a k x n matrix of octonions.  Real coordinates of X in
M_{k x n}(O) are ordered row by row, entry by entry, eight coefficients
per entry, so the variable (i, l, t) sits at index ``8 * (i * n + l) + t``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import NotAFrame, NotOrthogonal, ParseError, DimensionMismatch
from .exactnum import (
    EXACT,
    Exact,
    Float,
    QSqrt2,
    ScalarMode,
    det,
    kernel_basis,
    rank,
    solve,
)
from .octonion import (
    E,
    Octonion,
    left_mult_matrix,
    oct_conj,
    oct_inner,
    oct_mul,
    right_mult_matrix,
    vec_to_real,
)

__all__ = [
    "OctFrame",
    "CriticalityReport",
    "frame",
    "is_frame",
    "big_f",
    "conj_transpose_product",
    "oct_matmul",
    "jacobian",
    "va_system",
    "va_dim",
    "classify",
    "xi_certificate",
    "verify_certificate",
    "act_left",
    "act_right",
    "fiber_kernel_dim",
    "fiber_system",
    "column_system",
    "phi_matrix_oct",
    "diag_double_critical",
    "z_criterion",
    "block_diag_critical",
    "gram_g4",
    "gradient_gram_g4",
    "block_diag",
    "identity_frame",
    "sample_frame",
]

_Q0 = QSqrt2(0)


@dataclass(frozen=True, eq=False)
class OctFrame:
    """A candidate point of V_k(O^n): a k x n octonion matrix."""

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise DimensionMismatch("frame rows must be non-empty and of equal length")
        object.__setattr__(self, "rows", rows)

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def is_exact(self) -> bool:
        return all(x.is_exact() for r in self.rows for x in r)

    def to_float(self) -> "OctFrame":
        return OctFrame(tuple(tuple(x.to_float() for x in r) for r in self.rows))

    def real_row(self, i: int) -> np.ndarray:
        return vec_to_real(self.rows[i])

    def __eq__(self, other):
        return isinstance(other, OctFrame) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "entries": [[x.to_json() for x in r] for r in self.rows],
        }

    @classmethod
    def from_json(cls, obj) -> "OctFrame":
        try:
            k, n, entries = obj["k"], obj["n"], obj["entries"]
        except (KeyError, TypeError):
            raise ParseError("frame JSON needs k, n, entries") from None
        if len(entries) != k or any(len(r) != n for r in entries):
            raise ParseError("frame entries do not match k x n")
        return cls(tuple(tuple(Octonion.from_json(x) for x in r) for r in entries))


def _as_oct(x) -> Octonion:
    return x if isinstance(x, Octonion) else Octonion.real(x)


def frame(rows: Sequence[Sequence], scale=1) -> OctFrame:
    """Build a frame from nested entries (octonions or scalars), times ``scale``."""
    return OctFrame(tuple(tuple(_as_oct(x) * scale for x in r) for r in rows))


def identity_frame(k: int, n: int | None = None) -> OctFrame:
    n = k if n is None else n
    return frame([[1 if i == j else 0 for j in range(n)] for i in range(k)])


def block_diag(*frames: OctFrame) -> OctFrame:
    """Block-diagonal octonion matrix with the given frames on the diagonal."""
    n = sum(f.n for f in frames)
    exact = all(f.is_exact() for f in frames)
    zero = Octonion.zero() if exact else Octonion.zero().to_float()
    rows = []
    offset = 0
    for f in frames:
        for r in f.rows:
            rows.append((zero,) * offset + r + (zero,) * (n - offset - f.n))
        offset += f.n
    return OctFrame(tuple(rows))


def oct_matmul(A: Sequence[Sequence[Octonion]], B: Sequence[Sequence[Octonion]]):
    """Product of octonion matrices given as nested sequences."""
    inner = len(B)
    out = []
    for row in A:
        if len(row) != inner:
            raise DimensionMismatch("oct_matmul: inner dimensions differ")
        out_row = []
        for j in range(len(B[0])):
            acc = oct_mul(row[0], B[0][j])
            for s in range(1, inner):
                acc = acc + oct_mul(row[s], B[s][j])
            out_row.append(acc)
        out.append(tuple(out_row))
    return tuple(out)


def _conj_t(A: Sequence[Sequence[Octonion]]):
    return tuple(
        tuple(oct_conj(A[i][j]) for i in range(len(A))) for j in range(len(A[0]))
    )


def big_f(A: OctFrame) -> tuple:
    """A conj(A)^t - I_k as a k x k octonion matrix."""
    out = []
    for i in range(A.k):
        row = []
        for j in range(A.k):
            v = oct_inner(A.rows[i], A.rows[j])
            if i == j:
                v = v - 1
            row.append(v)
        out.append(tuple(row))
    return tuple(out)


def conj_transpose_product(A: OctFrame) -> tuple:
    """conj(A)^t A, the n x n product on the other side."""
    return oct_matmul(_conj_t(A.rows), A.rows)


def _defect_small(D, mode: ScalarMode, exact_entries: bool) -> bool:
    if isinstance(mode, Exact) and exact_entries:
        return not any(bool(x) for r in D for x in r)
    eps = mode.eps if isinstance(mode, Float) else Float().eps
    return all(abs(float(v)) <= eps for r in D for x in r for v in x.c)


def is_frame(A: OctFrame, mode: ScalarMode = EXACT) -> bool:
    """True iff A conj(A)^t = I_k (identically, or entrywise within eps)."""
    if A.k > 0 and A.n < 1:
        return False
    return _defect_small(big_f(A), mode, A.is_exact())


def _require_frame(A: OctFrame, mode: ScalarMode = EXACT):
    if not is_frame(A, mode if A.is_exact() else Float()):
        raise NotAFrame("input is not an orthonormal octonion frame")


def _zeros(shape, exact: bool) -> np.ndarray:
    if exact:
        M = np.empty(shape, dtype=object)
        M[...] = _Q0
        return M
    return np.zeros(shape)


_K = np.diag([1, -1, -1, -1, -1, -1, -1, -1])


def jacobian(A: OctFrame) -> np.ndarray:
    """Real Jacobian of F at A, of size k(4k-3) x 8kn.

    Rows: the k diagonal constraints |a_i|^2, then for each pair i < j the
    eight coefficients of <a_i, a_j>_O.
    """
    k, n = A.k, A.n
    exact = A.is_exact()
    J = _zeros((k * (4 * k - 3), 8 * k * n), exact)
    K = _K.astype(object) if exact else _K.astype(float)
    for i in range(k):
        for l in range(n):
            c = 8 * (i * n + l)
            J[i, c:c + 8] = [2 * v for v in A.rows[i][l].c]
    r = k
    for i, j in combinations(range(k), 2):
        for l in range(n):
            ci = 8 * (i * n + l)
            cj = 8 * (j * n + l)
            # X_il conj(a_jl) + a_il conj(X_jl)
            J[r:r + 8, ci:ci + 8] += right_mult_matrix(oct_conj(A.rows[j][l]))
            J[r:r + 8, cj:cj + 8] += left_mult_matrix(A.rows[i][l]).dot(K)
        r += 8
    return J


def va_system(A: OctFrame) -> np.ndarray:
    """The linear map X -> A conj(X)^t + X conj(A)^t, assembled column by column.

    Each column evaluates the map on one real basis direction using direct
    octonion products; rows are the 8k^2 coefficients of the k x k result.
    """
    k, n = A.k, A.n
    exact = A.is_exact()
    M = _zeros((8 * k * k, 8 * k * n), exact)
    zero = Octonion.zero() if exact else Octonion.zero().to_float()
    for i in range(k):
        for l in range(n):
            for t in range(8):
                et = E(t) if exact else E(t).to_float()
                out = [[zero] * k for _ in range(k)]
                for p in range(k):
                    out[p][i] = out[p][i] + oct_mul(A.rows[p][l], oct_conj(et))
                for q in range(k):
                    out[i][q] = out[i][q] + oct_mul(et, oct_conj(A.rows[q][l]))
                col = [v for row in out for x in row for v in x.c]
                M[:, 8 * (i * n + l) + t] = col
    return M


def va_dim(A: OctFrame, mode: ScalarMode = EXACT) -> int:
    """dim V_A through the Jacobian kernel."""
    if not A.is_exact():
        mode = mode if isinstance(mode, Float) else Float()
    return 8 * A.k * A.n - rank(jacobian(A), mode)


@dataclass
class CriticalityReport:
    classification: str
    vA_dim: int
    expected_regular_dim: int
    certificate: tuple | None = None
    advisory: bool = False

    @property
    def critical(self) -> bool:
        return self.classification == "Critical"

    def to_json(self) -> dict:
        out = {
            "classification": self.classification,
            "vA_dim": self.vA_dim,
            "expected_regular_dim": self.expected_regular_dim,
        }
        if self.certificate is not None:
            out["certificate"] = [[x.to_json() for x in r] for r in self.certificate]
        if self.advisory:
            out["advisory"] = True
        return out


def _xi_system(A: OctFrame, exact: bool) -> np.ndarray:
    """Linear system for xi A = 0 with xi skew and imaginary.

    Unknowns: for each pair i < j (lexicographic), seven coefficients of
    xi_ij.  Rows: the eight coefficients of (xi A)_{p,l}.
    """
    k, n = A.k, A.n
    pairs = list(combinations(range(k), 2))
    S = _zeros((8 * k * n, 7 * len(pairs)), exact)
    units = [E(t) if exact else E(t).to_float() for t in range(1, 8)]
    for col_pair, (i, j) in enumerate(pairs):
        for t, et in enumerate(units):
            col = 7 * col_pair + t
            for l in range(n):
                # xi_ij a_jl lands in row i, xi_ji a_il = -e_t a_il in row j
                S[8 * (i * n + l):8 * (i * n + l) + 8, col] += oct_mul(et, A.rows[j][l]).c
                S[8 * (j * n + l):8 * (j * n + l) + 8, col] -= np.array(
                    oct_mul(et, A.rows[i][l]).c, dtype=object if exact else float
                )
    return S


def _xi_from_vector(v, k: int) -> tuple:
    exact = v.dtype == object
    zero = Octonion.zero() if exact else Octonion.zero().to_float()
    xi = [[zero] * k for _ in range(k)]
    pairs = list(combinations(range(k), 2))
    for idx, (i, j) in enumerate(pairs):
        coeffs = [(_Q0 if exact else 0.0)] + list(v[7 * idx:7 * idx + 7])
        x = Octonion(coeffs)
        xi[i][j] = x
        xi[j][i] = -x
    return tuple(tuple(r) for r in xi)


def verify_certificate(xi, A: OctFrame) -> bool:
    """xi non-zero, skew (xi^t = -xi), imaginary entries, and xi A = 0 exactly."""
    k = A.k
    if len(xi) != k or any(len(r) != k for r in xi):
        return False
    if not any(bool(x) for r in xi for x in r):
        return False
    for i in range(k):
        for j in range(k):
            if xi[i][j].c[0] or xi[i][j] != -xi[j][i]:
                return False
    prod = oct_matmul(xi, A.rows)
    return not any(bool(x) for r in prod for x in r)


def xi_certificate(A: OctFrame, mode: ScalarMode = EXACT):
    """A non-zero skew imaginary xi with xi A = 0, or None when none exists."""
    exact = A.is_exact() and isinstance(mode, Exact)
    S = _xi_system(A if exact else A.to_float(), exact)
    basis = kernel_basis(S, mode if not exact else EXACT)
    if not basis:
        return None
    return _xi_from_vector(basis[0], A.k)


def classify(A: OctFrame, mode: ScalarMode = EXACT) -> CriticalityReport:
    """Regular or critical point of F, decided by the dimension of V_A."""
    float_run = isinstance(mode, Float) or not A.is_exact()
    if float_run:
        mode = mode if isinstance(mode, Float) else Float()
        if not is_frame(A, mode):
            raise NotAFrame("input is not a frame within eps")
        A = A.to_float()
    elif not is_frame(A):
        raise NotAFrame("input is not an orthonormal octonion frame")
    k, n = A.k, A.n
    expected = 8 * k * n - k * (4 * k - 3)
    dim = va_dim(A, mode)
    if dim == expected:
        return CriticalityReport("Regular", dim, expected, None, float_run)
    cert = None
    if not float_run:
        cert = xi_certificate(A)
    return CriticalityReport("Critical", dim, expected, cert, float_run)


def _check_orthogonal(S) -> None:
    S = np.asarray(S)
    k = S.shape[0]
    if S.shape != (k, k):
        raise NotOrthogonal("orthogonal matrix must be square")
    P = S.dot(S.T)
    if S.dtype == object:
        ok = all(P[i, j] == (1 if i == j else 0) for i in range(k) for j in range(k))
    else:
        ok = bool(np.allclose(P, np.eye(k), atol=1e-9))
    if not ok:
        raise NotOrthogonal("S S^t != I")


def _real_scalar(x):
    if isinstance(x, (np.floating, float)):
        return float(x)
    return QSqrt2.coerce(x) if not isinstance(x, QSqrt2) else x


def act_left(S, A: OctFrame) -> OctFrame:
    """S A for a real orthogonal k x k matrix S."""
    _check_orthogonal(S)
    S = np.asarray(S)
    if S.shape[0] != A.k:
        raise DimensionMismatch("act_left: S must be k x k")
    rows = []
    for i in range(A.k):
        row = []
        for l in range(A.n):
            acc = None
            for p in range(A.k):
                s = _real_scalar(S[i, p])
                if not s:
                    continue
                term = A.rows[p][l] * s
                acc = term if acc is None else acc + term
            row.append(acc if acc is not None else A.rows[0][l] * 0)
        rows.append(tuple(row))
    return OctFrame(tuple(rows))


def act_right(T, A: OctFrame) -> OctFrame:
    """A T^t for a real orthogonal n x n matrix T."""
    _check_orthogonal(T)
    T = np.asarray(T)
    if T.shape[0] != A.n:
        raise DimensionMismatch("act_right: T must be n x n")
    rows = []
    for i in range(A.k):
        row = []
        for j in range(A.n):
            acc = None
            for l in range(A.n):
                s = _real_scalar(T[j, l])
                if not s:
                    continue
                term = A.rows[i][l] * s
                acc = term if acc is None else acc + term
            row.append(acc if acc is not None else A.rows[i][0] * 0)
        rows.append(tuple(row))
    return OctFrame(tuple(rows))


def fiber_system(z: OctFrame) -> np.ndarray:
    """8k x 8n real matrix of w -> (<w, z_i>_O)_i."""
    exact = z.is_exact()
    M = _zeros((8 * z.k, 8 * z.n), exact)
    for i in range(z.k):
        for l in range(z.n):
            M[8 * i:8 * i + 8, 8 * l:8 * l + 8] = right_mult_matrix(oct_conj(z.rows[i][l]))
    return M


def column_system(A: OctFrame) -> np.ndarray:
    """8k x 8n real matrix of x -> A x for an octonion column x."""
    M = _zeros((8 * A.k, 8 * A.n), A.is_exact())
    for i in range(A.k):
        for l in range(A.n):
            M[8 * i:8 * i + 8, 8 * l:8 * l + 8] = left_mult_matrix(A.rows[i][l])
    return M


def fiber_kernel_dim(z: OctFrame, mode: ScalarMode = EXACT) -> int:
    """Real dimension of the octonionic orthogonal complement of the rows of z."""
    if not z.is_exact():
        mode = mode if isinstance(mode, Float) else Float()
    if not is_frame(z, mode):
        raise NotAFrame("fiber_kernel_dim needs a frame")
    return 8 * z.n - rank(fiber_system(z), mode)


def _mul_rows(x: Octonion, u: Sequence[Octonion]) -> np.ndarray:
    return vec_to_real([oct_mul(x, v) for v in u])


def phi_matrix_oct(u: Sequence[Octonion], v: Sequence[Octonion]) -> np.ndarray:
    """7 x 7 real matrix with entries <e_i u, e_j v> (componentwise left products)."""
    exact = all(x.is_exact() for x in list(u) + list(v))
    units = [E(t) if exact else E(t).to_float() for t in range(1, 8)]
    U = np.array([_mul_rows(e, u) for e in units], dtype=object if exact else float)
    V = np.array([_mul_rows(e, v) for e in units], dtype=object if exact else float)
    return U.dot(V.T)


def _eye(n: int, exact: bool, scale=1) -> np.ndarray:
    M = _zeros((n, n), exact)
    for i in range(n):
        M[i, i] = QSqrt2(scale) if exact else float(scale)
    return M


def _mode_for(A: OctFrame, mode: ScalarMode) -> ScalarMode:
    if isinstance(mode, Float) or not A.is_exact():
        return mode if isinstance(mode, Float) else Float()
    return EXACT


def _is_zero_scalar(x, mode: ScalarMode) -> bool:
    if isinstance(mode, Float):
        return abs(float(x)) <= mode.pivot
    return not x


def diag_double_critical(A: OctFrame, mode: ScalarMode = EXACT) -> bool:
    """diag(A, A) is critical iff det(I - phi^t phi) = 0, phi_ij = <e_i a, e_j b>."""
    if (A.k, A.n) != (2, 2):
        raise DimensionMismatch("diag_double_critical needs a 2 x 2 frame")
    mode = _mode_for(A, mode)
    _require_frame(A, mode)
    if isinstance(mode, Float):
        A = A.to_float()
    phi = phi_matrix_oct(A.rows[0], A.rows[1])
    exact = isinstance(mode, Exact)
    value = det(_eye(7, exact) - phi.T.dot(phi), mode)
    return _is_zero_scalar(value, mode)


def z_criterion(A: OctFrame, B: OctFrame, mode: ScalarMode = EXACT):
    """Return (Z, det(Z - W Z^{-1} W)) for the block point diag(A, B).

    Z = 4I - (phi phi^t + psi psi^t) and W = phi psi + psi phi with
    phi = Phi_ab, psi = Phi_cd taken from the rows of A and B.
    """
    for X in (A, B):
        if (X.k, X.n) != (2, 2):
            raise DimensionMismatch("z_criterion needs 2 x 2 frames")
    mode = _mode_for(A, mode) if isinstance(_mode_for(B, mode), Exact) else _mode_for(B, mode)
    _require_frame(A, mode)
    _require_frame(B, mode)
    if isinstance(mode, Float):
        A, B = A.to_float(), B.to_float()
    exact = isinstance(mode, Exact)
    phi = phi_matrix_oct(A.rows[0], A.rows[1])
    psi = phi_matrix_oct(B.rows[0], B.rows[1])
    Z = _eye(7, exact, 4) - (phi.dot(phi.T) + psi.dot(psi.T))
    W = phi.dot(psi) + psi.dot(phi)
    schur = Z - W.dot(solve(Z, W, mode))
    return Z, det(schur, mode)


def block_diag_critical(A: OctFrame, B: OctFrame, mode: ScalarMode = EXACT) -> bool:
    """diag(A, B) is critical iff det(Z - W Z^{-1} W) = 0."""
    _, value = z_criterion(A, B, mode)
    mode = _mode_for(A, mode) if A.is_exact() and B.is_exact() else Float()
    return _is_zero_scalar(value, mode)


_G4_LAYOUT = (
    # rows f, g, h, p, q, r against the same columns; entries name Phi_{xy}
    (None, "bc", "bd", "ca", "da", 0),
    ("cb", None, "cd", "ab", 0, "da"),
    ("db", "dc", None, 0, "ab", "ac"),
    ("ac", "ba", 0, None, "cd", "db"),
    ("ad", 0, "ba", "dc", None, "bc"),
    (0, "ad", "ca", "bd", "cb", None),
)


def gram_g4(A: OctFrame, mode: ScalarMode = EXACT) -> np.ndarray:
    """42 x 42 Gram matrix of the imaginary gradients, from its Phi-block layout."""
    if A.k != 4:
        raise DimensionMismatch("gram_g4 needs a 4-row frame")
    mode = _mode_for(A, mode)
    _require_frame(A, mode)
    if isinstance(mode, Float):
        A = A.to_float()
    exact = isinstance(mode, Exact)
    names = "abcd"
    cache = {}

    def phi(key):
        if key not in cache:
            cache[key] = phi_matrix_oct(A.rows[names.index(key[0])], A.rows[names.index(key[1])])
        return cache[key]

    G = _zeros((42, 42), exact)
    for bi, row in enumerate(_G4_LAYOUT):
        for bj, key in enumerate(row):
            if key is None:
                G[7 * bi:7 * bi + 7, 7 * bj:7 * bj + 7] = _eye(7, exact, 2)
            elif key != 0:
                G[7 * bi:7 * bi + 7, 7 * bj:7 * bj + 7] = phi(key)
    return G


def gradient_gram_g4(A: OctFrame) -> np.ndarray:
    """Gram matrix of the 42 gradients computed directly from their coordinates."""
    exact = A.is_exact()
    return _xi_system(A, exact).T.dot(_xi_system(A, exact))


def sample_frame(k: int, n: int, rng: np.random.Generator, max_tries: int = 100) -> OctFrame:
    """Float frame: each row a random unit vector octonion-orthogonal to the previous ones."""
    from .errors import SamplingFailed

    rows: list[np.ndarray] = []
    for _ in range(k):
        for _attempt in range(max_tries):
            v = rng.standard_normal(8 * n)
            if rows:
                span = []
                for r in rows:
                    u = [Octonion(r[8 * l:8 * l + 8]) for l in range(n)]
                    for t in range(8):
                        span.append(vec_to_real([oct_mul(E(t).to_float(), x) for x in u]))
                Q, _ = np.linalg.qr(np.array(span).T)
                v = v - Q @ (Q.T @ v)
            norm = np.linalg.norm(v)
            if norm > 1e-6:
                rows.append(v / norm)
                break
        else:
            raise SamplingFailed("could not extend the frame")
    return OctFrame(
        tuple(tuple(Octonion(r[8 * l:8 * l + 8]) for l in range(n)) for r in rows)
    )
