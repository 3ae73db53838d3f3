"""Exact scalars in Q(sqrt 2) and the linear-algebra kernels built on them.

Matrices are plain numpy arrays.  An ``object`` array holds exact entries
(ints, Fractions or :class:`QSqrt2`); a ``float64`` array is a float-mode
matrix.  Exact rank, kernel, determinant and solve run fraction-free over
the ring Z[sqrt 2] after clearing denominators row by row, so every
division performed is exact and checked.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from numbers import Rational

import numpy as np

from .errors import NotSymmetric, OctoStiefelError, ParseError

__all__ = [
    "QSqrt2",
    "SQRT2",
    "INV_SQRT2",
    "Exact",
    "Float",
    "EXACT",
    "ScalarMode",
    "qsqrt2_sign",
    "qsqrt2_sqrt",
    "exact_array",
    "is_exact",
    "to_float",
    "rank",
    "kernel_basis",
    "det",
    "solve",
    "is_positive_definite",
    "is_zero_matrix",
    "matrix_to_json",
    "matrix_from_json",
    "parse_scalar",
    "format_scalar",
]


class QSqrt2:
    """The number ``a + b*sqrt(2)`` with rational ``a`` and ``b``."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction) -> "QSqrt2":
        obj = object.__new__(cls)
        obj.a = a
        obj.b = b
        return obj

    @staticmethod
    def coerce(x) -> "QSqrt2":
        if isinstance(x, QSqrt2):
            return x
        if isinstance(x, (int, Fraction)) or isinstance(x, Rational):
            return QSqrt2._raw(Fraction(x), Fraction(0))
        raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")

    def __add__(self, other):
        if isinstance(other, QSqrt2):
            return QSqrt2._raw(self.a + other.a, self.b + other.b)
        if isinstance(other, (int, Fraction)):
            return QSqrt2._raw(self.a + other, self.b)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, QSqrt2):
            return QSqrt2._raw(self.a - other.a, self.b - other.b)
        if isinstance(other, (int, Fraction)):
            return QSqrt2._raw(self.a - other, self.b)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return QSqrt2._raw(other - self.a, -self.b)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, QSqrt2):
            a, b, c, d = self.a, self.b, other.a, other.b
            if not b and not d:
                return QSqrt2._raw(a * c, b)
            return QSqrt2._raw(a * c + 2 * b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return QSqrt2._raw(self.a * other, self.b * other)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return QSqrt2._raw(-self.a, -self.b)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if qsqrt2_sign(self) < 0 else self

    def norm(self) -> Fraction:
        """Field norm ``a^2 - 2 b^2``; zero only for zero."""
        return self.a * self.a - 2 * self.b * self.b

    def inverse(self) -> "QSqrt2":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("QSqrt2 division by zero")
        return QSqrt2._raw(self.a / n, -self.b / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("QSqrt2 division by zero")
            return QSqrt2._raw(self.a / other, self.b / other)
        if isinstance(other, QSqrt2):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = QSqrt2._raw(Fraction(1), Fraction(0))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, QSqrt2):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def _cmp(self, other) -> int:
        try:
            other = QSqrt2.coerce(other)
        except TypeError:
            return NotImplemented
        return qsqrt2_sign(self - other)

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(2.0)

    def is_rational(self) -> bool:
        return self.b == 0

    def conjugate(self) -> "QSqrt2":
        # Real numbers: complex/octonion conjugation is the identity.
        return self

    def galois(self) -> "QSqrt2":
        """The field automorphism sqrt 2 -> -sqrt 2."""
        return QSqrt2._raw(self.a, -self.b)

    def __repr__(self):
        return f"QSqrt2({self.a}, {self.b})"

    def __str__(self):
        return format_scalar(self)


SQRT2 = QSqrt2(0, 1)
INV_SQRT2 = QSqrt2(0, Fraction(1, 2))


def qsqrt2_sign(x) -> int:
    """Exact sign of ``a + b sqrt 2``: compare a^2 against 2 b^2."""
    if not isinstance(x, QSqrt2):
        x = QSqrt2.coerce(x)
    a, b = x.a, x.b
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sa == sb or sb == 0:
        return sa
    if sa == 0:
        return sb
    # opposite signs: the larger magnitude wins
    d = a * a - 2 * b * b
    return sa if d > 0 else (sb if d < 0 else 0)


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def qsqrt2_sqrt(x) -> QSqrt2 | None:
    """Non-negative square root inside Q(sqrt 2), or None if it leaves the field."""
    x = QSqrt2.coerce(x)
    if qsqrt2_sign(x) < 0:
        return None
    p, q = x.a, x.b
    if q == 0:
        r = _rational_sqrt(p)
        if r is not None:
            return QSqrt2._raw(r, Fraction(0))
        r = _rational_sqrt(p / 2)
        return None if r is None else QSqrt2._raw(Fraction(0), r)
    # (u + v sqrt2)^2 = p + q sqrt2  ->  u^2 + 2v^2 = p, 2uv = q
    disc = _rational_sqrt(p * p - 2 * q * q)
    if disc is None:
        return None
    for u2 in ((p + disc) / 2, (p - disc) / 2):
        u = _rational_sqrt(u2)
        if not u:
            continue
        v = q / (2 * u)
        root = QSqrt2._raw(u, v)
        if qsqrt2_sign(root) < 0:
            root = -root
        if root * root == x:
            return root
    return None


# ---------------------------------------------------------------------------
# scalar modes


@dataclass(frozen=True)
class Exact:
    """Bit-exact arithmetic over Q(sqrt 2); admits no tolerance."""

    def __str__(self):
        return "exact"


@dataclass(frozen=True)
class Float:
    """Floating-point mode.

    ``eps`` bounds residuals, ``pivot`` is the rank-decision threshold
    (relative to the largest singular value).
    """

    eps: float = 1e-9
    pivot: float = 1e-7

    def __post_init__(self):
        if not (self.eps > 0 and self.pivot > 0):
            raise ValueError("Float mode tolerances must be positive")

    def __str__(self):
        return "float"


ScalarMode = Exact | Float
EXACT = Exact()


def exact_array(rows) -> np.ndarray:
    """Object array whose entries are all :class:`QSqrt2`."""
    arr = np.array(rows, dtype=object)
    flat = arr.reshape(-1)
    for i, v in enumerate(flat):
        flat[i] = QSqrt2.coerce(v)
    return arr


def is_exact(arr) -> bool:
    return isinstance(arr, np.ndarray) and arr.dtype == object


def to_float(arr) -> np.ndarray:
    if isinstance(arr, np.ndarray) and arr.dtype != object:
        return arr.astype(float)
    return np.vectorize(float, otypes=[float])(np.asarray(arr, dtype=object))


def is_zero_matrix(M, mode: ScalarMode = EXACT) -> bool:
    M = np.asarray(M)
    if isinstance(mode, Float) or not is_exact(M):
        return bool(np.all(np.abs(to_float(M)) <= getattr(mode, "eps", 1e-9)))
    return all(x == 0 for x in M.reshape(-1))


# ---------------------------------------------------------------------------
# Z[sqrt 2] kernels.  Elements are (int, int) pairs meaning a + b sqrt 2.

_Z0 = (0, 0)


def _zmul(x, y):
    a, b = x
    c, d = y
    return (a * c + 2 * b * d, a * d + b * c)


def _zdiv(x, y):
    """Exact quotient in Z[sqrt 2]; raises if the division is not exact."""
    a, b = x
    c, d = y
    if d == 0:
        qa, ra = divmod(a, c)
        qb, rb = divmod(b, c)
        if ra or rb:
            raise ArithmeticError("inexact division in Z[sqrt 2]")
        return (qa, qb)
    n = c * c - 2 * d * d
    qa, ra = divmod(a * c - 2 * b * d, n)
    qb, rb = divmod(b * c - a * d, n)
    if ra or rb:
        raise ArithmeticError("inexact division in Z[sqrt 2]")
    return (qa, qb)


def _q_parts(x) -> tuple[Fraction, Fraction]:
    if isinstance(x, QSqrt2):
        return x.a, x.b
    if isinstance(x, (int, Fraction)):
        return Fraction(x), Fraction(0)
    raise TypeError(f"non-exact entry {x!r} in exact matrix")


def _zrows(M) -> tuple[list[list[tuple[int, int]]], list[int]]:
    """Clear denominators row by row; returns integer rows and the positive scales."""
    rows, scales = [], []
    for row in M:
        parts = [_q_parts(x) for x in row]
        lcm = reduce(math.lcm, (p.denominator for ab in parts for p in ab), 1)
        rows.append(
            [(int(a * lcm), int(b * lcm)) for a, b in parts]
        )
        scales.append(lcm)
    return rows, scales


def _zsign(x) -> int:
    return qsqrt2_sign(QSqrt2._raw(Fraction(x[0]), Fraction(x[1])))


def _to_q(x) -> QSqrt2:
    return QSqrt2._raw(Fraction(x[0]), Fraction(x[1]))


def _bareiss_forward(rows, ncols, pivoting=True):
    """Fraction-free forward elimination in place.

    Returns ``(rank, pivots, swaps)`` where ``pivots`` lists the successive
    Bareiss pivots (each equal to a minor of the input).  Without pivoting,
    stops at the first zero leading pivot.
    """
    m = len(rows)
    r = 0
    prev = (1, 0)
    pivots = []
    swaps = 0
    for col in range(ncols):
        if r == m:
            break
        if pivoting:
            piv = next((i for i in range(r, m) if rows[i][col] != _Z0), None)
            if piv is None:
                continue
            if piv != r:
                rows[r], rows[piv] = rows[piv], rows[r]
                swaps += 1
        elif rows[r][col] == _Z0:
            pivots.append(_Z0)
            return r, pivots, swaps
        prow = rows[r]
        p = prow[col]
        tail = range(col + 1, ncols)
        for i in range(r + 1, m):
            row = rows[i]
            f = row[col]
            if f == _Z0:
                if p != prev:
                    for j in tail:
                        if row[j] != _Z0:
                            row[j] = _zdiv(_zmul(p, row[j]), prev)
                continue
            for j in tail:
                pa, pb = _zmul(p, row[j])
                fa, fb = _zmul(f, prow[j])
                row[j] = _zdiv((pa - fa, pb - fb), prev)
            row[col] = _Z0
        pivots.append(p)
        prev = p
        r += 1
    return r, pivots, swaps


def _gauss_jordan(rows, ncols, pivot_limit):
    """Fraction-free Gauss-Jordan; pivots only among the first ``pivot_limit`` columns.

    On return the first ``len(pivcols)`` rows carry the common value ``d``
    at their own pivot column and zero at every other pivot column.
    """
    m = len(rows)
    r = 0
    prev = (1, 0)
    pivcols = []
    for col in range(pivot_limit):
        if r == m:
            break
        piv = next((i for i in range(r, m) if rows[i][col] != _Z0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        p = prow[col]
        for i in range(m):
            if i == r:
                continue
            row = rows[i]
            f = row[col]
            if f == _Z0:
                if p != prev:
                    for j in range(ncols):
                        if row[j] != _Z0:
                            row[j] = _zdiv(_zmul(p, row[j]), prev)
                continue
            for j in range(ncols):
                pa, pb = _zmul(p, row[j])
                fa, fb = _zmul(f, prow[j])
                row[j] = _zdiv((pa - fa, pb - fb), prev)
        pivcols.append(col)
        prev = p
        r += 1
    return pivcols, prev


def _float_svd(M):
    M = to_float(np.atleast_2d(M))
    if M.size == 0:
        return M, np.zeros(0), np.eye(M.shape[1])
    u, s, vh = np.linalg.svd(M)
    return M, s, vh


def _float_rank(M, mode: Float) -> int:
    _, s, _ = _float_svd(M)
    if s.size == 0:
        return 0
    tol = mode.pivot * max(1.0, s[0])
    return int(np.sum(s > tol))


def rank(M, mode: ScalarMode = EXACT) -> int:
    """Rank over Q(sqrt 2) (exact) or numerical rank (float)."""
    M = np.asarray(M)
    if M.ndim != 2:
        M = np.atleast_2d(M)
    if M.shape[0] == 0 or M.shape[1] == 0:
        return 0
    if isinstance(mode, Float):
        return _float_rank(M, mode)
    rows, _ = _zrows(M)
    r, _, _ = _bareiss_forward(rows, M.shape[1])
    return r


def kernel_basis(M, mode: ScalarMode = EXACT) -> list[np.ndarray]:
    """Basis of the right null space; ``len`` equals ``cols - rank``.

    Exact vectors are in reduced form: each has a 1 at its own free column.
    """
    M = np.asarray(M)
    if M.ndim != 2:
        M = np.atleast_2d(M)
    ncols = M.shape[1]
    if isinstance(mode, Float):
        _, s, vh = _float_svd(M)
        r = _float_rank(M, mode) if M.shape[0] else 0
        return [vh[i].copy() for i in range(r, ncols)]
    if M.shape[0] == 0:
        out = []
        for f in range(ncols):
            v = exact_array([0] * ncols)
            v[f] = QSqrt2(1)
            out.append(v)
        return out
    rows, _ = _zrows(M)
    pivcols, d = _gauss_jordan(rows, ncols, ncols)
    dq = _to_q(d)
    free = [c for c in range(ncols) if c not in set(pivcols)]
    basis = []
    for f in free:
        v = np.empty(ncols, dtype=object)
        v[:] = [QSqrt2._raw(Fraction(0), Fraction(0))] * ncols
        v[f] = QSqrt2(1)
        for i, pc in enumerate(pivcols):
            e = rows[i][f]
            if e != _Z0:
                v[pc] = -_to_q(e) / dq
        basis.append(v)
    return basis


def det(M, mode: ScalarMode = EXACT):
    """Determinant of a square matrix (exact via Bareiss)."""
    M = np.asarray(M)
    n = M.shape[0]
    if M.ndim != 2 or M.shape[1] != n:
        raise ValueError("det needs a square matrix")
    if n == 0:
        return QSqrt2(1) if not isinstance(mode, Float) else 1.0
    if isinstance(mode, Float):
        return float(np.linalg.det(to_float(M)))
    rows, scales = _zrows(M)
    r, pivots, swaps = _bareiss_forward(rows, n)
    if r < n:
        return QSqrt2(0)
    value = _to_q(pivots[-1]) / math.prod(scales)
    return -value if swaps % 2 else value


def solve(A, B, mode: ScalarMode = EXACT) -> np.ndarray:
    """Solve ``A X = B`` for square non-singular ``A``."""
    A = np.asarray(A)
    B = np.asarray(B)
    vector = B.ndim == 1
    if vector:
        B = B.reshape(-1, 1)
    n = A.shape[0]
    if A.shape != (n, n) or B.shape[0] != n:
        raise ValueError("solve: shape mismatch")
    if isinstance(mode, Float):
        X = np.linalg.solve(to_float(A), to_float(B))
        return X[:, 0] if vector else X
    aug = np.concatenate([A, B], axis=1)
    rows, _ = _zrows(aug)
    ncols = aug.shape[1]
    pivcols, d = _gauss_jordan(rows, ncols, n)
    if len(pivcols) < n:
        raise OctoStiefelError("singular matrix in exact solve")
    dq = _to_q(d)
    X = np.empty(B.shape, dtype=object)
    for i, pc in enumerate(pivcols):
        for j in range(B.shape[1]):
            X[pc, j] = _to_q(rows[i][n + j]) / dq
    return X[:, 0] if vector else X


def is_positive_definite(M, mode: ScalarMode = EXACT) -> bool:
    """Exact: every leading principal minor > 0.  Float: Cholesky pivots > pivot."""
    M = np.asarray(M)
    n = M.shape[0]
    if M.shape != (n, n):
        raise NotSymmetric("positive-definiteness needs a square matrix")
    if n == 0:
        return True
    if isinstance(mode, Float) or not is_exact(M):
        mode = mode if isinstance(mode, Float) else Float()
        F = to_float(M)
        scale = max(1.0, float(np.max(np.abs(F))))
        if np.max(np.abs(F - F.T)) > mode.eps * scale:
            raise NotSymmetric("matrix is not symmetric within eps")
        F = (F + F.T) / 2
        try:
            L = np.linalg.cholesky(F)
        except np.linalg.LinAlgError:
            return False
        return bool(np.min(np.diag(L)) ** 2 > mode.pivot * scale)
    for i in range(n):
        for j in range(i + 1, n):
            if M[i, j] != M[j, i]:
                raise NotSymmetric("matrix is not symmetric")
    rows, _ = _zrows(M)
    r, pivots, _ = _bareiss_forward(rows, n, pivoting=False)
    if r < n:
        return False
    return all(_zsign(p) > 0 for p in pivots)


# ---------------------------------------------------------------------------
# text and JSON forms

_RAT = r"\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"^(?P<a>[+-]?{_RAT})?(?:(?P<bsign>[+-])?(?P<b>{_RAT})?(?P<root>√2))?$"
)


def format_scalar(x) -> str:
    """``p/q`` for rationals, ``p/q+r/s√2`` otherwise."""
    if isinstance(x, float):
        return repr(x)
    x = QSqrt2.coerce(x)
    if x.b == 0:
        return str(x.a)
    b = abs(x.b)
    bstr = "" if b == 1 else str(b)
    if x.a == 0:
        return f"{'-' if x.b < 0 else ''}{bstr}√2"
    return f"{x.a}{'-' if x.b < 0 else '+'}{bstr}√2"


def parse_scalar(s):
    """Inverse of :func:`format_scalar`; JSON numbers become floats (or exact ints)."""
    if isinstance(s, bool):
        raise ParseError(f"not a scalar: {s!r}")
    if isinstance(s, int):
        return QSqrt2(s)
    if isinstance(s, float):
        return s
    if not isinstance(s, str):
        raise ParseError(f"not a scalar: {s!r}")
    t = re.sub(r"\s+", "", s).replace("sqrt2", "√2").replace("*√2", "√2")
    m = _SCALAR_RE.match(t)
    if m and m.group("root") and m.group("bsign") is None and m.group("a") and m.group("b") is None:
        # "3√2" or "-1/2√2": the rational prefix is the coefficient of the root
        return QSqrt2(0, Fraction(m.group("a")))
    if not m or not (m.group("a") or m.group("root")):
        try:
            return float(t)
        except ValueError:
            raise ParseError(f"cannot parse scalar {s!r}") from None
    a = Fraction(m.group("a")) if m.group("a") else Fraction(0)
    b = Fraction(0)
    if m.group("root"):
        b = Fraction(m.group("b")) if m.group("b") else Fraction(1)
        if m.group("bsign") == "-":
            b = -b
    return QSqrt2(a, b)


def matrix_to_json(M) -> dict:
    M = np.atleast_2d(np.asarray(M))
    rows, cols = M.shape
    if is_exact(M):
        entries = [format_scalar(x) for x in M.reshape(-1)]
    else:
        entries = [float(x) for x in M.reshape(-1)]
    return {"rows": rows, "cols": cols, "entries": entries}


def matrix_from_json(obj) -> np.ndarray:
    try:
        rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
    except (KeyError, TypeError):
        raise ParseError("matrix JSON needs rows, cols, entries") from None
    if len(entries) != rows * cols:
        raise ParseError("entries length must equal rows*cols")
    vals = [parse_scalar(e) for e in entries]
    if any(isinstance(v, float) for v in vals):
        return np.array([float(v) for v in vals], dtype=float).reshape(rows, cols)
    arr = np.empty(rows * cols, dtype=object)
    arr[:] = vals
    return arr.reshape(rows, cols)
