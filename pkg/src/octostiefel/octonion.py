"""Octonions by Cayley-Dickson doubling, plus vectors over them.

Coefficients are stored in the basis ``1, e1, ..., e7`` where the
quaternion part is ``1, e1, e2, e3 = 1, i, j, k`` and the second
quaternion copy is ``e4, e5, e6, e7 = (0,1), (0,i), (0,j), (0,k)``.  With
this choice the flat Cayley-Dickson coordinates coincide with the basis
order, so the structure table is read straight off the recursion.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import LengthMismatch, ParseError
from .exactnum import QSqrt2, format_scalar, parse_scalar

__all__ = [
    "Octonion",
    "cd_mul",
    "MUL_TABLE",
    "oct_mul",
    "oct_conj",
    "oct_norm2",
    "oct_re",
    "oct_inner",
    "real_inner",
    "left_mult_matrix",
    "right_mult_matrix",
    "vec_to_real",
    "real_to_vec",
    "E",
]

_Q0 = QSqrt2(0)
_Q1 = QSqrt2(1)


def _cd_conj(x: tuple) -> tuple:
    return (x[0],) + tuple(-v for v in x[1:])


def cd_mul(x: Sequence, y: Sequence) -> tuple:
    """Reference product by the doubling rule (a,b)(c,d) = (ac - d*b, da + bc*)."""
    n = len(x)
    if n == 1:
        return (x[0] * y[0],)
    h = n // 2
    a, b = tuple(x[:h]), tuple(x[h:])
    c, d = tuple(y[:h]), tuple(y[h:])
    left = tuple(p - q for p, q in zip(cd_mul(a, c), cd_mul(_cd_conj(d), b)))
    right = tuple(p + q for p, q in zip(cd_mul(d, a), cd_mul(b, _cd_conj(c))))
    return left + right


def _build_table() -> tuple[tuple[tuple[int, int], ...], ...]:
    table = []
    for i in range(8):
        row = []
        for j in range(8):
            x = tuple(int(t == i) for t in range(8))
            y = tuple(int(t == j) for t in range(8))
            prod = cd_mul(x, y)
            (k,) = [t for t in range(8) if prod[t]]
            row.append((prod[k], k))
        table.append(tuple(row))
    return tuple(table)


# MUL_TABLE[i][j] = (sign, k) with e_i e_j = sign * e_k
MUL_TABLE = _build_table()


def _scalar(x):
    if isinstance(x, (QSqrt2, float)):
        return x
    if isinstance(x, (int, Fraction)):
        return QSqrt2(x)
    if isinstance(x, np.integer):
        return QSqrt2(int(x))
    if isinstance(x, np.floating):
        return float(x)
    raise TypeError(f"unsupported octonion coefficient {x!r}")


class Octonion:
    """An element of the octonions with exact (QSqrt2) or float coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = (0,) * 8):
        c = tuple(_scalar(v) for v in coeffs)
        if len(c) != 8:
            raise LengthMismatch("an octonion needs 8 coefficients")
        if any(isinstance(v, float) for v in c):
            c = tuple(float(v) for v in c)
        self.c = c

    @classmethod
    def _raw(cls, c: tuple) -> "Octonion":
        obj = object.__new__(cls)
        obj.c = c
        return obj

    @classmethod
    def unit(cls, i: int, scale=1) -> "Octonion":
        """``scale * e_i`` (``e_0 = 1``)."""
        s = _scalar(scale)
        z = 0.0 if isinstance(s, float) else _Q0
        return cls._raw(tuple(s if t == i else z for t in range(8)))

    @classmethod
    def real(cls, x) -> "Octonion":
        return cls.unit(0, x)

    @classmethod
    def zero(cls) -> "Octonion":
        return cls._raw((_Q0,) * 8)

    def is_exact(self) -> bool:
        return not isinstance(self.c[0], float)

    def to_float(self) -> "Octonion":
        return Octonion._raw(tuple(float(v) for v in self.c))

    def __getitem__(self, i):
        return self.c[i]

    def __iter__(self):
        return iter(self.c)

    def _like(self, other) -> "Octonion":
        """Coerce a scalar or octonion operand to this octonion's number type."""
        if not isinstance(other, Octonion):
            other = Octonion.real(other)
        if self.is_exact() != other.is_exact():
            return other.to_float() if other.is_exact() else other
        return other

    def _pair(self, other):
        other = self._like(other)
        if self.is_exact() and not other.is_exact():
            return self.to_float(), other
        return self, other

    def __add__(self, other):
        self, other = self._pair(other)
        return Octonion._raw(tuple(p + q for p, q in zip(self.c, other.c)))

    __radd__ = __add__

    def __sub__(self, other):
        self, other = self._pair(other)
        return Octonion._raw(tuple(p - q for p, q in zip(self.c, other.c)))

    def __rsub__(self, other):
        return self._like(other) - self

    def __neg__(self):
        return Octonion._raw(tuple(-v for v in self.c))

    def __mul__(self, other):
        if isinstance(other, Octonion):
            return oct_mul(self, other)
        if isinstance(other, (QSqrt2, int, Fraction, float)):
            return Octonion._raw(tuple(v * other for v in self.c))
        return NotImplemented

    def __rmul__(self, other):
        # scalars are central
        if isinstance(other, (QSqrt2, int, Fraction, float)):
            return Octonion._raw(tuple(other * v for v in self.c))
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (QSqrt2, int, Fraction, float)):
            return Octonion._raw(tuple(v / other for v in self.c))
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QSqrt2, float)):
            other = Octonion.real(other)
        if not isinstance(other, Octonion):
            return NotImplemented
        return all(p == q for p, q in zip(self.c, other.c))

    def __hash__(self):
        return hash(self.c)

    def __bool__(self):
        return any(bool(v) for v in self.c)

    def conj(self) -> "Octonion":
        return oct_conj(self)

    def norm2(self):
        return oct_norm2(self)

    def re(self):
        return self.c[0]

    def imag(self) -> "Octonion":
        z = 0.0 if isinstance(self.c[0], float) else _Q0
        return Octonion._raw((z,) + self.c[1:])

    def is_real(self) -> bool:
        return not any(self.c[1:])

    def to_json(self) -> list:
        return [format_scalar(v) for v in self.c]

    @classmethod
    def from_json(cls, obj) -> "Octonion":
        if not isinstance(obj, list) or len(obj) != 8:
            raise ParseError("an octonion is an array of 8 scalars")
        return cls(parse_scalar(v) for v in obj)

    def __repr__(self):
        terms = []
        for i, v in enumerate(self.c):
            if v:
                name = "" if i == 0 else f"e{i}"
                terms.append(f"({v}){name}" if name else f"({v})")
        return "Octonion(" + (" + ".join(terms) or "0") + ")"


def E(i: int, scale=1) -> Octonion:
    """Shorthand for ``scale * e_i``."""
    return Octonion.unit(i, scale)


def oct_mul(x: Octonion, y: Octonion) -> Octonion:
    exact = not (isinstance(x.c[0], float) or isinstance(y.c[0], float))
    out = [_Q0] * 8 if exact else [0.0] * 8
    yc = y.c
    for i, xi in enumerate(x.c):
        if not xi:
            continue
        row = MUL_TABLE[i]
        for j, yj in enumerate(yc):
            if not yj:
                continue
            s, k = row[j]
            if s > 0:
                out[k] = out[k] + xi * yj
            else:
                out[k] = out[k] - xi * yj
    if not exact:
        out = [float(v) for v in out]
    return Octonion._raw(tuple(out))


def oct_conj(x: Octonion) -> Octonion:
    return Octonion._raw((x.c[0],) + tuple(-v for v in x.c[1:]))


def oct_norm2(x: Octonion):
    """Squared norm, the real part of ``x * conj(x)``."""
    total = x.c[0] * x.c[0]
    for v in x.c[1:]:
        total = total + v * v
    return total


def oct_re(x: Octonion):
    return x.c[0]


def oct_inner(u: Sequence[Octonion], v: Sequence[Octonion]) -> Octonion:
    """Octonion-valued inner product ``sum_j u_j * conj(v_j)``."""
    if len(u) != len(v):
        raise LengthMismatch("oct_inner: vectors of different length")
    total = None
    for p, q in zip(u, v):
        term = oct_mul(p, oct_conj(q))
        total = term if total is None else total + term
    return total if total is not None else Octonion.zero()


def real_inner(u: Sequence[Octonion], v: Sequence[Octonion]):
    """Coefficientwise real inner product of two octonion vectors."""
    if len(u) != len(v):
        raise LengthMismatch("real_inner: vectors of different length")
    total = 0
    for p, q in zip(u, v):
        for s, t in zip(p.c, q.c):
            total = total + s * t
    return total


def left_mult_matrix(x: Octonion) -> np.ndarray:
    """Real 8x8 matrix of ``z -> x z`` acting on coefficient columns."""
    return _mult_matrix(x, left=True)


def right_mult_matrix(x: Octonion) -> np.ndarray:
    """Real 8x8 matrix of ``z -> z x`` acting on coefficient columns."""
    return _mult_matrix(x, left=False)


def _mult_matrix(x: Octonion, left: bool) -> np.ndarray:
    exact = x.is_exact()
    M = np.empty((8, 8), dtype=object if exact else float)
    if exact:
        M[:] = _Q0
    else:
        M[:] = 0.0
    for i, xi in enumerate(x.c):
        if not xi:
            continue
        for j in range(8):
            s, k = MUL_TABLE[i][j] if left else MUL_TABLE[j][i]
            M[k, j] = M[k, j] + xi if s > 0 else M[k, j] - xi
    return M


def vec_to_real(u: Sequence[Octonion]) -> np.ndarray:
    """Concatenate coefficient blocks: O^n -> R^{8n}."""
    exact = all(o.is_exact() for o in u)
    vals = [v for o in u for v in o.c]
    if exact:
        arr = np.empty(len(vals), dtype=object)
        arr[:] = vals
        return arr
    return np.array([float(v) for v in vals])


def real_to_vec(r) -> list[Octonion]:
    r = list(r)
    if len(r) % 8:
        raise LengthMismatch("real vector length must be a multiple of 8")
    return [Octonion(r[8 * i: 8 * i + 8]) for i in range(len(r) // 8)]
