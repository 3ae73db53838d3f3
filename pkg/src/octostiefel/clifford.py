"""Clifford systems: skew generators on R^l and the symmetric P-systems on R^{2l}."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .errors import BadFamily, ParseError, UnsupportedM
from .exactnum import QSqrt2, to_float
from .octonion import E as unit, left_mult_matrix

__all__ = [
    "Definite",
    "Indefinite",
    "NotApplicable",
    "Family",
    "CliffordSystem",
    "SymmetricSystem",
    "delta",
    "build_system",
    "verify_clifford",
    "symmetric_system",
    "fkm_polynomial",
    "product_trace",
    "parse_family",
    "matmul",
    "mat_equal",
]


@dataclass(frozen=True)
class Definite:
    def __str__(self):
        return "definite"


@dataclass(frozen=True)
class Indefinite:
    q: int

    def __str__(self):
        return f"indefinite({self.q})"


@dataclass(frozen=True)
class NotApplicable:
    def __str__(self):
        return "none"


Family = Definite | Indefinite | NotApplicable

_DELTA = (1, 2, 4, 4, 8, 8, 8, 8)


def delta(m: int) -> int:
    """Dimension of the irreducible module; delta(m + 8) = 16 delta(m)."""
    if m < 1:
        raise ValueError("delta needs m >= 1")
    scale = 1
    while m > 8:
        m -= 8
        scale *= 16
    return scale * _DELTA[m - 1]


def parse_family(text) -> Family:
    if isinstance(text, (Definite, Indefinite, NotApplicable)):
        return text
    if text is None:
        return NotApplicable()
    s = str(text).strip().lower()
    if s in ("definite", "def"):
        return Definite()
    if s in ("none", "notapplicable", "n/a", ""):
        return NotApplicable()
    m = re.fullmatch(r"indefinite[(:\s]*(\d+)\)?", s)
    if m:
        return Indefinite(int(m.group(1)))
    raise ParseError(f"unknown family {text!r}")


def matmul(A, B):
    """Matrix product that keeps exact entries exact."""
    return np.dot(A, B)


def mat_equal(A, B) -> bool:
    A = np.asarray(A)
    B = np.asarray(B)
    if A.shape != B.shape:
        return False
    if A.dtype != object and B.dtype != object:
        return bool(np.allclose(A, B, atol=1e-9))
    return not any(bool(x) for x in (A - B).reshape(-1))


def _int_matrix(M) -> np.ndarray:
    """Object array of Python ints from a matrix with integral entries."""
    out = np.empty(M.shape, dtype=object)
    for idx, v in np.ndenumerate(M):
        if isinstance(v, QSqrt2):
            assert v.b == 0 and v.a.denominator == 1
            v = v.a.numerator
        out[idx] = int(v)
    return out


def _base_generators(m: int) -> list[np.ndarray]:
    """Generators f_1..f_{m-1} on the irreducible module R^{delta(m)}."""
    if m == 1:
        return []
    if m == 2:
        return [_int_matrix(np.array([[0, -1], [1, 0]]))]
    if m <= 4:
        # left multiplication by i, j, k on the quaternions
        return [_int_matrix(left_mult_matrix(unit(t))[:4, :4]) for t in range(1, m)]
    return [_int_matrix(left_mult_matrix(unit(t))) for t in range(1, m)]


@dataclass(frozen=True, eq=False)
class CliffordSystem:
    """Skew generators E_1..E_{m-1} on R^l with l = n * delta(m)."""

    m: int
    n: int
    family: Family
    E: tuple
    E_float: tuple = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "E_float", tuple(to_float(M) for M in self.E))

    @property
    def l(self) -> int:
        return self.E[0].shape[0] if self.E else self.n * delta(self.m)

    def generators(self, exact: bool = True) -> tuple:
        return self.E if exact else self.E_float

    def apply(self, i: int, v: np.ndarray) -> np.ndarray:
        """E_i v for 1 <= i <= m-1, matching the dtype of v."""
        if v.dtype == object:
            return self.E[i - 1].dot(v)
        return self.E_float[i - 1] @ v

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "family": str(self.family),
            "E": [[[int(x) for x in row] for row in M] for M in self.E],
        }


@dataclass(frozen=True, eq=False)
class SymmetricSystem:
    m: int
    P: tuple


def build_system(m: int, n: int, family: Family | str | None = None) -> CliffordSystem:
    """Standard generators: complex, quaternion or octonion left multiplications."""
    if m >= 9:
        raise UnsupportedM(f"construction implemented for m <= 8, got {m}")
    if m < 1 or n < 1:
        raise ValueError("need m >= 1 and n >= 1")
    family = parse_family(family) if family is not None else (
        Definite() if m % 4 == 0 else NotApplicable()
    )
    if m % 4 == 0:
        if isinstance(family, NotApplicable):
            raise BadFamily(f"m = {m} needs a definite or indefinite family")
        if isinstance(family, Indefinite) and not 0 <= family.q <= n:
            raise BadFamily(f"indefinite q must lie in 0..{n}")
    elif not isinstance(family, NotApplicable):
        raise BadFamily(f"m = {m} has a single family")
    q = family.q if isinstance(family, Indefinite) else n
    d = delta(m)
    gens = []
    for f in _base_generators(m):
        M = np.zeros((n * d, n * d), dtype=object)
        M[:] = 0
        for blk in range(n):
            s = 1 if blk < q else -1
            M[blk * d:(blk + 1) * d, blk * d:(blk + 1) * d] = s * f
        gens.append(M)
    if m == 1:
        return CliffordSystem(m, n, family, ())
    return CliffordSystem(m, n, family, tuple(gens))


def verify_clifford(sys: CliffordSystem) -> bool:
    """Skewness and E_i E_j + E_j E_i = -2 delta_ij I, checked exactly."""
    gens = sys.E
    if not gens:
        return True
    l = gens[0].shape[0]
    ident = np.identity(l, dtype=int).astype(object)
    for M in gens:
        if M.shape != (l, l) or not mat_equal(M.T, -M):
            return False
    for i, A in enumerate(gens):
        for j in range(i, len(gens)):
            B = gens[j]
            anti = matmul(A, B) + matmul(B, A)
            target = -2 * ident if i == j else 0 * ident
            if not mat_equal(anti, target):
                return False
    return True


def symmetric_system(sys: CliffordSystem) -> SymmetricSystem:
    """P_0 = diag(I, -I), P_1 = antidiag(I, I), P_{i+1} = [[0, E_i], [-E_i, 0]]."""
    l = sys.l
    I = np.identity(l, dtype=int).astype(object)
    Z = np.zeros((l, l), dtype=int).astype(object)
    P = [np.block([[I, Z], [Z, -I]]), np.block([[Z, I], [I, Z]])]
    for M in sys.E:
        P.append(np.block([[Z, M], [-M, Z]]))
    return SymmetricSystem(sys.m, tuple(P))


def product_trace(sym: SymmetricSystem):
    """Trace(P_0 P_1 ... P_m); separates the definite and indefinite families."""
    prod = sym.P[0]
    for M in sym.P[1:]:
        prod = matmul(prod, M)
    return sum(prod[i, i] for i in range(prod.shape[0]))


def fkm_polynomial(sys: CliffordSystem, x, sym: SymmetricSystem | None = None):
    """|x|^4 - 2 sum_i <P_i x, x>^2."""
    sym = sym or symmetric_system(sys)
    x = np.asarray(x)
    if x.dtype != object:
        x = x.astype(float)
        mats = [to_float(P) for P in sym.P]
    else:
        mats = sym.P
    r2 = x.dot(x)
    total = r2 * r2
    for P in mats:
        v = P.dot(x).dot(x)
        total = total - 2 * v * v
    return total
