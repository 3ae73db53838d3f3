"""Triples (a, b, c) cut out by the 3m+3 quadratic conditions, and the pair space W_{l,m}."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..clifford import CliffordSystem, Definite, Indefinite, build_system, parse_family
from ..errors import (
    DimensionMismatch,
    IdentityFailed,
    NotAMember,
    NotInW,
    NotRepresentable,
    ParseError,
    SamplingFailed,
    Unclassified,
)
from ..exactnum import (
    EXACT,
    Exact,
    Float,
    QSqrt2,
    ScalarMode,
    det,
    exact_array,
    format_scalar,
    is_positive_definite,
    kernel_basis,
    parse_scalar,
    rank,
    qsqrt2_sqrt,
    to_float,
)
from ..frames import OctFrame
from ..octonion import Octonion, vec_to_real

__all__ = [
    "OmegaPoint",
    "ConstraintVector",
    "OmegaStatus",
    "DegeneracyCertificate",
    "DegeneracyResult",
    "constraints",
    "is_member",
    "gradients",
    "gradient_matrix",
    "phi_matrix",
    "regularity_gram",
    "gram_decomposition_rhs",
    "dimension_and_emptiness",
    "standard_witness",
    "sample",
    "w_member",
    "w_gram",
    "degeneracy",
    "vector",
]


def vector(values, exact: bool | None = None) -> np.ndarray:
    """1-d array, exact (object of QSqrt2) unless any entry is a float."""
    vals = list(values)
    if exact is None:
        exact = not any(isinstance(v, (float, np.floating)) for v in vals)
    if exact:
        return exact_array(vals) if vals else np.empty(0, dtype=object)
    return np.array([float(v) for v in vals])


def _dot(u, v):
    if u.dtype == object or v.dtype == object:
        if u.dtype != object:
            u = vector(u)
        if v.dtype != object:
            v = vector(v)
        total = QSqrt2(0)
        for x, y in zip(u, v):
            total = total + x * y
        return total
    return float(u @ v)


@dataclass(frozen=True, eq=False)
class OmegaPoint:
    """A candidate triple (a, b, c) of vectors in R^l."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray

    def __post_init__(self):
        vals = [np.asarray(v) for v in (self.a, self.b, self.c)]
        if len({v.shape for v in vals}) != 1 or vals[0].ndim != 1:
            raise DimensionMismatch("a, b, c must be vectors of one length")
        if any(v.dtype.kind == "f" for v in vals):
            vals = [to_float(v) for v in vals]
        elif not all(v.dtype == object and all(isinstance(x, QSqrt2) for x in v) for v in vals):
            vals = [vector(v) for v in vals]
        object.__setattr__(self, "a", vals[0])
        object.__setattr__(self, "b", vals[1])
        object.__setattr__(self, "c", vals[2])

    @property
    def l(self) -> int:
        return self.a.shape[0]

    def is_exact(self) -> bool:
        return self.a.dtype == object

    def to_float(self) -> "OmegaPoint":
        return OmegaPoint(to_float(self.a), to_float(self.b), to_float(self.c))

    def stacked(self) -> np.ndarray:
        return np.concatenate([self.a, self.b, self.c])

    @classmethod
    def from_stacked(cls, x) -> "OmegaPoint":
        x = np.asarray(x)
        l = x.shape[0] // 3
        return cls(x[:l], x[l:2 * l], x[2 * l:])

    @classmethod
    def from_frame(cls, A: OctFrame) -> "OmegaPoint":
        """Coordinatize the three rows of a 3 x n octonion matrix."""
        if A.k != 3:
            raise DimensionMismatch("need a 3-row frame")
        return cls(*(vec_to_real(r) for r in A.rows))

    def to_frame(self) -> OctFrame:
        if self.l % 8:
            raise DimensionMismatch("l must be a multiple of 8")
        n = self.l // 8
        return OctFrame(
            tuple(
                tuple(Octonion(v[8 * i:8 * i + 8]) for i in range(n))
                for v in (self.a, self.b, self.c)
            )
        )

    def to_json(self, sys: CliffordSystem | None = None) -> dict:
        def enc(v):
            return [format_scalar(x) if self.is_exact() else float(x) for x in v]

        out = {"l": self.l, "a": enc(self.a), "b": enc(self.b), "c": enc(self.c)}
        if sys is not None:
            out.update({"m": sys.m, "family": str(sys.family)})
        return out

    @classmethod
    def from_json(cls, obj) -> "OmegaPoint":
        try:
            vecs = [[parse_scalar(x) for x in obj[key]] for key in "abc"]
        except (KeyError, TypeError):
            raise ParseError("point JSON needs a, b, c arrays") from None
        if "l" in obj and any(len(v) != obj["l"] for v in vecs):
            raise ParseError("vector lengths disagree with l")
        return cls(*(vector(v) for v in vecs))


def system_from_json(obj) -> CliffordSystem:
    """Clifford system from the compact descriptor {l, m, family}."""
    from ..clifford import delta

    try:
        m = int(obj["m"])
        l = int(obj["l"])
    except (KeyError, TypeError, ValueError):
        raise ParseError("need integer l and m") from None
    d = delta(m)
    if l % d:
        raise ParseError(f"l = {l} is not a multiple of delta({m}) = {d}")
    family = obj.get("family")
    return build_system(m, l // d, parse_family(family) if family is not None else None)


@dataclass(frozen=True)
class ConstraintVector:
    omega: tuple
    f: tuple
    g: tuple
    h: tuple

    def values(self) -> tuple:
        return self.omega + self.f + self.g + self.h

    def __len__(self):
        return len(self.values())


def _check_dims(sys: CliffordSystem, p: OmegaPoint) -> None:
    if p.l != sys.l:
        raise DimensionMismatch(f"point has length {p.l}, system acts on R^{sys.l}")


def constraints(sys: CliffordSystem, p: OmegaPoint) -> ConstraintVector:
    """omega_1..3 = |a|^2-1, ...; f_i = <a, E_i b>, g_j = <b, E_j c>, h_k = <c, E_k a> (E_0 = I)."""
    _check_dims(sys, p)
    a, b, c = p.a, p.b, p.c
    omega = (_dot(a, a) - 1, _dot(b, b) - 1, _dot(c, c) - 1)
    f = [_dot(a, b)]
    g = [_dot(b, c)]
    h = [_dot(c, a)]
    for i in range(1, sys.m):
        f.append(_dot(a, sys.apply(i, b)))
        g.append(_dot(b, sys.apply(i, c)))
        h.append(_dot(c, sys.apply(i, a)))
    return ConstraintVector(omega, tuple(f), tuple(g), tuple(h))


def _vanishes(values, mode: ScalarMode, exact: bool) -> bool:
    if isinstance(mode, Exact) and exact:
        return not any(bool(v) for v in values)
    eps = mode.eps if isinstance(mode, Float) else Float().eps
    return all(abs(float(v)) <= eps for v in values)


def is_member(sys: CliffordSystem, p: OmegaPoint, mode: ScalarMode = EXACT) -> bool:
    return _vanishes(constraints(sys, p).values(), mode, p.is_exact())


def _require_member(sys, p, mode=EXACT):
    if not is_member(sys, p, mode if p.is_exact() else Float()):
        raise NotAMember("point violates the defining conditions")


def gradients(sys: CliffordSystem, p: OmegaPoint) -> list[np.ndarray]:
    """Euclidean gradients of the 3m+3 constraints, each a vector in R^{3l}."""
    _check_dims(sys, p)
    a, b, c = p.a, p.b, p.c
    z = a * 0
    out = [
        np.concatenate([2 * a, z, z]),
        np.concatenate([z, 2 * b, z]),
        np.concatenate([z, z, 2 * c]),
        np.concatenate([b, a, z]),
    ]
    for i in range(1, sys.m):
        out.append(np.concatenate([sys.apply(i, b), -sys.apply(i, a), z]))
    out.append(np.concatenate([z, c, b]))
    for j in range(1, sys.m):
        out.append(np.concatenate([z, sys.apply(j, c), -sys.apply(j, b)]))
    out.append(np.concatenate([c, z, a]))
    for k in range(1, sys.m):
        out.append(np.concatenate([-sys.apply(k, c), z, sys.apply(k, a)]))
    return out


def gradient_matrix(sys: CliffordSystem, p: OmegaPoint) -> np.ndarray:
    """(3m+3) x 3l matrix whose rows are the gradients."""
    return np.array(gradients(sys, p), dtype=object if p.is_exact() else float)


def phi_matrix(sys: CliffordSystem, u, v) -> np.ndarray:
    """(m-1) x (m-1) matrix with entries <E_i u, E_j v>."""
    u = np.asarray(u)
    v = np.asarray(v)
    Eu = [sys.apply(i, u) for i in range(1, sys.m)]
    Ev = [sys.apply(j, v) for j in range(1, sys.m)]
    exact = u.dtype == object or v.dtype == object
    M = np.empty((sys.m - 1, sys.m - 1), dtype=object if exact else float)
    for i, x in enumerate(Eu):
        for j, y in enumerate(Ev):
            M[i, j] = _dot(x, y)
    return M


def _gram(vectors, exact: bool) -> np.ndarray:
    n = len(vectors)
    G = np.empty((n, n), dtype=object if exact else float)
    for i in range(n):
        for j in range(i, n):
            G[i, j] = G[j, i] = _dot(vectors[i], vectors[j])
    return G


def gram_decomposition_rhs(sys: CliffordSystem, p: OmegaPoint) -> np.ndarray:
    """I + Gram(E_i c, E_i a, E_i b), the right-hand side of the decomposition."""
    exact = p.is_exact()
    vecs = [sys.apply(i, x) for x in (p.c, p.a, p.b) for i in range(1, sys.m)]
    G = _gram(vecs, exact)
    for i in range(G.shape[0]):
        G[i, i] = G[i, i] + 1
    return G


def _matrices_agree(A, B, mode: ScalarMode, exact: bool) -> bool:
    if A.shape != B.shape:
        return False
    if isinstance(mode, Exact) and exact:
        return not any(bool(x) for x in (A - B).reshape(-1))
    eps = mode.eps if isinstance(mode, Float) else Float().eps
    return bool(np.all(np.abs(to_float(A) - to_float(B)) <= eps * 10))


def regularity_gram(sys: CliffordSystem, p: OmegaPoint, mode: ScalarMode = EXACT):
    """Gram matrix of the gradients of f_i, g_j, h_k (i, j, k >= 1) and its definiteness.

    Also checks G = I + Gram(E c, E a, E b) and raises IdentityFailed if it
    does not hold.
    """
    exact = p.is_exact() and isinstance(mode, Exact)
    if not exact:
        mode = mode if isinstance(mode, Float) else Float()
        p = p.to_float()
    _require_member(sys, p, mode)
    grads = gradients(sys, p)
    m = sys.m
    idx = (
        list(range(4, 4 + m - 1))
        + list(range(4 + m, 4 + 2 * m - 1))
        + list(range(4 + 2 * m, 4 + 3 * m - 1))
    )
    G = _gram([grads[i] for i in idx], exact)
    if m == 1:
        return G, True
    if not _matrices_agree(G, gram_decomposition_rhs(sys, p), mode, exact):
        raise IdentityFailed("G != I + Gram(Ec, Ea, Eb) at a member")
    return G, is_positive_definite(G, mode)


@dataclass
class OmegaStatus:
    status: str  # "Empty" | "NonEmpty" | "SpecialO3"
    dim: int | None
    witness: OmegaPoint | None = None

    def to_json(self) -> dict:
        out = {"status": self.status, "dim": self.dim}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def _unit(l: int, idx: int) -> np.ndarray:
    v = [0] * l
    v[idx] = 1
    return vector(v)


def _support(v) -> set:
    return {i for i, x in enumerate(v) if x}


def standard_witness(sys: CliffordSystem) -> OmegaPoint:
    """Member built from standard basis vectors.

    The generators are signed permutations, so each E_i e_j is again a
    signed basis vector and orthogonality reduces to disjoint supports.
    """
    l = sys.l
    a = _unit(l, 0)
    used = {0} | set().union(*(_support(sys.apply(i, a)) for i in range(1, sys.m)))
    free = [i for i in range(l) if i not in used]
    if not free:
        raise Unclassified("no room for b")
    b = _unit(l, free[0])
    used |= {free[0]} | set().union(*(_support(sys.apply(i, b)) for i in range(1, sys.m)))
    free = [i for i in range(l) if i not in used]
    if not free:
        raise Unclassified("no room for c")
    c = _unit(l, free[0])
    return OmegaPoint(a, b, c)


def _special_witness(sys: CliffordSystem) -> OmegaPoint | None:
    """Explicit members in two cases with l - m - 1 < m."""
    from ..exactnum import INV_SQRT2
    from ..witnesses import V32_POINT

    if sys.m == 4 and sys.n == 2 and sys.family == Indefinite(1):
        s = INV_SQRT2
        a = vector([s, 0, 0, 0, s, 0, 0, 0])
        b = vector([0, s, 0, 0, 0, s, 0, 0])
        c = vector([0, 0, s, 0, 0, 0, s, 0])
        return OmegaPoint(a, b, c)
    if sys.m == 8 and sys.n == 2 and isinstance(sys.family, Definite):
        return OmegaPoint.from_frame(V32_POINT)
    return None


def dimension_and_emptiness(sys: CliffordSystem) -> OmegaStatus:
    """Emptiness and dimension 3(l - m - 1), with a validated witness when non-empty."""
    l, m = sys.l, sys.m
    d = l - m - 1
    if d <= 0:
        return OmegaStatus("Empty", None)
    if d == 1:
        if (l, m) == (3, 1):
            return OmegaStatus("SpecialO3", 3, standard_witness(sys))
        return OmegaStatus("Empty", None)
    if d >= m:
        w = standard_witness(sys)
    else:
        w = _special_witness(sys)
        if w is None:
            raise Unclassified(f"(l, m) = ({l}, {m}) with family {sys.family} is not settled")
    if not is_member(sys, w):
        raise IdentityFailed("constructed witness is not a member")
    return OmegaStatus("NonEmpty", 3 * d, w)


def _orth_complement_sample(rng, span: list[np.ndarray], l: int):
    v = rng.standard_normal(l)
    if span:
        Q, _ = np.linalg.qr(np.array(span).T)
        v = v - Q @ (Q.T @ v)
    return v


def sample(sys: CliffordSystem, seed: int, max_tries: int = 100) -> OmegaPoint:
    """Random float member: a uniform, b off span{a, E a}, c off the 2m-span."""
    l, m = sys.l, sys.m
    if l - m - 1 < m:
        raise SamplingFailed("sampler needs l - m - 1 >= m")
    rng = np.random.default_rng(seed)
    E = sys.E_float
    for _ in range(max_tries):
        a = rng.standard_normal(l)
        a /= np.linalg.norm(a)
        span = [a] + [M @ a for M in E]
        b = _orth_complement_sample(rng, span, l)
        nb = np.linalg.norm(b)
        if nb < 1e-6:
            continue
        b /= nb
        span += [b] + [M @ b for M in E]
        c = _orth_complement_sample(rng, span, l)
        nc = np.linalg.norm(c)
        if nc < 1e-6:
            continue
        c /= nc
        return OmegaPoint(a, b, c)
    raise SamplingFailed("exhausted retries")


def w_member(sys: CliffordSystem, pair, normalization: str = "unit", mode: ScalarMode = EXACT) -> bool:
    """(a, b) in W_{l,m} (unit norms) or in M_+ (norms^2 = 1/2)."""
    a, b = (np.asarray(x) for x in pair)
    if a.shape != (sys.l,) or b.shape != (sys.l,):
        raise DimensionMismatch("pair vectors must lie in R^l")
    exact = a.dtype == object and b.dtype == object
    target = 1 if normalization.lower() == "unit" else Fraction(1, 2)
    if normalization.lower() not in ("unit", "half"):
        raise ValueError("normalization is 'unit' or 'half'")
    vals = [_dot(a, a) - target, _dot(b, b) - target, _dot(a, b)]
    vals += [_dot(a, sys.apply(i, b)) for i in range(1, sys.m)]
    return _vanishes(vals, mode, exact)


def w_gram(sys: CliffordSystem, a, b) -> np.ndarray:
    """2m x 2m Gram matrix of a, E_i a, b, E_i b."""
    a = np.asarray(a)
    b = np.asarray(b)
    vecs = [a] + [sys.apply(i, a) for i in range(1, sys.m)]
    vecs += [b] + [sys.apply(i, b) for i in range(1, sys.m)]
    return _gram(vecs, a.dtype == object)


@dataclass(frozen=True, eq=False)
class DegeneracyCertificate:
    lam: np.ndarray
    mu: np.ndarray
    c: np.ndarray

    def reconstruct(self, sys: CliffordSystem):
        def combo(coeffs):
            total = None
            for i, x in enumerate(coeffs, start=1):
                term = sys.apply(i, self.c) * x
                total = term if total is None else total + term
            return total

        return combo(self.lam), combo(self.mu)


@dataclass
class DegeneracyResult:
    det: object
    certificate: DegeneracyCertificate | None


def _normalize(v, exact: bool):
    n2 = _dot(v, v)
    if not exact:
        return v / np.sqrt(n2)
    r = qsqrt2_sqrt(n2)
    if r is None:
        raise NotRepresentable("normalization leaves Q(sqrt 2)")
    return np.array([x / r for x in v], dtype=object)


def degeneracy(sys: CliffordSystem, pair, mode: ScalarMode = EXACT) -> DegeneracyResult:
    """det g(a, b); when it vanishes, (lambda, mu, c) with a = (sum lambda_i E_i) c, b = (sum mu_i E_i) c."""
    a, b = (np.asarray(x) for x in pair)
    exact = a.dtype == object and b.dtype == object and isinstance(mode, Exact)
    if not exact:
        mode = mode if isinstance(mode, Float) else Float()
        a, b = to_float(a), to_float(b)
    if not w_member(sys, (a, b), "unit", mode):
        raise NotInW("pair is not in W_{l,m}")
    g = w_gram(sys, a, b)
    value = det(g, mode)
    # float decisions go through the rank so they match the kernel computation
    zero = (not value) if exact else rank(g, mode) < g.shape[0]
    if not zero or sys.m == 1:
        return DegeneracyResult(value, None)
    # a linear relation sum xi_i E_i a + sum eta_j E_j b = 0
    cols = [sys.apply(i, a) for i in range(1, sys.m)] + [sys.apply(j, b) for j in range(1, sys.m)]
    M = np.array(cols, dtype=object if exact else float).T
    basis = kernel_basis(M, EXACT if exact else mode)
    if not basis:
        raise IdentityFailed("zero Gram determinant without a linear relation")
    v = basis[0]
    xi, eta = v[: sys.m - 1], v[sys.m - 1:]
    xi = _normalize(xi, exact)
    eta = _normalize(eta, exact)
    c = None
    for i, x in enumerate(xi, start=1):
        term = sys.apply(i, a) * x
        c = term if c is None else c + term
    cert = DegeneracyCertificate(-xi, eta, c)
    ra, rb = cert.reconstruct(sys)
    ok = (
        _vanishes(list(ra - a) + list(rb - b), mode, exact)
        and _vanishes([_dot(c, c) - 1], mode, exact)
    )
    if not ok:
        raise IdentityFailed("degeneracy certificate does not reconstruct the pair")
    return DegeneracyResult(value, cert)
