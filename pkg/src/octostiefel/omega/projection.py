"""The projection (a, b, c) -> c from Omega_{8n,8} = V_3(O^n) onto the unit sphere."""

from __future__ import annotations

import numpy as np

from ..clifford import CliffordSystem, Definite, build_system
from ..errors import BadDimension, NotAMember, NotRepresentable
from ..exactnum import (
    EXACT,
    Exact,
    Float,
    QSqrt2,
    ScalarMode,
    kernel_basis,
    qsqrt2_sqrt,
    rank,
    to_float,
)
from ..frames import fiber_system, frame
from ..octonion import Octonion
from .core import OmegaPoint, _dot, gradient_matrix, is_member, vector

__all__ = [
    "octonion_system",
    "pi_project",
    "pi_lift",
    "inner_lift",
    "pi_tangent_image",
    "pi_differential_rank",
    "pi_image_contains",
]


def octonion_system(n: int) -> CliffordSystem:
    """Left multiplication by e_1..e_7 on O^n (the definite m = 8 system)."""
    return build_system(8, n, Definite())


def _system_for(p: OmegaPoint) -> CliffordSystem:
    if p.l % 8:
        raise BadDimension("l must be a multiple of 8")
    return octonion_system(p.l // 8)


def pi_project(p: OmegaPoint, mode: ScalarMode = EXACT) -> np.ndarray:
    sys = _system_for(p)
    if not is_member(sys, p, mode if p.is_exact() else Float()):
        raise NotAMember("point is not in Omega_{8n,8}")
    return p.c


def _sqrt(x, exact: bool):
    if not exact:
        return float(np.sqrt(max(float(x), 0.0)))
    r = qsqrt2_sqrt(x)
    if r is None:
        raise NotRepresentable(f"sqrt({x}) is not in Q(sqrt 2)")
    return r


def inner_lift(cp: np.ndarray, exact: bool, mode: ScalarMode = EXACT) -> np.ndarray:
    """Unit a' with <a', c'>_O = 0, from the kernel of the 8 x 8(n-1) real system."""
    m = len(cp) // 8
    octs = [Octonion(cp[8 * i:8 * i + 8]) for i in range(m)]
    M = fiber_system(frame([octs]))
    if not exact:
        basis = kernel_basis(to_float(M), mode if isinstance(mode, Float) else Float())
        return basis[0] / np.linalg.norm(basis[0])
    for v in kernel_basis(M):
        r = qsqrt2_sqrt(_dot(v, v))
        if r is not None:
            return np.array([x / r for x in v], dtype=object)
    raise NotRepresentable("no kernel vector with a norm in Q(sqrt 2)")


def pi_lift(c, n: int | None = None, mode: ScalarMode = EXACT) -> OmegaPoint:
    """A member (a, b, c) over the given unit c in O^n, n >= 3.

    Splits on cos^2 theta = |c_1|^2 + ... + |c_{n-1}|^2.
    """
    c = np.asarray(c)
    exact = c.dtype == object and isinstance(mode, Exact)
    if not exact:
        c = to_float(c)
        mode = mode if isinstance(mode, Float) else Float()
    n = n or len(c) // 8
    if len(c) != 8 * n:
        raise BadDimension("c must have length 8n")
    if n < 3:
        raise BadDimension("lift needs n >= 3")
    l = 8 * n
    zero = QSqrt2(0) if exact else 0.0
    one = QSqrt2(1) if exact else 1.0
    cp, cn = c[: l - 8], c[l - 8:]
    cos2 = _dot(cp, cp)
    sin2 = _dot(cn, cn)
    tol = 0 if exact else mode.eps

    def small(x) -> bool:
        return (not x) if exact else abs(float(x)) <= tol

    if small(cos2):
        a = np.array([one] + [zero] * (l - 1), dtype=object if exact else float)
        b = np.array([zero] * 8 + [one] + [zero] * (l - 9), dtype=object if exact else float)
        p = OmegaPoint(a, b, c)
    elif small(sin2):
        ap = inner_lift(cp, exact, mode)
        a = np.concatenate([ap, np.array([zero] * 8, dtype=ap.dtype)])
        b = np.array([zero] * (l - 8) + [one] + [zero] * 7, dtype=object if exact else float)
        p = OmegaPoint(a, b, c)
    else:
        cos_t = _sqrt(cos2, exact)
        sin_t = _sqrt(sin2, exact)
        lam = -sin_t / cos_t
        mu = cos_t / sin_t
        ap = inner_lift(np.array([x / cos_t for x in cp], dtype=cp.dtype), exact, mode)
        a = np.concatenate([ap, np.array([zero] * 8, dtype=ap.dtype)])
        b = np.concatenate([cp * lam, cn * mu])
        p = OmegaPoint(a, b, c)
    sys = octonion_system(n)
    if not is_member(sys, p, mode if not exact else EXACT):
        raise NotAMember("lift failed the membership check")
    return p


def pi_tangent_image(p: OmegaPoint, mode: ScalarMode = EXACT) -> np.ndarray:
    """Rows spanning d pi(T_p): the c-blocks of a basis of ker(dF)."""
    sys = _system_for(p)
    exact = p.is_exact() and isinstance(mode, Exact)
    if not exact:
        mode = mode if isinstance(mode, Float) else Float()
        p = p.to_float()
    if not is_member(sys, p, mode if not exact else EXACT):
        raise NotAMember("point is not in Omega_{8n,8}")
    J = gradient_matrix(sys, p)
    basis = kernel_basis(J, EXACT if exact else mode)
    l = p.l
    return np.array([v[2 * l:] for v in basis], dtype=object if exact else float)


def pi_differential_rank(p: OmegaPoint, mode: ScalarMode = EXACT) -> int:
    """Rank of X -> X_c on the tangent space; equals 8n - 1 iff pi is submersive at p."""
    img = pi_tangent_image(p, mode)
    exact = img.dtype == object
    return rank(img, EXACT if exact else (mode if isinstance(mode, Float) else Float()))


def pi_image_contains(p: OmegaPoint, y, mode: ScalarMode = EXACT) -> bool:
    """Whether the tangent vector y lies in the image of d pi at p."""
    img = pi_tangent_image(p, mode)
    exact = img.dtype == object
    m = EXACT if exact else (mode if isinstance(mode, Float) else Float())
    y = vector(list(y)) if exact else to_float(np.asarray(y))
    return rank(np.vstack([img, y[None, :]]), m) == rank(img, m)
