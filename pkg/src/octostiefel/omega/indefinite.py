"""Pointwise identities on Omega_{8,4} for the indefinite system with q = 1."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..clifford import CliffordSystem, Indefinite, build_system
from ..errors import IdentityFailed, NotAMember
from ..exactnum import EXACT, Exact, Float, ScalarMode, det
from ..octonion import Octonion, oct_conj, oct_mul, oct_norm2
from .core import OmegaPoint, is_member, phi_matrix

__all__ = ["indefinite_system", "Omega84Data", "omega84_analysis", "omega84_sample", "quaternion"]


def indefinite_system() -> CliffordSystem:
    return build_system(4, 2, Indefinite(1))


def quaternion(v) -> Octonion:
    """Embed a length-4 coefficient block as an octonion in span{1, e1, e2, e3}."""
    vals = list(v)
    zero = vals[0] * 0
    return Octonion(vals + [zero] * 4)


@dataclass
class Omega84Data:
    a1: Octonion
    a2: Octonion
    xi: Octonion
    x: object
    y: object
    z: object
    det_gram: object


def omega84_analysis(p: OmegaPoint, mode: ScalarMode = EXACT, sys: CliffordSystem | None = None) -> Omega84Data:
    """xi = 2 a_1 conj(b_1) with the identities it must satisfy at a member.

    Checks that all six quaternion blocks have norm^2 1/2, that xi is a unit
    imaginary quaternion with a = xi b blockwise, that x^2 + y^2 + z^2 = 1
    for the entries of Phi_ab, and that det(I + Phi_ab^2) = 0.
    """
    sys = sys or indefinite_system()
    exact = p.is_exact() and isinstance(mode, Exact)
    if not exact:
        mode = mode if isinstance(mode, Float) else Float()
        p = p.to_float()
    if not is_member(sys, p, mode):
        raise NotAMember("point is not in Omega_{8,4}")
    eps = 0 if exact else mode.eps * 10

    def holds(value, target) -> bool:
        return value == target if exact else abs(float(value) - float(target)) <= eps

    blocks = {
        name: (quaternion(v[:4]), quaternion(v[4:]))
        for name, v in (("a", p.a), ("b", p.b), ("c", p.c))
    }
    half = Fraction(1, 2) if exact else 0.5
    for name, (u1, u2) in blocks.items():
        for idx, u in enumerate((u1, u2), start=1):
            if not holds(oct_norm2(u), half):
                raise IdentityFailed(f"|{name}_{idx}|^2 != 1/2")
    a1, a2 = blocks["a"]
    b1, b2 = blocks["b"]
    xi = oct_mul(a1, oct_conj(b1)) * 2
    if not holds(xi.re(), 0):
        raise IdentityFailed("Re xi != 0")
    if not holds(oct_norm2(xi), 1):
        raise IdentityFailed("|xi| != 1")
    for ai, bi in ((a1, b1), (a2, b2)):
        diff = ai - oct_mul(xi, bi)
        if not all(holds(v, 0) for v in diff.c):
            raise IdentityFailed("a != xi b")
    phi = phi_matrix(sys, p.a, p.b)
    x, y, z = phi[0, 1], phi[0, 2], phi[1, 2]
    s = x * x + y * y + z * z
    if not holds(s, 1):
        raise IdentityFailed("x^2 + y^2 + z^2 != 1")
    ident = np.identity(3, dtype=int).astype(object if exact else float)
    g = det(ident + phi.dot(phi), EXACT if exact else mode)
    if not holds(g, (1 - s) * (1 - s)) or not holds(g, 0):
        raise IdentityFailed("det(I + Phi^2) != (1 - (x^2+y^2+z^2))^2 = 0")
    return Omega84Data(a1, a2, xi, x, y, z, g)


def omega84_sample(seed: int, sys: CliffordSystem | None = None) -> OmegaPoint:
    """Float member: a_i on S^3(1/sqrt2), xi a unit imaginary quaternion, b = -xi a, c in the complement."""
    sys = sys or indefinite_system()
    rng = np.random.default_rng(seed)
    a = np.concatenate([_sphere(rng, 4, 0.5 ** 0.5), _sphere(rng, 4, 0.5 ** 0.5)])
    im = _sphere(rng, 3, 1.0)
    xi = Octonion([0.0, *im, 0.0, 0.0, 0.0, 0.0])
    b = np.concatenate(
        [np.array(oct_mul(-xi, quaternion(a[4 * i:4 * i + 4])).c[:4]) for i in range(2)]
    )
    span = [a, b] + [M @ a for M in sys.E_float] + [M @ b for M in sys.E_float]
    _, s, vh = np.linalg.svd(np.array(span))
    r = int(np.sum(s > 1e-9))
    c = vh[r]
    return OmegaPoint(a, b, c / np.linalg.norm(c))


def _sphere(rng, dim: int, radius: float) -> np.ndarray:
    v = rng.standard_normal(dim)
    return radius * v / np.linalg.norm(v)
