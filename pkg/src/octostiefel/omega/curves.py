"""Curves that push degenerate pairs into the non-degenerate locus.

The curves involve cos t and sin t, so they are evaluated in floating
point.  Base points may be exact; they are converted on entry.
"""

from __future__ import annotations

import math

import numpy as np

from ..clifford import CliffordSystem, delta
from ..errors import BadBasePoint, IdentityFailed
from ..exactnum import Float, to_float
from .core import OmegaPoint, is_member, w_member

__all__ = ["KINDS", "deformation_curve", "path_base", "first_block_norm"]

KINDS = ("lemmau-interior", "lemmau-boundary", "path-step")

_TOL = 1e-9


def _blocks(v: np.ndarray, d: int) -> np.ndarray:
    return v.reshape(-1, d)


def first_block_norm(sys: CliffordSystem, v) -> float:
    d = delta(sys.m)
    return float(np.linalg.norm(_blocks(to_float(np.asarray(v)), d)[0]))


def _interior(a, b, x, t, d):
    A = _blocks(a, d).copy()
    B = _blocks(b, d).copy()
    A[1:] *= math.cos(t)
    B[0] *= math.cos(t)
    na = math.sqrt(math.cos(t) ** 2 + math.sin(t) ** 2 * x * x)
    nb = math.sqrt(math.cos(t) ** 2 + math.sin(t) ** 2 * (1 - x * x))
    return A.reshape(-1) / na, B.reshape(-1) / nb


def _boundary(a, b, t, d):
    A = np.zeros_like(_blocks(a, d))
    B = np.zeros_like(_blocks(b, d))
    a1 = _blocks(a, d)[0]
    b1 = _blocks(b, d)[0]
    c, s = math.cos(t), math.sin(t)
    A[0] = c * a1
    A[1] = c * s * a1
    B[0] = c * c * b1
    B[1] = s * b1
    return (
        A.reshape(-1) / math.sqrt(c * c + c * c * s * s),
        B.reshape(-1) / math.sqrt(c ** 4 + s * s),
    )


def _normalize_kind(kind: str) -> str:
    k = kind.lower().replace("_", "-").replace(" ", "-")
    if k not in KINDS:
        raise ValueError(f"unknown curve kind {kind!r}; expected one of {KINDS}")
    return k


def _check_pair(sys, a, b, mode):
    if not w_member(sys, (a, b), "unit", mode):
        raise BadBasePoint("base pair is not in W_{l,m}")
    d = delta(sys.m)
    na = np.linalg.norm(_blocks(a, d), axis=1)
    nb = np.linalg.norm(_blocks(b, d), axis=1)
    if np.max(np.abs(na - nb)) > 1e-7:
        raise BadBasePoint("blockwise norms of a and b differ; the pair is not degenerate")
    return float(na[0])


def deformation_curve(sys: CliffordSystem, kind: str, base, t: float, mode: Float | None = None):
    """Evaluate a curve at parameter t.

    ``lemmau-interior`` and ``lemmau-boundary`` take a pair (a, b) in
    W_{l,m} and return a pair; ``path-step`` takes an OmegaPoint whose c
    vanishes on the first block and is orthogonal to the span of the
    truncated a, b and their images, and returns an OmegaPoint.  Results
    are checked to stay in W (resp. in Omega).
    """
    mode = mode or Float()
    kind = _normalize_kind(kind)
    d = delta(sys.m)
    if kind == "path-step":
        if not isinstance(base, OmegaPoint):
            raise BadBasePoint("path-step needs an OmegaPoint")
        p = base.to_float()
        if not is_member(sys, p, mode):
            raise BadBasePoint("base is not a member")
        a, b, c = p.a, p.b, p.c
    else:
        a, b = (to_float(np.asarray(v)) for v in base)
    if sys.n < 2:
        raise BadBasePoint("curves need at least two blocks")
    x = _check_pair(sys, a, b, mode)
    if kind == "lemmau-boundary":
        if abs(x - 1) > 1e-7:
            raise BadBasePoint("boundary curve needs |a_1| = 1")
        na, nb = _boundary(a, b, t, d)
    else:
        if not (_TOL < x < 1 - _TOL):
            raise BadBasePoint("interior curve needs 0 < |a_1| < 1")
        na, nb = _interior(a, b, x, t, d)
    if kind == "path-step":
        if np.linalg.norm(_blocks(c, d)[0]) > 1e-9:
            raise BadBasePoint("c must vanish on the first block")
        out = OmegaPoint(na, nb, c)
        if not is_member(sys, out, mode):
            raise IdentityFailed("curve left Omega")
        return out
    if not w_member(sys, (na, nb), "unit", mode):
        raise IdentityFailed("curve left W_{l,m}")
    return na, nb


def path_base(sys: CliffordSystem, a, b) -> OmegaPoint:
    """Complete a degenerate pair to a member whose c vanishes on the first block.

    c is a unit vector in blocks 2..n orthogonal to the truncated a, b and
    their images under the generators.
    """
    d = delta(sys.m)
    a, b = (to_float(np.asarray(v)) for v in (a, b))
    at, bt = a.copy(), b.copy()
    at[:d] = 0
    bt[:d] = 0
    span = [at, bt] + [M @ at for M in sys.E_float] + [M @ bt for M in sys.E_float]
    # restrict to coordinates outside block 1
    S = np.array(span)[:, d:]
    _, s, vh = np.linalg.svd(S)
    r = int(np.sum(s > 1e-9 * max(1.0, s[0] if s.size else 1.0)))
    if r >= S.shape[1]:
        raise BadBasePoint("no room for c outside the first block")
    c = np.zeros(sys.l)
    c[d:] = vh[r]
    c /= np.linalg.norm(c)
    p = OmegaPoint(a, b, c)
    if not is_member(sys, p, Float()):
        raise BadBasePoint("completed point is not a member")
    return p
