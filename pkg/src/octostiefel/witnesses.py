"""Named exact points used throughout the checks and the CLI."""

from __future__ import annotations

from .exactnum import INV_SQRT2
from .frames import OctFrame, block_diag, frame, identity_frame
from .octonion import E

__all__ = [
    "BLOCK_A",
    "B4_BLOCK",
    "B4",
    "B4_DIAG_BLOCK_A",
    "B4_PRIME_BLOCK",
    "B4_PRIME",
    "U_SP2",
    "V32_POINT",
    "V42_POINT",
    "A0",
    "I4",
    "z0",
    "z0_prime",
    "named_frames",
    "XI_B4",
]

s = INV_SQRT2

# 2 x 2 block whose rows are orthonormal but whose columns are not
BLOCK_A = frame([[E(7), E(3)], [E(2), -E(6)]], s)

# the block used for the doubled critical point
B4_BLOCK = frame([[E(7), E(3)], [1, E(4)]], s)
B4 = block_diag(B4_BLOCK, B4_BLOCK)
B4_DIAG_BLOCK_A = block_diag(BLOCK_A, BLOCK_A)

B4_PRIME_BLOCK = frame([[E(2), -E(6)], [E(1), -E(5)]], s)
B4_PRIME = block_diag(B4_PRIME_BLOCK, B4_PRIME_BLOCK)

# symplectic 2 x 2 point whose double is critical
U_SP2 = frame([[1, E(1)], [E(2), E(3)]], s)

# three orthonormal rows in O^2
V32_POINT = frame([[E(7), E(3)], [E(2), -E(6)], [1, E(4)]], s)

# four orthonormal rows in O^2
V42_POINT = frame([[E(7), E(3)], [E(2), -E(6)], [E(1), -E(5)], [1, E(4)]], s)

I4 = identity_frame(4)

_o = 0 * E(0)
# skew matrix of imaginary octonions with XI_B4 * B4 = 0
XI_B4 = (
    (_o, _o, E(1), -E(6)),
    (_o, _o, -E(6), -E(1)),
    (-E(1), E(6), _o, _o),
    (E(6), E(1), _o, _o),
)


def A0(n: int) -> OctFrame:
    """3 x n point at which the projection to the third row is not submersive."""
    pad = [0] * (n - 2)
    return frame(
        [[E(2), -E(6)] + pad, [E(1), -E(5)] + pad, [1, E(4)] + pad], s
    )


def z0(k: int, n: int) -> OctFrame:
    return identity_frame(k, n)


def z0_prime(k: int, n: int) -> OctFrame:
    """(diag(BLOCK_A, I_{k-2}), 0): a frame whose fiber jumps by 4 dimensions."""
    if k < 2 or n < k:
        raise ValueError("z0_prime needs 2 <= k <= n")
    parts = [BLOCK_A] + ([identity_frame(k - 2)] if k > 2 else [])
    core = block_diag(*parts)
    zero = 0 * E(0)
    return OctFrame(tuple(r + (zero,) * (n - k) for r in core.rows))


def named_frames() -> dict[str, OctFrame]:
    return {
        "block_a": BLOCK_A,
        "b4_block": B4_BLOCK,
        "b4": B4,
        "b4_prime": B4_PRIME,
        "u_sp2": U_SP2,
        "v32": V32_POINT,
        "v42": V42_POINT,
        "i4": I4,
    }
