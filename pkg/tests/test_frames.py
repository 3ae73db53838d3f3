import itertools

import numpy as np
import pytest

from octostiefel import witnesses as w
from octostiefel.errors import DimensionMismatch, NotAFrame, NotOrthogonal, ParseError
from octostiefel.exactnum import Float, QSqrt2, det, exact_array, is_positive_definite, rank
from octostiefel.frames import (
    OctFrame,
    act_left,
    act_right,
    big_f,
    block_diag,
    block_diag_critical,
    classify,
    column_system,
    conj_transpose_product,
    diag_double_critical,
    fiber_kernel_dim,
    frame,
    gradient_gram_g4,
    gram_g4,
    identity_frame,
    is_frame,
    jacobian,
    oct_matmul,
    sample_frame,
    va_dim,
    va_system,
    verify_certificate,
    xi_certificate,
    z_criterion,
)
from octostiefel.octonion import E, Octonion
from octostiefel.randgroups import random_orthogonal, random_unitary, unitary_frame


def _zero_matrix(D):
    return not any(bool(x) for r in D for x in r)


def signed_permutation(k, rng):
    perm = rng.permutation(k)
    S = exact_array([[0] * k for _ in range(k)])
    for i, p in enumerate(perm):
        S[i, p] = QSqrt2(1 if rng.integers(2) else -1)
    return S


# ---- membership and the defect map -------------------------------------


def test_block_a_rows_but_not_columns():
    assert is_frame(w.BLOCK_A)
    assert conj_transpose_product(w.BLOCK_A) == ((E(0), -E(4)), (E(4), E(0)))


def test_block_a_linear_system_has_four_dimensional_kernel():
    M = column_system(w.BLOCK_A)
    assert M.shape == (16, 16)
    assert 16 - rank(M) == 4


@pytest.mark.parametrize("name", ["block_a", "b4_block", "b4", "b4_prime", "u_sp2", "v32", "v42", "i4"])
def test_named_witnesses_are_frames(name):
    assert is_frame(w.named_frames()[name])


def test_defect_of_twice_identity():
    D = big_f(frame([[2, 0], [0, 2]]))
    assert D == ((E(0, 3), E(0, 0)), (E(0, 0), E(0, 3)))


def test_non_frame_rejected():
    A = frame([[1, 1], [0, 1]])
    assert not is_frame(A)
    with pytest.raises(NotAFrame):
        classify(A)
    with pytest.raises(NotAFrame):
        fiber_kernel_dim(A)


def test_defect_is_hermitian():
    rng = np.random.default_rng(3)
    A = frame([[Octonion(rng.integers(-2, 3, 8)) for _ in range(3)] for _ in range(2)])
    D = big_f(A)
    for i, j in itertools.product(range(2), repeat=2):
        assert D[i][j] == D[j][i].conj()


def test_equivariance_of_defect():
    rng = np.random.default_rng(5)
    A = frame([[Octonion(rng.integers(-2, 3, 8)) for _ in range(3)] for _ in range(2)])
    S = random_orthogonal(2, rng)
    T = random_orthogonal(3, rng)
    # F(S A) = S F(A) S^t; the identity part is preserved because S S^t = I
    D = big_f(A)
    DS = big_f(act_left(S, A))
    for i, j in itertools.product(range(2), repeat=2):
        acc = Octonion.zero()
        for p, q in itertools.product(range(2), repeat=2):
            acc = acc + D[p][q] * (S[i, p] * S[j, q])
        assert DS[i][j] == acc
    assert big_f(act_right(T, A)) == D


def test_orthogonality_is_checked():
    with pytest.raises(NotOrthogonal):
        act_left(exact_array([[1, 1], [0, 1]]), w.BLOCK_A)


def test_frame_json_round_trip():
    back = OctFrame.from_json(w.B4.to_json())
    assert back.rows == w.B4.rows
    with pytest.raises(ParseError):
        OctFrame.from_json({"k": 2, "n": 2, "entries": [[]]})


# ---- Jacobian, V_A and classification ----------------------------------


@pytest.mark.parametrize("k, n", [(1, 1), (1, 3), (2, 2), (2, 3), (3, 3), (3, 4), (4, 4)])
def test_identity_kernel_dimension(k, n):
    A = identity_frame(k, n)
    assert jacobian(A).shape == (k * (4 * k - 3), 8 * k * n)
    assert va_dim(A) == 8 * k * n - 4 * k * k + 3 * k


@pytest.mark.parametrize("name", ["block_a", "b4", "b4_prime", "u_sp2", "v32", "i4"])
def test_two_assemblies_of_va_agree(name):
    A = w.named_frames()[name]
    assert 8 * A.k * A.n - rank(va_system(A)) == va_dim(A)


def test_classify_named_points():
    r = classify(w.I4)
    assert (r.classification, r.vA_dim, r.expected_regular_dim) == ("Regular", 76, 76)
    assert r.certificate is None
    for A in (w.B4, w.B4_PRIME, w.B4_DIAG_BLOCK_A):
        r = classify(A)
        assert (r.classification, r.vA_dim) == ("Critical", 80)
        assert verify_certificate(r.certificate, A)
        # every row of a certificate is non-zero
        assert all(any(bool(x) for x in row) for row in r.certificate)


def test_explicit_certificate_for_b4():
    assert verify_certificate(w.XI_B4, w.B4)
    assert _zero_matrix(oct_matmul(w.XI_B4, w.B4.rows))
    # the same matrix does not annihilate diag(block A, block A)
    assert not verify_certificate(w.XI_B4, w.B4_DIAG_BLOCK_A)


def test_certificate_checks_shape_of_xi():
    xi = [list(r) for r in w.XI_B4]
    xi[0][2] = xi[0][2] + 1  # real part breaks imaginarity
    assert not verify_certificate(xi, w.B4)
    zero = [[Octonion.zero()] * 4 for _ in range(4)]
    assert not verify_certificate(zero, w.B4)


def test_no_certificate_at_regular_point():
    assert xi_certificate(w.I4) is None


def test_signed_permutation_invariance():
    rng = np.random.default_rng(11)
    for _ in range(2):
        S = signed_permutation(4, rng)
        assert classify(act_left(S, w.B4)).classification == "Critical"
        assert classify(act_right(S, w.I4)).classification == "Regular"
    assert act_left(exact_array(np.eye(4, dtype=int).tolist()), w.B4).rows == w.B4.rows


def test_three_row_frames_are_regular():
    for A in (w.V32_POINT, identity_frame(3, 4), w.A0(3)):
        assert classify(A).classification == "Regular"
    rng = np.random.default_rng(2)
    for _ in range(3):
        assert classify(sample_frame(3, 3, rng), Float()).classification == "Regular"


def test_unitary_points_regular():
    rng = np.random.default_rng(7)
    for k in (2, 3):
        U = unitary_frame(*random_unitary(k, rng))
        assert is_frame(U)
        assert classify(U).classification == "Regular"


def test_float_classification_is_advisory():
    r = classify(w.I4.to_float(), Float())
    assert r.advisory and r.classification == "Regular"
    assert "advisory" in r.to_json()


# ---- fibers ------------------------------------------------------------


@pytest.mark.parametrize("k, n", [(1, 2), (1, 4), (2, 3), (2, 4), (3, 4)])
def test_fiber_dimensions(k, n):
    assert fiber_kernel_dim(w.z0(k, n)) == 8 * (n - k)
    if k >= 2:
        assert fiber_kernel_dim(w.z0_prime(k, n)) == 8 * (n - k) + 4


# ---- double-block criteria and the Gram matrix -------------------------


def test_double_block_criteria():
    for A in (w.BLOCK_A, w.U_SP2):
        assert diag_double_critical(A)
        assert block_diag_critical(A, A)
        assert classify(block_diag(A, A)).classification == "Critical"
        Z, _ = z_criterion(A, A)
        assert is_positive_definite(Z)
    I2 = identity_frame(2)
    assert not diag_double_critical(I2)
    assert not block_diag_critical(I2, I2)


def test_double_block_on_samples():
    rng = np.random.default_rng(4)
    for _ in range(4):
        A = sample_frame(2, 2, rng)
        dd = diag_double_critical(A, Float())
        assert dd == block_diag_critical(A, A, Float())
        assert dd == (classify(block_diag(A, A), Float()).classification == "Critical")


def test_double_block_needs_2x2():
    with pytest.raises(DimensionMismatch):
        diag_double_critical(w.V32_POINT)


def test_gram_at_identity_is_twice_identity():
    G = gram_g4(w.I4)
    assert G.shape == (42, 42)
    assert all(G[i, j] == (2 if i == j else 0) for i in range(42) for j in range(42))


def test_gram_block_layout_matches_gradient_gram():
    for A in (w.I4, w.B4, w.B4_PRIME):
        G = gram_g4(A)
        H = gradient_gram_g4(A)
        assert all(G.reshape(-1) == H.reshape(-1))
    assert not det(gram_g4(w.B4))
    assert det(gram_g4(w.I4))


def test_sampled_frames():
    rng = np.random.default_rng(9)
    for k, n in ((2, 2), (3, 4)):
        A = sample_frame(k, n, rng)
        assert is_frame(A, Float())
        assert not A.is_exact()
