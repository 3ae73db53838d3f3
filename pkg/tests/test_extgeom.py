from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from octostiefel.clifford import Definite, build_system
from octostiefel.errors import BadDimension, DimensionMismatch, IdentityFailed, NotAMember
from octostiefel.exactnum import Float, QSqrt2, rank, to_float
from octostiefel.extgeom import (
    NORMAL_NAMES,
    austere_test,
    base_point,
    mean_curvature_component,
    normal_frame,
    shape_operator_eigenvalues,
    shape_operator_matrix,
    shape_operator_spectrum,
    skew_hermitian_basis,
    tangent_basis,
)
from octostiefel.omega import OmegaPoint, gradient_matrix, sample


def _dot(u, v):
    return sum((x * y for x, y in zip(u, v)), QSqrt2(0))


# ---- the normal frame --------------------------------------------------


@pytest.mark.parametrize("n", [3, 4])
def test_normal_matrices_symmetric_and_traceless(n):
    frame = normal_frame(n)
    assert len(frame) == 14
    assert [A.name for A in frame.matrices] == list(NORMAL_NAMES)
    for A in frame.matrices:
        assert A.is_symmetric()
        assert A.trace() == 0
        assert A.M.shape == (12 * n, 12 * n)


def test_diagonal_normals():
    k = 12
    A13, A14 = normal_frame(3)[13], normal_frame(3)[14]
    assert [int(A13.M[i, i]) for i in (0, k, 2 * k)] == [1, 0, -1]
    assert [int(A14.M[i, i]) for i in (0, k, 2 * k)] == [1, -2, 1]
    assert A13.scale2 == Fraction(1, 2) and A14.scale2 == Fraction(1, 6)
    with pytest.raises(ValueError):
        A14.exact()
    assert A13.exact()[0, 0] * A13.exact()[0, 0] == Fraction(1, 2)


@pytest.mark.parametrize("n", [3, 4])
def test_normals_at_base_point_are_orthonormal(n):
    frame = normal_frame(n)
    x = base_point(n).stacked()
    vs = [A.row_times(x) for A in frame.matrices]
    for i, (A, u) in enumerate(zip(frame.matrices, vs)):
        assert A.scale2 * _dot(u, u) == 1
        assert _dot(u, x) == 0
        for v in vs[i + 1:]:
            assert _dot(u, v) == 0


def test_normals_span_gradient_directions_at_samples():
    n = 3
    sys = build_system(4, n, Definite())
    frame = normal_frame(n)
    for seed in range(3):
        p = sample(sys, seed)
        x = to_float(p.stacked())
        N = np.array([A.row_times(x) * float(A.scale2) ** 0.5 for A in frame.matrices])
        assert np.allclose(N @ N.T, np.eye(14), atol=1e-9)
        assert np.allclose(N @ x, 0, atol=1e-9)
        G = to_float(gradient_matrix(sys, p))
        assert rank(np.vstack([G, N]), Float()) == rank(G, Float())


def test_normal_frame_needs_three_columns():
    with pytest.raises(BadDimension):
        normal_frame(2)


# ---- minimality --------------------------------------------------------


@pytest.mark.parametrize("n", [3, 4])
def test_mean_curvature_vanishes_at_base_point(n):
    for beta in range(1, 15):
        assert mean_curvature_component(n, base_point(n), beta) == 0


@pytest.mark.parametrize("n", [3, 4])
def test_mean_curvature_vanishes_at_samples(n):
    sys = build_system(4, n, Definite())
    for seed in range(10):
        p = sample(sys, seed)
        assert max(abs(mean_curvature_component(n, p, b)) for b in range(1, 15)) <= 1e-8


def test_mean_curvature_rejects_bad_points():
    with pytest.raises(DimensionMismatch):
        mean_curvature_component(3, base_point(4), 1)
    x = base_point(3)
    bad = OmegaPoint(x.a, x.a, x.c)
    with pytest.raises(NotAMember):
        mean_curvature_component(3, bad, 1)


# ---- tangent space and the shape operator ------------------------------


def test_tangent_bases_span_the_same_space():
    B = tangent_basis(3)
    Q = skew_hermitian_basis(3)
    assert B.shape == Q.shape == (36, 21)
    assert rank(B) == rank(Q) == 21
    assert rank(np.hstack([B, Q])) == 21
    assert not any(gradient_matrix(build_system(4, 3), base_point(3)).dot(Q).reshape(-1))


def test_tangent_dimension_n4():
    assert tangent_basis(4).shape[1] == 33
    assert rank(np.hstack([tangent_basis(4), skew_hermitian_basis(4)])) == 33


def test_skew_hermitian_basis_is_orthonormal():
    Q = skew_hermitian_basis(3)
    G = Q.T.dot(Q)
    assert all(G[i, j] == (1 if i == j else 0) for i in range(21) for j in range(21))


def test_shape_operator_is_symmetric():
    for beta in (1, 6, 13, 14):
        S = shape_operator_matrix(3, beta)
        assert np.all(S == S.T)


def _hand_spectrum():
    # on the skew-Hermitian 3x3 block with A_14 = diag(d) the operator acts by
    # -(d_i + d_j)/2 on entry (i, j): 3 imaginary slots on the diagonal, 4 off it
    d = (1, -2, 1)
    counts = Counter()
    for i in range(3):
        counts[Fraction(-(d[i] + d[i]), 2)] += 3
        for j in range(i + 1, 3):
            counts[Fraction(-(d[i] + d[j]), 2)] += 4
    return counts


def test_spectrum_matches_hand_computation():
    spec = shape_operator_spectrum(3)
    assert dict(spec.pairs) == dict(_hand_spectrum())
    assert spec.dimension == 21 and spec.scaled_trace() == 0
    assert spec.to_json() == [
        {"eigenvalue": "-1/√6", "multiplicity": 10},
        {"eigenvalue": "(1/2)/√6", "multiplicity": 8},
        {"eigenvalue": "2/√6", "multiplicity": 3},
    ]


def test_float_eigenvalues_agree():
    expect = sorted(float(c) for c, m in _hand_spectrum().items() for _ in range(m))
    assert np.allclose(shape_operator_eigenvalues(3), expect, atol=1e-9)


def test_wrong_claim_is_rejected():
    with pytest.raises(IdentityFailed):
        shape_operator_spectrum(3, {Fraction(-1): 9, Fraction(1, 2): 9, Fraction(2): 3})
    with pytest.raises(IdentityFailed):
        shape_operator_spectrum(3, {Fraction(-1): 10, Fraction(1, 2): 8})
    with pytest.raises(BadDimension):
        shape_operator_spectrum(4)


def test_n4_spectrum_with_explicit_claim():
    # free columns 4..n carry c = -d_i, i.e. -1 on rows 1 and 3, 2 on row 2
    claim = dict(_hand_spectrum())
    claim[Fraction(-1)] += 8
    claim[Fraction(2)] += 4
    assert shape_operator_spectrum(4, claim).dimension == 33


# ---- austerity ---------------------------------------------------------


def test_austere_examples():
    assert austere_test([(-1, 2), (1, 2)])
    assert austere_test([(0, 5)])
    assert not austere_test([(-1, 2), (1, 1)])
    assert not austere_test(shape_operator_spectrum(3))


@given(st.lists(st.tuples(st.fractions(max_denominator=5).filter(lambda c: c != 0), st.integers(1, 4)), max_size=5))
def test_symmetrized_spectra_are_austere(pairs):
    assert austere_test(pairs + [(-c, m) for c, m in pairs])
