"""End-to-end acceptance checks; each test prints one PASS/FAIL line."""

import itertools
from contextlib import contextmanager
from fractions import Fraction

import numpy as np

from octostiefel import witnesses as w
from octostiefel.clifford import Definite, Indefinite, build_system, verify_clifford
from octostiefel.exactnum import EXACT, Float, det, is_positive_definite, rank
from octostiefel.extgeom import austere_test, base_point, mean_curvature_component, shape_operator_spectrum
from octostiefel.frames import (
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
    gram_g4,
    is_frame,
    jacobian,
    sample_frame,
    va_dim,
    va_system,
    verify_certificate,
    z_criterion,
)
from octostiefel.octonion import E, Octonion, oct_mul, oct_norm2
from octostiefel.omega import (
    OmegaPoint,
    constraints,
    dimension_and_emptiness,
    gradients,
    gram_decomposition_rhs,
    indefinite_system,
    is_member,
    octonion_system,
    omega84_analysis,
    omega84_sample,
    pi_differential_rank,
    pi_lift,
    regularity_gram,
    sample,
    vector,
)
from octostiefel.randgroups import random_orthogonal, random_unitary, unitary_frame
from oracles import exact_members, rel_err

LOG = []


class Checks:
    def __init__(self):
        self.failures = []

    def __call__(self, name, ok):
        if not ok:
            self.failures.append(name)


@contextmanager
def criterion(number, title):
    checks = Checks()
    try:
        yield checks
    except Exception as exc:  # report the criterion as failed, then re-raise below
        checks.failures.append(f"{type(exc).__name__}: {exc}")
    line = f"{'PASS' if not checks.failures else 'FAIL'} criterion {number}: {title}"
    print(line)
    LOG.append(line)
    assert not checks.failures, checks.failures


def _zero(D):
    return not any(bool(x) for r in D for x in r)


def test_criterion_01_octonion_table():
    with criterion(1, "octonion multiplication table") as check:
        for i, j, k in [(7, 2, 5), (3, 6, 5), (7, 3, 4), (2, 6, -4)]:
            expect = E(abs(k)) if k > 0 else -E(abs(k))
            check(f"e{i}e{j}", oct_mul(E(i), E(j)) == expect)


def test_criterion_02_block_a():
    with criterion(2, "2x2 block: rows orthonormal, columns not, 4-dim solution space") as check:
        check("A conj(A)^t = I", _zero(big_f(w.BLOCK_A)))
        check("conj(A)^t A", conj_transpose_product(w.BLOCK_A) == ((E(0), -E(4)), (E(4), E(0))))
        M = column_system(w.BLOCK_A)
        check("solution dim", M.shape[1] - rank(M) == 4)


def test_criterion_03_fiber_jump():
    with criterion(3, "fiber dimension jumps by 4 between z0 and z0'") as check:
        for k, n in [(2, 3), (2, 4), (3, 4)]:
            check(f"z0 {k},{n}", fiber_kernel_dim(w.z0(k, n)) == 8 * (n - k))
            check(f"z0' {k},{n}", fiber_kernel_dim(w.z0_prime(k, n)) == 8 * (n - k) + 4)


def test_criterion_04_witness_frames():
    with criterion(4, "explicit 3x2 and 4x2 octonionic frames") as check:
        check("3x2 shape", (w.V32_POINT.k, w.V32_POINT.n) == (3, 2))
        check("3x2 frame", is_frame(w.V32_POINT))
        check("4x2 shape", (w.V42_POINT.k, w.V42_POINT.n) == (4, 2))
        check("4x2 frame", is_frame(w.V42_POINT))


def test_criterion_05_omega_regularity():
    with criterion(5, "regularity Gram verdicts on Omega") as check:
        _, v = regularity_gram(build_system(8, 2), OmegaPoint.from_frame(w.V32_POINT))
        check("exact Omega_16,8", v)
        _, v = regularity_gram(build_system(4, 3, Definite()), base_point(3))
        check("exact x0", v)
        mode = Float(pivot=1e-7)
        for m, n in [(4, 3), (8, 4)]:
            sys = build_system(m, n, Definite())
            for seed in range(50):
                _, v = regularity_gram(sys, sample(sys, seed), mode)
                check(f"float m={m} seed={seed}", v)


def _orthogonal_3x3(R):
    return all(R.T.dot(R)[i, j] == (1 if i == j else 0) for i in range(3) for j in range(3))


def test_criterion_06_dimensions():
    with criterion(6, "dimensions, emptiness and witnesses") as check:
        check("dim 16,8", dimension_and_emptiness(build_system(8, 2)).dim == 21)
        for n in (2, 3, 4):
            check(f"dim 8n,8 n={n}", dimension_and_emptiness(build_system(8, n)).dim == 3 * (8 * n - 9))
        check("4,2 empty", dimension_and_emptiness(build_system(2, 2)).status == "Empty")
        sys31 = build_system(1, 3)
        rng = np.random.default_rng(6)
        for _ in range(5):
            R = random_orthogonal(3, rng)
            p = OmegaPoint(*(np.array(list(r), dtype=object) for r in R))
            check("3,1 orthogonal in", is_member(sys31, p) and _orthogonal_3x3(R))
            R2 = R.copy()
            R2[2] = R2[2] * Fraction(1, 2)
            p = OmegaPoint(*(np.array(list(r), dtype=object) for r in R2))
            check("3,1 non-orthogonal out", not is_member(sys31, p) and not _orthogonal_3x3(R2))
        for m in range(1, 9):
            for n in range(1, 5):
                fams = [Definite()] + [Indefinite(q) for q in range(n + 1)] if m % 4 == 0 else [None]
                for fam in fams:
                    sys = build_system(m, n, fam)
                    if sys.l - m - 1 >= m:
                        st = dimension_and_emptiness(sys)
                        check(f"witness {m},{n},{fam}", is_member(sys, st.witness))


def _three_way(A, check, label):
    r = classify(A)
    critical = r.classification == "Critical"
    cert = r.certificate is not None and verify_certificate(r.certificate, A)
    singular = not det(gram_g4(A))
    check(f"{label} three-way", critical == cert == singular)
    return critical


def test_criterion_07_criticality():
    with criterion(7, "classification of I4, B4, B4' and their O(4)-translates") as check:
        r = classify(w.I4)
        check("I4", (r.classification, r.vA_dim) == ("Regular", 76))
        r = classify(w.B4)
        check("B4", (r.classification, r.vA_dim) == ("Critical", 80))
        check("explicit xi", verify_certificate(w.XI_B4, w.B4))
        check("B4'", classify(w.B4_PRIME).classification == "Critical")
        rng = np.random.default_rng(7)
        for name, A, crit in (("I4", w.I4, False), ("B4", w.B4, True), ("B4'", w.B4_PRIME, True)):
            check(f"{name} base", _three_way(A, check, name) == crit)
            for t in range(5):
                S, T = random_orthogonal(4, rng), random_orthogonal(4, rng)
                B = act_right(T, act_left(S, A))
                check(f"{name} translate {t}", _three_way(B, check, f"{name}#{t}") == crit)


def test_criterion_08_unitary_points():
    with criterion(8, "unitary points regular, the Sp-type block doubles to a critical point") as check:
        rng = np.random.default_rng(8)
        for k in (2, 3):
            for t in range(5):
                U = unitary_frame(*random_unitary(k, rng))
                check(f"U({k}) #{t}", is_frame(U) and classify(U).classification == "Regular")
        check("diag(U, U)", classify(block_diag(w.U_SP2, w.U_SP2)).classification == "Critical")
        check("diag_double_critical(U)", diag_double_critical(w.U_SP2))


def test_criterion_09_double_blocks():
    with criterion(9, "double-block criteria agree with classification; Z positive definite") as check:
        rng = np.random.default_rng(9)
        cases = [("block", w.BLOCK_A, EXACT), ("U", w.U_SP2, EXACT)]
        cases += [(f"sample {t}", sample_frame(2, 2, rng), Float()) for t in range(10)]
        for name, A, mode in cases:
            dd = diag_double_critical(A, mode)
            check(f"{name} classify", dd == (classify(block_diag(A, A), mode).classification == "Critical"))
            check(f"{name} Z-criterion", block_diag_critical(A, A, mode) == dd)
            Z, _ = z_criterion(A, A, mode)
            check(f"{name} Z > 0", is_positive_definite(Z, mode))


def test_criterion_10_minimality():
    with criterion(10, "mean curvature vanishes") as check:
        for n in (3, 4):
            x0 = base_point(n)
            check(f"x0 n={n}", all(mean_curvature_component(n, x0, b) == 0 for b in range(1, 15)))
        sys = build_system(4, 3, Definite())
        for seed in range(20):
            p = sample(sys, seed)
            worst = max(abs(mean_curvature_component(3, p, b)) for b in range(1, 15))
            check(f"sample {seed}", worst <= 1e-8)


def test_criterion_11_spectrum():
    with criterion(11, "certified shape operator spectrum, not austere") as check:
        spec = shape_operator_spectrum(3)
        check("spectrum", dict(spec.pairs) == {Fraction(-1): 10, Fraction(1, 2): 8, Fraction(2): 3})
        check("dimension", spec.dimension == 21)
        check("not austere", austere_test(spec) is False)


def _quaternion_blocks(v):
    return [Octonion(list(v[4 * i:4 * i + 4]) + [0] * 4) for i in range(len(v) // 4)]


def test_criterion_12_indefinite_omega84():
    with criterion(12, "indefinite Omega_8,4 identities") as check:
        sys = indefinite_system()
        points = [(dimension_and_emptiness(sys).witness, EXACT)]
        points += [(omega84_sample(seed, sys), Float()) for seed in range(20)]
        for idx, (p, mode) in enumerate(points):
            check(f"member {idx}", is_member(sys, p, mode))
            data = omega84_analysis(p, mode, sys)
            check(f"|xi| {idx}", abs(float(oct_norm2(data.xi)) - 1) <= 1e-9)
            check(f"Re xi {idx}", abs(float(data.xi.re())) <= 1e-9)
            res = [oct_mul(data.xi, b) - a for a, b in zip(_quaternion_blocks(p.a), _quaternion_blocks(p.b))]
            check(f"a = xi b {idx}", max(float(oct_norm2(r)) for r in res) <= 1e-18)
            check(f"x2+y2+z2 {idx}", abs(float(data.x ** 2 + data.y ** 2 + data.z ** 2) - 1) <= 1e-9)


def test_criterion_13_projection():
    with criterion(13, "projection to c is onto but not submersive") as check:
        sys = octonion_system(3)
        rng = np.random.default_rng(13)
        for t in range(100):
            c = rng.standard_normal(24)
            c /= np.linalg.norm(c)
            p = pi_lift(c, 3, Float())
            residual = max(abs(v) for v in constraints(sys, p).values())
            check(f"float lift {t}", np.array_equal(p.c, c) and residual <= 1e-9)
        reps = (
            [0] * 16 + [1] + [0] * 7,
            [1] + [0] * 23,
            [Fraction(3, 5)] + [0] * 15 + [Fraction(4, 5)] + [0] * 7,
        )
        for c in map(vector, reps):
            p = pi_lift(c, 3)
            check("exact lift", is_member(sys, p) and list(p.c) == list(c))
        check("rank at A0", pi_differential_rank(OmegaPoint.from_frame(w.A0(3))) < 23)
        for seed in range(10):
            check(f"rank at sample {seed}", pi_differential_rank(sample(sys, seed), Float()) == 23)


def _fd_agreement(sys, p):
    x = p.stacked()
    J = np.array(gradients(sys, p), dtype=float)

    def values(y):
        return np.array([float(v) for v in constraints(sys, OmegaPoint.from_stacked(y)).values()])

    num = np.empty_like(J)
    for k in range(len(x)):
        e = np.zeros_like(x)
        e[k] = 1e-6
        num[:, k] = (values(x + e) - values(x - e)) / 2e-6
    return rel_err(num, J) <= 1e-6


def test_criterion_14_properties():
    with criterion(14, "algebraic property suites") as check:
        rng = np.random.default_rng(14)
        for _ in range(30):
            x, y = (Octonion(rng.integers(-4, 5, 8).tolist()) for _ in range(2))
            check("norm", oct_norm2(oct_mul(x, y)) == oct_norm2(x) * oct_norm2(y))
            check("alternative", oct_mul(oct_mul(x, x), y) == oct_mul(x, oct_mul(x, y)))
        for i, j in itertools.combinations(range(1, 8), 2):
            check("anticommute", oct_mul(E(i), E(j)) == -oct_mul(E(j), E(i)))
        for m in range(1, 9):
            for n in (1, 2, 3):
                fams = [Definite()] + [Indefinite(q) for q in range(n + 1)] if m % 4 == 0 else [None]
                for fam in fams:
                    check(f"clifford {m},{n},{fam}", verify_clifford(build_system(m, n, fam)))
        for m, n in [(4, 3), (8, 3)]:
            sys = build_system(m, n)
            check(f"finite differences {m},{n}", _fd_agreement(sys, sample(sys, 1)))
        for sys, p in exact_members(20, seed=14):
            G, _ = regularity_gram(sys, p)
            check("Gram decomposition", all((G - gram_decomposition_rhs(sys, p)).reshape(-1) == 0))
        candidates = list(w.named_frames().values())
        candidates += [unitary_frame(*random_unitary(k, rng)) for k in (2, 2, 3, 3)]
        candidates += [act_left(random_orthogonal(4, rng), A) for A in (w.I4, w.B4, w.B4_PRIME)]
        candidates += [act_left(random_orthogonal(2, rng), w.BLOCK_A) for _ in range(20)]
        candidates = candidates[:20]
        for A in candidates:
            total = 8 * A.k * A.n
            kernel = total - rank(va_system(A))
            check(f"V_A + rank J {A.k}x{A.n}", kernel + rank(jacobian(A)) == total and kernel == va_dim(A))
        check("20 candidates", len(candidates) == 20)
