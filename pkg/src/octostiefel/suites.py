"""Named verification suites and the report they produce."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import witnesses as w
from .clifford import Definite, delta, Indefinite, build_system, product_trace, symmetric_system, verify_clifford
from .errors import OctoStiefelError, UnknownSuite
from .exactnum import EXACT, Float, ScalarMode, det, is_positive_definite, rank
from .extgeom import austere_test, base_point, mean_curvature_component, normal_frame, shape_operator_spectrum
from .frames import (
    act_left,
    act_right,
    big_f,
    block_diag,
    classify,
    column_system,
    conj_transpose_product,
    diag_double_critical,
    fiber_kernel_dim,
    gram_g4,
    is_frame,
    verify_certificate,
    z_criterion,
)
from .octonion import E, oct_mul
from .omega import (
    OmegaPoint,
    dimension_and_emptiness,
    indefinite_system,
    omega84_analysis,
    pi_differential_rank,
    pi_lift,
    regularity_gram,
    sample,
    vector,
)
from .randgroups import random_orthogonal, random_unitary, unitary_frame

__all__ = ["SUITES", "ReportItem", "VerificationReport", "run_suite"]

SUITES = ("all", "octonion", "frames", "omega", "geometry")


@dataclass(frozen=True)
class ReportItem:
    claim_id: str
    locator: str
    status: str  # PASS | FAIL | ADVISORY
    computed: str
    expected: str
    mode: str

    def to_json(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "locator": self.locator,
            "status": self.status,
            "computed": self.computed,
            "expected": self.expected,
            "mode": self.mode,
        }


@dataclass
class VerificationReport:
    suite: str
    items: list = field(default_factory=list)

    @property
    def failed(self) -> bool:
        return any(it.status == "FAIL" for it in self.items)

    def to_json(self) -> dict:
        return {"suite": self.suite, "items": [it.to_json() for it in self.items]}

    def to_markdown(self) -> str:
        lines = [
            f"## Suite `{self.suite}`",
            "",
            "| claim | status | mode | computed | expected | locator |",
            "|---|---|---|---|---|---|",
        ]
        for it in self.items:
            lines.append(
                f"| {it.claim_id} | {it.status} | {it.mode} | {it.computed} | {it.expected} | {it.locator} |"
            )
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class _Check:
    claim_id: str
    locator: str
    run: Callable[[ScalarMode, int], tuple]
    # rank-based decisions become ADVISORY when evaluated in float
    float_capable: bool = False


# ---- octonion ----------------------------------------------------------


def _oct_table(mode, seed):
    got = [oct_mul(E(7), E(2)), oct_mul(E(3), E(6)), oct_mul(E(7), E(3)), oct_mul(E(2), E(6))]
    want = [E(5), E(5), E(4), -E(4)]
    return got == want, "e7e2, e3e6, e7e3, e2e6 = e5, e5, e4, -e4" if got == want else str(got), "e5, e5, e4, -e4"


def _oct_norm(mode, seed):
    rng = np.random.default_rng(seed)
    worst = 0.0
    from .octonion import Octonion, oct_norm2

    for _ in range(20):
        x = Octonion(rng.standard_normal(8))
        y = Octonion(rng.standard_normal(8))
        worst = max(worst, abs(oct_norm2(oct_mul(x, y)) - oct_norm2(x) * oct_norm2(y)))
    return worst <= 1e-9, f"max defect {worst:.2e}", "<= 1e-9"


def _clifford_all(mode, seed):
    bad = []
    count = 0
    for m in range(1, 9):
        fams = [Definite(), Indefinite(1)] if m % 4 == 0 else [None]
        for fam in fams:
            for n in (1, 2):
                if isinstance(fam, Indefinite) and fam.q > n:
                    continue
                count += 1
                if not verify_clifford(build_system(m, n, fam)):
                    bad.append((m, n, str(fam)))
    return not bad, f"{count} systems, failures {bad}", "all relations hold"


def _trace_distinction(mode, seed):
    d = product_trace(symmetric_system(build_system(4, 2, Definite())))
    i = product_trace(symmetric_system(build_system(4, 2, Indefinite(1))))
    return abs(d) != abs(i), f"definite {d}, indefinite(1) {i}", "absolute traces differ"


# ---- frames ------------------------------------------------------------


def _block_a(mode, seed):
    one = E(0)
    # big_f is A conj(A)^t - I
    ok_p = not any(x for row in big_f(w.BLOCK_A) for x in row)
    ok_q = conj_transpose_product(w.BLOCK_A) == ((one, -E(4)), (E(4), one))
    # solution space of A (x, y)^t = 0 over the reals
    M = column_system(w.BLOCK_A)
    dim = 16 - rank(M)
    return ok_p and ok_q and dim == 4, f"AA*=I {ok_p}, A*A {ok_q}, null dim {dim}", "True, True, 4"


def _witness_frames(mode, seed):
    a, b = is_frame(w.V32_POINT), is_frame(w.V42_POINT)
    return a and b, f"3x2 {a}, 4x2 {b}", "True, True"


def _fiber_jump(mode, seed):
    got = {}
    for k, n in ((2, 3), (2, 4), (3, 4)):
        got[(k, n)] = (fiber_kernel_dim(w.z0(k, n), mode), fiber_kernel_dim(w.z0_prime(k, n), mode))
    want = {kn: (8 * (kn[1] - kn[0]), 8 * (kn[1] - kn[0]) + 4) for kn in got}
    return got == want, str(got), str(want)


def _classify_named(name, A, want_cls, want_dim):
    def run(mode, seed):
        r = classify(A, mode)
        cert = r.certificate is None or verify_certificate(r.certificate, A)
        ok = r.classification == want_cls and r.vA_dim == want_dim and cert
        return ok, f"{r.classification}, dim V_A = {r.vA_dim}", f"{want_cls}, {want_dim}"

    return run


def _explicit_xi(mode, seed):
    ok = verify_certificate(w.XI_B4, w.B4)
    return ok, f"xi annihilates B4: {ok}", "True"


def _three_way(mode, seed):
    rng = np.random.default_rng(seed)
    bad = []
    for name, A in (("B4", w.B4), ("B4'", w.B4_PRIME), ("I4", w.I4)):
        pts = [A] + [act_right(random_orthogonal(4, rng), act_left(random_orthogonal(4, rng), A)) for _ in range(2)]
        for P in pts:
            r = classify(P)
            crit = r.classification == "Critical"
            has_cert = r.certificate is not None and verify_certificate(r.certificate, P)
            g0 = not det(gram_g4(P))
            if not (crit == has_cert == g0):
                bad.append(name)
    return not bad, f"disagreements {bad}", "none"


def _unitary(mode, seed):
    rng = np.random.default_rng(seed)
    got = []
    for k in (2, 3):
        U = unitary_frame(*random_unitary(k, rng))
        got.append(classify(U, mode).classification)
    crit = classify(block_diag(w.U_SP2, w.U_SP2), mode).classification
    dd = diag_double_critical(w.U_SP2)
    ok = got == ["Regular", "Regular"] and crit == "Critical" and dd
    return ok, f"U(2), U(3): {got}; diag(U,U): {crit}; double {dd}", "Regular, Regular; Critical; True"


def _z_criterion(mode, seed):
    bad = []
    for name, A in (("block A", w.BLOCK_A), ("U", w.U_SP2)):
        Z, _ = z_criterion(A, A)
        dd = diag_double_critical(A)
        cls = classify(block_diag(A, A)).classification == "Critical"
        if not (dd == cls and is_positive_definite(Z)):
            bad.append(name)
    return not bad, f"disagreements {bad}", "none"


# ---- omega -------------------------------------------------------------


def _omega_regular(mode, seed):
    p16 = OmegaPoint.from_frame(w.V32_POINT)
    _, v16 = regularity_gram(build_system(8, 2, Definite()), p16, EXACT)
    s12 = build_system(4, 3, Definite())
    _, v12 = regularity_gram(s12, base_point(3), EXACT)
    return v16 and v12, f"Omega_16,8 {v16}, Omega_12,4 {v12}", "True, True"


def _omega_regular_float(mode, seed):
    verdicts = []
    for l_, m in ((12, 4), (32, 8)):
        sys = build_system(m, l_ // delta(m), Definite())
        for s in range(5):
            _, v = regularity_gram(sys, sample(sys, seed + s), Float())
            verdicts.append(v)
    return all(verdicts), f"{sum(verdicts)}/{len(verdicts)} regular", "all"


def _dimensions(mode, seed):
    got = {
        "Omega_16,8": dimension_and_emptiness(build_system(8, 2, Definite())).dim,
        "Omega_24,8": dimension_and_emptiness(build_system(8, 3, Definite())).dim,
        "Omega_4,2": dimension_and_emptiness(build_system(2, 2)).status,
    }
    want = {"Omega_16,8": 21, "Omega_24,8": 3 * (24 - 9), "Omega_4,2": "Empty"}
    return got == want, str(got), str(want)


def _omega84(mode, seed):
    sys = indefinite_system()
    status = dimension_and_emptiness(sys)
    data = omega84_analysis(status.witness, EXACT, sys)
    for s in range(3):
        from .omega import omega84_sample

        omega84_analysis(omega84_sample(seed + s, sys), Float(), sys)
    return True, f"xi = {data.xi}, (x, y, z) = ({data.x}, {data.y}, {data.z})", "unit imaginary xi, x^2+y^2+z^2 = 1"


def _pi_lift(mode, seed):
    reps = []
    for c in ([0] * 16 + [1] + [0] * 7, [1] + [0] * 23, [Fraction(3, 5)] + [0] * 15 + [Fraction(4, 5)] + [0] * 7):
        p = pi_lift(vector(c), 3)
        reps.append(list(p.c) == list(vector(c)))
    r0 = pi_differential_rank(OmegaPoint.from_frame(w.A0(3)))
    return all(reps) and r0 < 23, f"lifts {reps}, rank at A0 {r0}", "all True, < 23"


# ---- geometry ----------------------------------------------------------


def _minimality(mode, seed):
    vals = [mean_curvature_component(n, base_point(n), b) for n in (3, 4) for b in range(1, 15)]
    ok = not any(vals)
    return ok, "all zero" if ok else str(vals), "all zero"


def _normal_frame(mode, seed):
    F = normal_frame(3)
    traces = [A.trace() for A in F.matrices]
    return not any(traces), f"traces {set(traces)}", "{0}"


def _spectrum(mode, seed):
    s = shape_operator_spectrum(3)
    a = austere_test(s)
    text = ", ".join(f"({d['eigenvalue']}, {d['multiplicity']})" for d in s.to_json())
    return not a and s.dimension == 21, f"{text}; austere {a}", "(-1/√6, 10), ((1/2)/√6, 8), (2/√6, 3); austere False"


_CHECKS = {
    "octonion": [
        _Check("OCT-01", "multiplication table: e7e2 = e3e6 = e5, e7e3 = e4, e2e6 = -e4", _oct_table),
        _Check("OCT-02", "norm is multiplicative on random octonions", _oct_norm),
        _Check("OCT-03", "Clifford relations for every built system m = 1..8", _clifford_all),
        _Check("OCT-04", "definite and indefinite families have different product traces", _trace_distinction),
    ],
    "frames": [
        _Check("FRM-01", "2x2 block A: rows orthonormal, columns not, null space of dimension 4", _block_a),
        _Check("FRM-02", "3x2 and 4x2 witness matrices are octonionic frames", _witness_frames),
        _Check("FRM-03", "fiber dimension jumps by 4 between z0 and z0'", _fiber_jump, True),
        _Check("FRM-04", "identity 4-frame is a regular point, dim V_A = 76", _classify_named("I4", w.I4, "Regular", 76), True),
        _Check("FRM-05", "block point B4 is critical, dim V_A = 80", _classify_named("B4", w.B4, "Critical", 80), True),
        _Check("FRM-06", "block point B4' is critical", _classify_named("B4'", w.B4_PRIME, "Critical", 80), True),
        _Check("FRM-07", "explicit skew imaginary certificate annihilates B4", _explicit_xi),
        _Check("FRM-08", "classification, certificate and Gram determinant agree on O(4)-translates", _three_way),
        _Check("FRM-09", "complex unitary frames are regular; diag(U, U) is critical", _unitary, True),
        _Check("FRM-10", "double-block criterion and Z matrix agree with classification", _z_criterion),
    ],
    "omega": [
        _Check("OMG-01", "regularity Gram at the Omega_16,8 witness and at x0 in Omega_12,4", _omega_regular),
        _Check("OMG-02", "regularity Gram at sampled members of Omega_12,4 and Omega_32,8", _omega_regular_float),
        _Check("OMG-03", "dimensions and emptiness: dim Omega_16,8 = 21, Omega_4,2 empty", _dimensions),
        _Check("OMG-04", "indefinite Omega_8,4 witness and samples satisfy the quaternion identities", _omega84),
        _Check("OMG-05", "projection to c lifts every case and is not submersive at A0", _pi_lift),
    ],
    "geometry": [
        _Check("GEO-01", "the 14 normal matrices are traceless", _normal_frame),
        _Check("GEO-02", "mean curvature vanishes at x0 for n = 3 and n = 4", _minimality),
        _Check("GEO-03", "shape operator spectrum for xi_14 at x0; not austere", _spectrum),
    ],
}

# these items sample in floating point regardless of the requested mode
_ALWAYS_FLOAT = {"OCT-02", "OMG-02"}


def run_suite(name: str, mode: ScalarMode = EXACT, seed: int = 0) -> VerificationReport:
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; expected one of {SUITES}")
    groups = SUITES[1:] if name == "all" else (name,)
    report = VerificationReport(name)
    for g in groups:
        for chk in _CHECKS[g]:
            use = mode if chk.float_capable else EXACT
            float_run = isinstance(use, Float) or chk.claim_id in _ALWAYS_FLOAT
            try:
                ok, computed, expected = chk.run(use, seed)
            except OctoStiefelError as exc:
                ok, computed, expected = False, f"{type(exc).__name__}: {exc}", "no error"
            if not ok:
                status = "FAIL"
            else:
                status = "ADVISORY" if float_run else "PASS"
            report.items.append(
                ReportItem(chk.claim_id, chk.locator, status, computed, expected, "Float" if float_run else "Exact")
            )
    report.items.sort(key=lambda it: it.claim_id)
    return report
