import numpy as np
import pytest

from octostiefel.clifford import (
    Definite,
    Indefinite,
    NotApplicable,
    build_system,
    delta,
    fkm_polynomial,
    parse_family,
    product_trace,
    symmetric_system,
    verify_clifford,
)
from octostiefel.errors import BadFamily, ParseError, UnsupportedM


def test_delta_values_and_periodicity():
    assert [delta(m) for m in range(1, 9)] == [1, 2, 4, 4, 8, 8, 8, 8]
    for m in range(1, 9):
        assert delta(m + 8) == 16 * delta(m)


def _systems():
    for m in range(1, 9):
        for n in (1, 2, 3):
            if m % 4 == 0:
                yield build_system(m, n, Definite())
                for q in range(n + 1):
                    yield build_system(m, n, Indefinite(q))
            else:
                yield build_system(m, n)


@pytest.mark.parametrize("sys", list(_systems()), ids=lambda s: f"m{s.m}n{s.n}{s.family}")
def test_clifford_relations(sys):
    assert sys.l == sys.n * delta(sys.m)
    assert len(sys.E) == sys.m - 1
    assert verify_clifford(sys)


def test_symmetric_system_relations():
    for sys in (build_system(4, 2), build_system(8, 1), build_system(3, 2)):
        P = symmetric_system(sys).P
        ident = np.identity(2 * sys.l, dtype=int)
        for i, A in enumerate(P):
            for j, B in enumerate(P):
                anti = (A.dot(B) + B.dot(A)).astype(int)
                assert np.array_equal(anti, 2 * ident if i == j else 0 * ident)


@pytest.mark.parametrize("m", [4, 8])
def test_traces_separate_families(m):
    n = 2
    l = n * delta(m)
    t = {q: product_trace(symmetric_system(build_system(m, n, Indefinite(q)))) for q in range(n + 1)}
    definite = product_trace(symmetric_system(build_system(m, n, Definite())))
    assert abs(definite) == 2 * l
    # only 0 < q < n gives a trace strictly inside (-2l, 2l)
    assert abs(t[1]) < 2 * l
    assert abs(t[0]) == abs(t[n]) == 2 * l


def test_fkm_polynomial_on_sphere():
    sys = build_system(4, 2)
    rng = np.random.default_rng(1)
    for _ in range(5):
        x = rng.standard_normal(2 * sys.l)
        x /= np.linalg.norm(x)
        assert -1 - 1e-12 <= fkm_polynomial(sys, x) <= 1 + 1e-12


def test_family_errors():
    with pytest.raises(UnsupportedM):
        build_system(9, 1)
    with pytest.raises(BadFamily):
        build_system(4, 2, NotApplicable())
    with pytest.raises(BadFamily):
        build_system(4, 2, Indefinite(3))
    with pytest.raises(BadFamily):
        build_system(3, 2, Definite())


def test_parse_family():
    assert parse_family("definite") == Definite()
    assert parse_family("indefinite(2)") == Indefinite(2)
    assert parse_family(None) == NotApplicable()
    assert str(Indefinite(1)) == "indefinite(1)"
    with pytest.raises(ParseError):
        parse_family("hyperbolic")


def test_system_json():
    obj = build_system(2, 1).to_json()
    assert obj["E"] == [[[0, -1], [1, 0]]]
