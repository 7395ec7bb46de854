import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from modframe import algebra as alg
from modframe.algebra import DEFAULT_TOL, Status, ToleranceConfig
from modframe.errors import DomainError, InputError

from conftest import crandn


def random_hermitian(rng, n):
    X = crandn(rng, n, n)
    return (X + X.conj().T) / 2


def test_is_psd_dominant_diagonal():
    v = alg.is_psd(np.array([[2.0, 1.0], [1.0, 2.0]]))
    assert v.status is Status.CERTIFIED
    assert v.margin == pytest.approx(1.0)


def test_is_psd_reflection_witness():
    v = alg.is_psd(np.array([[1.0, 2.0], [2.0, 1.0]]))
    assert v.falsified
    assert v.margin == pytest.approx(-1.0)
    w = v.witness / v.witness[0]
    assert np.allclose(w, [1, -1])
    assert np.linalg.norm(v.witness) == pytest.approx(1.0)


@pytest.mark.parametrize("b,c", [(2, 3), (1j, -0.5), (0, 0), (3 - 2j, 1e-3)])
def test_rank_one_gram_is_certified(b, c):
    G = np.array([[abs(b) ** 2, b * np.conj(c)], [c * np.conj(b), abs(c) ** 2]])
    assert alg.is_psd(G).certified


def test_undetermined_band():
    v = alg.is_psd(np.diag([1.0, -1e-7]))
    assert v.status is Status.UNDETERMINED


def test_non_hermitian_is_not_certified():
    v = alg.is_psd(np.array([[1.0, 1e-3], [0.0, 1.0]]))
    assert not v.certified


def test_is_psd_rejects_non_square():
    with pytest.raises(InputError):
        alg.is_psd(np.ones((2, 3)))


def test_loewner_examples():
    I = np.eye(2)
    assert alg.loewner_leq(np.zeros((2, 2)), I).certified
    assert alg.loewner_leq(I, I).certified
    G = np.array([[4.0, 6.0], [6.0, 9.0]])
    # oracle: Y - X = 1e-4 G, whose eigenvalues are 0 and 1.3e-3
    assert np.all(np.linalg.eigvalsh(1e-4 * G) >= -1e-15)
    assert alg.loewner_leq(G / 3, (1 / 3 + 1e-4) * G).certified


def test_loewner_errors():
    with pytest.raises(InputError):
        alg.loewner_leq(np.array([[0, 1], [0, 0]]), np.eye(2))
    with pytest.raises(InputError):
        alg.loewner_leq(np.eye(2), np.eye(3))


def test_sqrt_examples(rng):
    assert np.allclose(alg.sqrt_psd(np.eye(3)), np.eye(3))
    assert np.allclose(alg.sqrt_psd(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]))
    for _ in range(20):
        Y = crandn(rng, 4, 4)
        X = Y @ Y.conj().T
        R = alg.sqrt_psd(X)
        assert alg.is_psd(R).certified
        assert np.linalg.norm(R @ R - X, 2) <= 1e-10 * np.linalg.norm(X, 2)


def test_sqrt_rejects_indefinite():
    with pytest.raises(DomainError):
        alg.sqrt_psd(np.diag([1.0, -1.0]))


def test_sqrt_of_square_is_modulus(rng):
    for _ in range(20):
        X = random_hermitian(rng, 3)
        w, V = np.linalg.eigh(X)
        absX = (V * np.abs(w)) @ V.conj().T
        assert np.linalg.norm(alg.sqrt_psd(X @ X) - absX, 2) <= 1e-8 * max(1, np.abs(w).max())
        assert np.allclose(alg.modulus(X), absX, atol=1e-8)


def test_extremal_eigs():
    lo, hi, _ = alg.extremal_eigs(np.eye(2))
    assert (lo, hi) == pytest.approx((1, 1))
    lo, hi, _ = alg.extremal_eigs(np.diag([2.0, 5.0]))
    assert (lo, hi) == pytest.approx((2, 5))
    lo, hi, (vmin, vmax) = alg.extremal_eigs(np.array([[2.0, 1.0], [1.0, 2.0]]))
    roots = np.sort(np.roots([1, -4, 3]))  # characteristic polynomial
    assert (lo, hi) == pytest.approx(tuple(roots))
    assert np.linalg.norm(vmin) == pytest.approx(1)
    with pytest.raises(InputError):
        alg.extremal_eigs(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_psd_verdict_matches_characteristic_roots(rng):
    cfg = DEFAULT_TOL
    for k in range(1000):
        n = 1 + k % 3
        X = random_hermitian(rng, n)
        if k % 4 == 0:
            X = X @ X  # make a share of them PSD
        roots = np.roots(np.poly(X)).real
        s = max(1.0, np.linalg.norm(X, 2))
        want = roots.min() >= -cfg.tol_psd * s
        assert alg.is_psd(X).certified == want


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(-5, 5), min_size=1, max_size=4), st.integers(0, 2 ** 31))
def test_psd_verdict_follows_spectrum(eigs, seed):
    rng = np.random.default_rng(seed)
    n = len(eigs)
    Q, _ = np.linalg.qr(crandn(rng, n, n))
    X = (Q * np.array(eigs)) @ Q.conj().T
    X = (X + X.conj().T) / 2
    s = max(1.0, max(abs(e) for e in eigs))
    lam = min(eigs)
    v = alg.is_psd(X)
    if lam >= 1e-12 * s:
        assert v.certified
    elif lam < -2e-6 * s:
        assert v.falsified
        assert v.witness.conj() @ X @ v.witness == pytest.approx(lam, abs=1e-9 * s)


def test_loewner_transitivity(rng):
    for _ in range(50):
        X = random_hermitian(rng, 3)
        P1, P2 = crandn(rng, 3, 3), crandn(rng, 3, 3)
        Y = X + P1 @ P1.conj().T
        Z = Y + P2 @ P2.conj().T
        assert alg.loewner_leq(X, Y).certified and alg.loewner_leq(Y, Z).certified
        assert alg.loewner_leq(X, Z, DEFAULT_TOL.scaled(2)).certified
        assert alg.loewner_leq(X, X).certified


def test_adjoint_identities(rng):
    for _ in range(20):
        X, Y = crandn(rng, 3, 3), crandn(rng, 3, 3)
        assert np.array_equal(alg.adjoint(alg.adjoint(X)), X)
        assert np.max(np.abs(alg.adjoint(X @ Y) - alg.adjoint(Y) @ alg.adjoint(X))) <= 1e-12 * max(1, np.abs(X @ Y).max())


def test_inverse(rng):
    X = crandn(rng, 3, 3)
    Xi = alg.inverse(X)
    assert np.linalg.norm(X @ Xi - np.eye(3), 2) <= 1e-8
    with pytest.raises(DomainError):
        alg.inverse(np.diag([1.0, 0.0]))


def test_plumbing():
    assert np.allclose(alg.add(np.eye(2), np.eye(2)), 2 * np.eye(2))
    assert np.allclose(alg.multiply(np.diag([1, 2]), np.diag([3, 4])), np.diag([3, 8]))
    assert alg.opnorm(np.diag([3.0, -4.0])) == pytest.approx(4)
    with pytest.raises(InputError):
        alg.add(np.eye(2), np.eye(3))
    with pytest.raises(InputError):
        alg.as_element(np.array([[np.nan]]))


def test_tolerance_config(monkeypatch):
    with pytest.raises(InputError):
        ToleranceConfig(tol_psd=1e-3, tol_falsify=1e-4)
    with pytest.raises(InputError):
        ToleranceConfig(tol_h=-1.0)
    monkeypatch.setenv("MODFRAME_TOL_SCALE", "10")
    cfg = ToleranceConfig.from_env()
    assert cfg.tol_psd == pytest.approx(1e-8) and cfg.tol_falsify == pytest.approx(1e-5)
    monkeypatch.setenv("MODFRAME_TOL_SCALE", "abc")
    with pytest.raises(InputError):
        ToleranceConfig.from_env()
    monkeypatch.setenv("MODFRAME_TOL_SCALE", "-1")
    with pytest.raises(InputError):
        ToleranceConfig.from_env()


def test_max_lower_scalar():
    L = np.diag([1.0, 2.0])
    H = np.diag([3.0, 3.0])
    assert alg.max_lower_scalar(L, H) == pytest.approx(1.5)
    assert alg.max_lower_scalar(np.zeros((2, 2)), H) == np.inf
    assert alg.max_lower_scalar(np.diag([1.0, 1.0]), np.diag([1.0, 0.0])) == 0.0
    assert alg.max_lower_scalar(np.diag([1.0, 0.0]), np.diag([2.0, 0.0])) == pytest.approx(2.0)
