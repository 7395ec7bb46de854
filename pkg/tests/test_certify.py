import math

import numpy as np
import pytest

from modframe import certify as ct
from modframe import modules as md
from modframe.errors import DomainError, InputError
from modframe.frame import OperatorFamily, build_paper_example, identity_instance
from modframe.instances import generate
from modframe.modules import ModuleSpace

from conftest import crandn


def scaled_instance(R):
    """Single node ``Lambda = X -> X R^(1/2)`` on a free module, so ``S = X -> X R``."""
    n = 2
    d = R.shape[0] // n
    H = ModuleSpace.free(d, n)
    w, V = np.linalg.eigh(R)
    L = md.right_multiplication(H, H, (V * np.sqrt(w)) @ V.conj().T)
    I = md.identity(H)
    return identity_instance(n, d).with_(family=OperatorFamily.table([L]), C=I, Cprime=I, K=I)


def test_upper_examples():
    assert ct.certify_upper(identity_instance(), 1.0).certified
    inst = build_paper_example()
    assert ct.certify_upper(inst, 1 / 3).certified
    v = ct.certify_upper(inst, 1 / 3 - 1e-3)
    assert v.falsified
    c = v.witness.coords
    assert abs(c[1]) == pytest.approx(1.0, abs=1e-8)
    assert np.allclose(np.delete(c, 1), 0, atol=1e-8)


def test_lower_examples():
    inst = build_paper_example()
    assert ct.certify_lower_K(inst, 1 / 3).certified
    plain = inst.with_(K=md.identity(inst.space))
    for A in (1e-4, 1e-2, 0.1, 1.0):
        v = ct.certify_lower_K(plain, A)
        assert v.falsified
        c = v.witness.coords
        assert abs(c[1]) <= 1e-8 * np.linalg.norm(c) and abs(c[2]) <= 1e-8 * np.linalg.norm(c)
    two = scaled_instance(2 * np.eye(2))
    assert ct.certify_lower_K(two, 2.0).certified
    assert ct.certify_lower_K(two, 2 + 1e-3).falsified


def test_bound_arguments():
    inst = build_paper_example()
    with pytest.raises(InputError):
        ct.certify_upper(inst, 0.0)
    with pytest.raises(InputError):
        ct.certify_lower_K(inst, -1.0)


def test_optimal_bounds_examples():
    br = ct.optimal_bounds(identity_instance())
    assert (br.A_opt, br.B_opt) == pytest.approx((1, 1))
    assert br.tight and br.parseval
    br = ct.optimal_bounds(build_paper_example())
    assert br.B_opt == pytest.approx(1 / 3, abs=1e-12)
    assert br.A_opt == pytest.approx(1 / 3, abs=1e-12)
    assert br.B_K == pytest.approx(1 / 3, abs=1e-12)
    assert br.tight and br.exact and br.frame_class == "ControlledKgFrame"


def test_diag_blocks_against_bisection():
    inst = scaled_instance(np.diag([1.0, 1.0, 4.0, 4.0]))
    br = ct.optimal_bounds(inst)
    assert br.A_opt == pytest.approx(1.0) and br.B_opt == pytest.approx(4.0)
    assert ct.bisect_lower(inst) == pytest.approx(1.0, rel=1e-6)
    assert ct.bisect_upper(inst) == pytest.approx(4.0, rel=1e-6)
    assert br.frame_class == "ControlledGFrame" and not br.tight


def test_monotone_ladders():
    for seed in range(5):
        inst = generate(seed, "free_commuting").instance
        br = ct.optimal_bounds(inst)
        Bs = br.B_opt * np.linspace(0.5, 2.0, 10)
        up = [ct.certify_upper(inst, B).certified for B in Bs]
        assert up == sorted(up)  # False ... False True ... True
        if br.A_opt and math.isfinite(br.A_opt):
            As = br.A_opt * np.linspace(0.2, 2.0, 10)
            low = [ct.certify_lower_K(inst, A).certified for A in As]
            assert low == sorted(low, reverse=True)


def test_optimality_sandwich():
    for seed in range(10):
        inst = generate(seed, "free_commuting").instance
        br = ct.optimal_bounds(inst)
        assert ct.certify_upper(inst, br.B_opt * (1 + 1e-3)).certified
        assert ct.certify_upper(inst, br.B_opt * (1 - 1e-3)).falsified
        if br.A_opt is not None and 0 < br.A_opt < math.inf:
            assert ct.certify_lower_K(inst, br.A_opt * (1 - 1e-3)).certified
            assert ct.certify_lower_K(inst, br.A_opt * (1 + 1e-3)).falsified
        assert set(br.consistency.values()) <= {"Certified"}


def test_a_opt_bounded_by_b_opt():
    for seed in range(20):
        for profile in ("free_commuting", "range_included"):
            inst = generate(seed, profile).instance
            br = ct.optimal_bounds(inst)
            if br.A_opt is not None and math.isfinite(br.A_opt):
                # A <K*f, K*f> <= Q(f) <= B_K <K*f, K*f>
                assert br.A_opt <= br.B_K * (1 + 1e-8)


def test_escape_from_range_drops_a_opt():
    inst = scaled_instance(np.diag([1.0, 1.0, 0.0, 0.0]))
    br = ct.optimal_bounds(inst)
    assert br.A_opt is None and br.frame_class == "BesselOnly"
    zero = inst.with_(K=md.zero_operator(inst.space))
    assert ct.optimal_bounds(zero).A_opt == math.inf


def test_douglas_examples(rng):
    F = ModuleSpace.free(2, 2)
    T = md.right_multiplication(F, F, crandn(rng, 4, 4))
    r = ct.douglas_check(T, T)
    assert r.in_range and r.lambda_min == pytest.approx(1.0, rel=1e-8)
    assert np.allclose(r.D.matrix, np.eye(8), atol=1e-8)
    F1 = ModuleSpace.free(1, 2)
    P = md.right_multiplication(F1, F1, np.diag([1.0, 0.0]))
    Q = md.right_multiplication(F1, F1, np.diag([0.0, 1.0]))
    assert not ct.douglas_check(P, Q).in_range
    for _ in range(10):
        T = md.right_multiplication(F, F, crandn(rng, 4, 2) @ crandn(rng, 2, 4))
        D = md.right_multiplication(F, F, crandn(rng, 4, 4))
        r = ct.douglas_check(T, T @ D)
        assert r.in_range and r.residual <= 1e-8 * max(1, (T @ D).norm())
        assert r.lambda_min <= D.norm() ** 2 * (1 + 1e-8)


def test_douglas_matches_closed_form(rng):
    F = ModuleSpace.free(2, 2)
    for _ in range(20):
        T = md.right_multiplication(F, F, crandn(rng, 4, 4))
        Tp = md.right_multiplication(F, F, crandn(rng, 4, 4))
        want = np.linalg.norm(np.linalg.solve(T.matrix, Tp.matrix), 2) ** 2
        assert ct.douglas_check(T, Tp).lambda_min == pytest.approx(want, rel=1e-6)


def test_controller_spectral_data(rng):
    F = ModuleSpace.free(2, 2)
    I = md.identity(F)
    assert ct.controller_spectral_data(2 * I) == pytest.approx((2, 2))
    assert ct.controller_spectral_data(0.7 * I) == pytest.approx((0.7, 0.7))
    X = crandn(rng, 4, 4)
    Pm = X @ X.conj().T + 0.1 * np.eye(4)
    w, V = np.linalg.eigh(Pm)
    p = [0.3, 0.5, 0.2]  # increasing on [0, inf)
    C = md.right_multiplication(F, F, (V * np.polynomial.polynomial.polyval(w, p)) @ V.conj().T)
    lo, hi = ct.controller_spectral_data(C)
    assert (lo, hi) == pytest.approx(tuple(np.polynomial.polynomial.polyval([w[0], w[-1]], p)))
    with pytest.raises(DomainError):
        ct.controller_spectral_data(-1 * I)


def test_pattern_bounds_report_gaps():
    for seed in range(10):
        inst = generate(seed, "pattern_example_like").instance
        br = ct.optimal_bounds(inst)
        assert br.route == "pattern-certificate"
        assert br.exact == (not br.gaps)
        for lo, hi in br.gaps.values():
            assert lo <= hi * (1 + 1e-9)
        assert br.consistency.get("upper_at_B_opt_plus", "Certified") == "Certified"


def test_broken_instance_rejected():
    inst = identity_instance(2, 1)
    F = inst.space
    skew = md.right_multiplication(F, F, np.array([[1.0, 1.0], [0.0, 1.0]]))
    with pytest.raises(DomainError):
        ct.optimal_bounds(inst.with_(C=skew))


def test_example_scaled_parseval():
    br = ct.optimal_bounds(build_paper_example(3, 1))
    assert br.A_opt == pytest.approx(1, abs=1e-12) and br.parseval
