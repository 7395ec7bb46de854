import numpy as np
import pytest

from modframe import modules as md
from modframe.algebra import Status
from modframe.errors import DomainError, InputError, NotAdjointable
from modframe.frame import EXAMPLE_KEEP, EXAMPLE_PATTERN, build_paper_example, integral_form_gram
from modframe.modules import ModuleSpace, ModuleVector

from conftest import crandn

H = ModuleSpace.pattern(2, 4, EXAMPLE_PATTERN)  # coordinates (a, b, c, d)


def example_M(a, b, c, d):
    return ModuleVector(H, [a, b, c, d])


def test_example_ambient_layout():
    assert np.array_equal(example_M(1, 2, 3, 4).matrix, [[1, 2, 0, 0], [0, 3, 0, 4]])


def test_inner_examples():
    F = ModuleSpace.free(2, 2)
    e1 = F.a_basis()[0]
    assert np.allclose(F.inner(e1, e1), np.eye(2))
    M = example_M(1, 2, 3, 4)
    assert np.allclose(md.inner_product(M, M), [[5, 6], [6, 25]])
    K = md.mask_operator(H, EXAMPLE_KEEP)
    KM = K(M)
    assert np.allclose(md.inner_product(KM, KM), [[4, 6], [6, 9]])


def test_inner_space_mismatch():
    with pytest.raises(InputError):
        md.inner_product(ModuleVector(ModuleSpace.free(1, 2), np.zeros(4)), example_M(1, 0, 0, 0))


def test_inner_axioms(rng):
    for space in (ModuleSpace.free(2, 2), ModuleSpace.free(3, 1), H):
        for _ in range(20):
            x, y, z = space.random_coords(rng, 3)
            a = space.random_scalar_action(rng)
            assert np.allclose(space.inner(x, y), space.inner(y, x).conj().T)
            w = np.linalg.eigvalsh(space.inner(x, x))
            assert w[0] >= -1e-12 * max(1, w[-1])
            lhs = space.inner(space.left_act(a, x) + y, z)
            rhs = a @ space.inner(x, z) + space.inner(y, z)
            assert np.allclose(lhs, rhs)


def test_pattern_validation():
    with pytest.raises(InputError):
        ModuleSpace.pattern(2, 4, [(3, 1)])
    with pytest.raises(InputError):
        ModuleSpace.pattern(2, 4, [])
    with pytest.raises(InputError):
        ModuleSpace.free(0, 2)


def test_example_stabilizer():
    # rows (a b 0 0) and (0 c 0 d): neither support contains the other
    assert np.array_equal(H.stabilizer_mask(), np.eye(2, dtype=bool))
    with pytest.raises(DomainError):
        H.left_act(np.array([[1, 1], [0, 1]]), [1, 2, 3, 4])


def test_adjoint_examples(rng):
    F = ModuleSpace.free(1, 2)
    I = md.identity(F)
    assert np.allclose(md.adjoint(I).matrix, I.matrix)
    F2 = ModuleSpace.free(2, 2)
    Dg = np.diag(rng.uniform(0.5, 2, 4))
    T = md.right_multiplication(F2, F2, Dg)
    assert np.allclose(md.adjoint(T).matrix, T.matrix)
    assert T.adjointable_checked
    L = build_paper_example().ops()[0]
    assert np.allclose(md.adjoint(L).matrix, L.matrix)


def test_right_multiplication_adjoint_is_conjugate_factor(rng):
    F = ModuleSpace.free(2, 2)
    for _ in range(10):
        R = crandn(rng, 4, 4)
        T = md.right_multiplication(F, F, R)
        X, Y = F.random_coords(rng, 2)
        # oracle: <XR, Y> = X R Y* = <X, Y R*>
        lhs = F.embed(X) @ R @ F.embed(Y).conj().T
        Ts = md.adjoint(T)
        assert np.allclose(F.inner(X, Ts(Y)), lhs)
        assert np.allclose(md.adjoint(Ts).matrix, T.matrix)


def test_not_adjointable():
    F = ModuleSpace.free(1, 2)
    T = md.left_multiplication(F, np.array([[0, 1], [0, 0]]))
    with pytest.raises(NotAdjointable) as exc:
        md.adjoint(T)
    assert exc.value.witness is not None


def test_verify_a_linear_examples(rng):
    F = ModuleSpace.free(1, 2)
    assert md.verify_a_linear(md.identity(F)).certified
    assert md.verify_a_linear(2.5 * md.identity(H)).certified
    a = np.array([[1.0, 1.0], [0.0, 2.0]])
    v = md.verify_a_linear(md.left_multiplication(F, a))
    assert v.falsified and v.witness is not None
    b, x = v.witness
    assert np.linalg.norm(a @ b - b @ a) > 0
    # central element is fine
    assert md.verify_a_linear(md.left_multiplication(F, 3 * np.eye(2))).certified


def test_flatten_positive_examples(rng):
    F = ModuleSpace.free(2, 2)
    v = md.flatten_positive_test(md.identity(F))
    assert v.certified
    assert np.allclose(md.block_matrix(md.operator_gram(F, md.identity(F))), np.eye(4))
    T = md.right_multiplication(F, F, np.diag([1, 1, -1, -1]))
    v = md.flatten_positive_test(T)
    assert v.falsified
    X = v.witness.matrix
    assert np.allclose(X[:, :2], 0) and np.linalg.norm(X[:, 2:]) > 0
    assert np.linalg.eigvalsh(v.violation)[0] < 0
    for _ in range(10):
        R = crandn(rng, 4, 4)
        P = md.right_multiplication(F, F, R @ R.conj().T)
        assert md.flatten_positive_test(P).status is Status.CERTIFIED
    with pytest.raises(InputError):
        md.flatten_positive_test(md.identity(H))


def test_flatten_verdict_agrees_with_brute_force(rng):
    F = ModuleSpace.free(2, 2)
    for _ in range(30):
        X = crandn(rng, 4, 4)
        R = (X + X.conj().T) / 2
        T = md.right_multiplication(F, F, R)
        G = md.operator_gram(F, T)
        v = md.flatten_positive_test(T)
        # oracle: sample sum_ij a_i G_ij a_j* over random algebra coefficients
        worst = min(np.linalg.eigvalsh(md.free_form_value(G, ModuleVector(F, F.random_coords(rng))))[0]
                    for _ in range(200))
        if v.certified:
            assert worst >= -1e-9
        else:
            assert v.falsified
            assert np.linalg.eigvalsh(md.free_form_value(G, v.witness))[0] < 0


def test_form_compare_examples():
    inst = build_paper_example()
    G = integral_form_gram(inst)
    assert md.form_compare(G, G, H).certified
    Gid = md.operator_gram(H, md.identity(H))
    v = md.form_compare(0.1 * Gid, G, H)
    assert v.falsified
    a, b, c, d = v.witness.coords
    assert abs(b) <= 1e-8 and abs(c) <= 1e-8 and abs(a) + abs(d) > 0
    assert md.form_compare(G, (1 / 3 + 1e-3) * 3 * G, H).certified
    with pytest.raises(InputError):
        md.form_compare(G[:2, :2], G, H)


def test_form_compare_never_falsifies_true_order(rng):
    for _ in range(20):
        X = crandn(rng, 4, 4)
        T = md.ModuleOperator(H, H, X)
        lo = md.form_gram(H, [(1.0, T, T)])
        hi = lo + md.operator_gram(H, md.identity(H)) * 0.5
        v = md.form_compare(lo, hi, H, seed=1)
        assert v.certified
        v = md.form_compare(hi, lo, H, seed=1)
        assert v.falsified
        c = v.witness.coords
        Q = np.einsum("i,j,ijrs->rs", c, np.conj(c), lo - hi)
        assert np.linalg.eigvalsh((Q + Q.conj().T) / 2)[0] < 0


def test_surjective_operator_is_bounded_below(rng):
    F = ModuleSpace.free(2, 2)
    for _ in range(10):
        R = crandn(rng, 4, 4)
        T = md.right_multiplication(F, F, R)
        lam = np.linalg.eigvalsh((T @ T.H).matrix)[0]
        assert lam == pytest.approx(np.linalg.svd(R, compute_uv=False)[-1] ** 2, rel=1e-8)
        assert lam > 0


def test_operator_algebra(rng):
    F = ModuleSpace.free(2, 2)
    A = md.right_multiplication(F, F, crandn(rng, 4, 4))
    B = md.right_multiplication(F, F, crandn(rng, 4, 4))
    assert np.allclose((A @ B).H.matrix, (B.H @ A.H).matrix)
    assert np.allclose((A + B - A).matrix, B.matrix)
    assert np.allclose(A.power(2).matrix, (A @ A).matrix)
    P = A @ A.H
    S = md.operator_sqrt(P)
    assert np.allclose((S @ S).matrix, P.matrix)
    assert np.allclose((md.operator_inverse(A) @ A).matrix, np.eye(8), atol=1e-8)
    with pytest.raises(InputError):
        A @ md.identity(H)


def test_l2_section():
    F = ModuleSpace.free(1, 2)
    y = md.L2Section(F, [0.5, 0.5], [[1, 0, 0, 1], [0, 2, 0, 0]])
    G = md.l2_inner(y, y)
    assert np.allclose(G, 0.5 * np.eye(2) + 0.5 * np.diag([4, 0]))
    assert md.l2_norm(y) == pytest.approx(np.sqrt(2.5))
    with pytest.raises(InputError):
        md.L2Section(F, [1.0], np.zeros((2, 4)))
