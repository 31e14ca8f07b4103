import numpy as np
import pytest

from l1fit.linalg import (
    elemdiv,
    hadamard,
    matrix_rank,
    negative_part,
    norm1,
    norm2,
    norm_inf,
    nullspace_basis,
    pcg,
    pinv,
    positive_part,
    soft,
    spectral_norm,
)


def test_matmul_contract():
    eye = np.eye(2)
    assert np.array_equal(eye @ eye, eye)
    assert np.array_equal(np.array([[1.0, 2.0], [3.0, 4.0]]) @ np.array([[1.0], [1.0]]),
                          np.array([[3.0], [7.0]]))
    A = np.arange(6.0).reshape(2, 3)
    assert np.array_equal(A @ np.zeros((3, 2)), np.zeros((2, 2)))
    with pytest.raises(ValueError):
        A @ np.zeros((2, 2))


def test_norms_and_parts():
    assert norm1([1.0, -2.0, 3.0]) == 6.0
    assert norm2([3.0, 4.0]) == 5.0
    assert norm_inf([1.0, -7.0, 2.0]) == 7.0
    assert norm_inf([]) == 0.0
    assert np.array_equal(positive_part([1.0, -2.0]), [1.0, 0.0])
    assert np.array_equal(negative_part([1.0, -2.0]), [0.0, 2.0])
    assert np.array_equal(hadamard([1.0, 2.0], [3.0, 4.0]), [3.0, 8.0])


def test_part_decomposition_identities():
    rng = np.random.default_rng(0)
    for _ in range(20):
        v = rng.standard_normal(9)
        vp, vn = positive_part(v), negative_part(v)
        assert np.all(vp >= 0.0) and np.all(vn >= 0.0)
        assert np.allclose(vp - vn, v)
        assert norm1(v) == pytest.approx(float(np.sum(vp + vn)))


def test_elemdiv_zero_raises():
    with pytest.raises(ZeroDivisionError):
        elemdiv([1.0, 2.0], [1.0, 0.0])
    assert np.allclose(elemdiv([2.0, 9.0], [2.0, 3.0]), [1.0, 3.0])


def test_hadamard_shape_mismatch():
    with pytest.raises(ValueError):
        hadamard([1.0, 2.0], [1.0, 2.0, 3.0])


def test_soft_examples():
    assert soft(3.0, 1.0) == 2.0
    assert soft(-3.0, 1.0) == -2.0
    assert soft(0.5, 1.0) == 0.0
    assert np.array_equal(soft(np.array([3.0, -0.5]), 1.0), [2.0, 0.0])
    with pytest.raises(ValueError):
        soft(1.0, -0.1)


def test_soft_non_expansive():
    rng = np.random.default_rng(1)
    for _ in range(200):
        u, v = rng.standard_normal(2) * 3.0
        a = abs(rng.standard_normal())
        assert abs(soft(u, a) - soft(v, a)) <= abs(u - v) + 1e-15


def test_pinv_examples():
    assert np.allclose(pinv(np.eye(3)), np.eye(3))
    assert np.allclose(pinv(np.array([[3.0], [4.0]])), [[3.0 / 25.0, 4.0 / 25.0]])
    assert np.array_equal(pinv(np.zeros((2, 3))), np.zeros((3, 2)))
    with pytest.raises(ValueError):
        pinv(np.zeros((0, 2)))


def test_pinv_penrose_conditions():
    rng = np.random.default_rng(2)
    shapes = [(3, 3), (5, 2), (2, 5), (8, 8), (8, 4), (4, 8), (6, 6)]
    for m, n in shapes:
        A = rng.standard_normal((m, n))
        if m == n and m >= 6:
            A[:, -1] = A[:, 0]  # exercise the rank-deficient branch
        G = pinv(A)
        tol = 1e-9 * (1.0 + np.max(np.abs(A)))
        assert np.max(np.abs(A @ G @ A - A)) <= tol
        assert np.max(np.abs(G @ A @ G - G)) <= tol
        assert np.max(np.abs((A @ G).T - A @ G)) <= tol
        assert np.max(np.abs((G @ A).T - G @ A)) <= tol


def test_nullspace_examples():
    N = nullspace_basis(np.array([[1.0, 1.0]]))
    assert N.shape == (2, 1)
    assert np.allclose(np.abs(N[:, 0]), [1.0 / np.sqrt(2.0)] * 2)
    assert nullspace_basis(np.eye(2)).shape == (2, 0)
    # zero-row matrix: the whole space
    assert np.allclose(nullspace_basis(np.zeros((0, 3))), np.eye(3))


def test_nullspace_orthonormal_and_annihilating():
    rng = np.random.default_rng(3)
    for m, n in [(2, 4), (3, 7), (5, 6), (4, 4)]:
        A = rng.standard_normal((m, n))
        N = nullspace_basis(A)
        assert N.shape[1] == n - matrix_rank(A)
        if N.shape[1]:
            assert np.max(np.abs(A @ N)) <= 1e-10
            assert np.max(np.abs(N.T @ N - np.eye(N.shape[1]))) <= 1e-10


def test_pcg_identity_and_exact():
    b = np.array([1.0, -2.0, 3.0])
    assert np.allclose(pcg(np.eye(3), b, maxiter=1), b)
    x = pcg(np.array([[4.0, 1.0], [1.0, 3.0]]), np.array([1.0, 2.0]), np.eye(2))
    assert np.allclose(x, [1.0 / 11.0, 7.0 / 11.0])


def test_pcg_perfect_preconditioner_one_iteration():
    rng = np.random.default_rng(4)
    B = rng.standard_normal((6, 6))
    H = B @ B.T + 6.0 * np.eye(6)
    g = rng.standard_normal(6)
    x = pcg(H, g, P=H, maxiter=1, tol=1e-12)
    assert norm2(H @ x - g) <= 1e-12 * norm2(g)


def test_pcg_matches_direct_solve():
    rng = np.random.default_rng(5)
    for dim in (5, 12, 20):
        B = rng.standard_normal((dim, dim))
        H = B @ B.T + dim * np.eye(dim)
        g = rng.standard_normal(dim)
        x = pcg(H, g, tol=1e-14)
        assert norm2(x - np.linalg.solve(H, g)) <= 1e-8 * norm2(np.linalg.solve(H, g))


def test_pcg_rejects_asymmetric():
    with pytest.raises(ValueError):
        pcg(np.array([[1.0, 2.0], [0.0, 1.0]]), np.ones(2))


def test_spectral_norm_matches_svd():
    rng = np.random.default_rng(6)
    for shape in [(4, 9), (9, 4), (6, 6)]:
        A = rng.standard_normal(shape)
        assert spectral_norm(A) == pytest.approx(np.linalg.norm(A, 2), rel=1e-8)
    assert spectral_norm(np.zeros((2, 2))) == 0.0
