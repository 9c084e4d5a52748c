import numpy as np
import pytest

import quatrange as qr
from quatrange import Quaternion

from conftest import random_qmatrix, random_unit_qvector

I = Quaternion.i
J = Quaternion.j
K = Quaternion.k


def test_adjoint_involution():
    T = random_qmatrix(1, 4)
    assert T.adjoint().adjoint().isclose(T)


def test_adjoint_is_conjugate_transpose():
    T = qr.QMatrix.from_quaternions([[I, J], [Quaternion(1.0), K]])
    A = T.adjoint()
    assert A.entry(0, 1).isclose(Quaternion(1.0))
    assert A.entry(1, 0).isclose(-J)


def test_apply_matches_entrywise_products():
    T = random_qmatrix(2, 3)
    x = random_unit_qvector(3, 3)
    y = T.apply(x)
    for i in range(3):
        acc = Quaternion()
        for j in range(3):
            acc = acc + T.entry(i, j) * x.entry(j)
        assert y.entry(i).isclose(acc, tol=1e-12)


def test_matmul_matches_apply_composition():
    A = random_qmatrix(4, 3)
    B = random_qmatrix(5, 3)
    x = random_unit_qvector(6, 3)
    lhs = (A @ B).apply(x)
    rhs = A.apply(B.apply(x))
    assert np.allclose(lhs.arr, rhs.arr, atol=1e-12)


def test_real_rep_multiplicative():
    for seed in range(10):
        A = random_qmatrix(seed, 3)
        B = random_qmatrix(seed + 50, 3)
        lhs = (A @ B).real_rep()
        rhs = A.real_rep() @ B.real_rep()
        assert np.max(np.abs(lhs - rhs)) <= 1e-10


def test_real_rep_action_matches_apply():
    A = random_qmatrix(7, 3)
    x = random_unit_qvector(8, 3)
    vec = x.arr.reshape(-1)
    out = A.real_rep() @ vec
    assert np.allclose(out.reshape(3, 4), A.apply(x).arr, atol=1e-12)


def test_complex_rep_multiplicative_and_adjoint():
    A = random_qmatrix(9, 3)
    B = random_qmatrix(10, 3)
    assert np.allclose((A @ B).complex_rep(), A.complex_rep() @ B.complex_rep(),
                       atol=1e-10)
    assert np.allclose(A.adjoint().complex_rep(), A.complex_rep().conj().T,
                       atol=1e-12)


def test_frobenius():
    T = qr.QMatrix.diag([Quaternion(3.0), Quaternion(0.0, 4.0, 0.0, 0.0)])
    assert T.frobenius() == pytest.approx(5.0)


def test_block_split():
    assert qr.QMatrix.diag([I, J, K]).block_split() == 0
    block = random_qmatrix(11, 2)
    T = qr.QMatrix.block_diag(block, np.zeros((3, 4)))
    split = T.block_split()
    assert split <= 2
    full = random_qmatrix(12, 4)
    assert full.block_split() == 4


def test_block_diag_layout():
    block = qr.QMatrix.diag([Quaternion(-1, 1, 0, 0), Quaternion(1, 1, 0, 0)])
    tail = np.array([[0.0, 0.5, 0.0, 0.0]])
    T = qr.QMatrix.block_diag(block, tail)
    assert T.n == 3
    assert T.entry(2, 2).isclose(Quaternion(0.0, 0.5, 0.0, 0.0))
    assert T.entry(0, 2).isclose(Quaternion())


# -- the quadratic pencil --------------------------------------------------------------


def test_delta_kills_matching_diagonal():
    T = qr.QMatrix.diag([I])
    D = qr.delta(T, I)
    assert np.max(np.abs(D.arr)) <= 1e-15


def test_delta_scalar_example():
    T = qr.QMatrix.identity(2)
    D = qr.delta(T, Quaternion(2.0))
    assert D.isclose(qr.QMatrix.identity(2), tol=1e-14)


def test_delta_mixed_imaginary_units():
    # each diagonal unit u satisfies u^2 + 1 = 0
    T = qr.QMatrix.diag([I, J])
    D = qr.delta(T, K)
    assert np.max(np.abs(D.arr)) <= 1e-15


def test_delta_constant_on_similarity_classes():
    T = random_qmatrix(20, 3)
    q = Quaternion(0.3, 1.2, -0.4, 0.7)
    base = qr.delta(T, q)
    # axis units permute coordinates exactly
    for u in (I, J, K):
        rotated = u.conj() * q * u
        assert np.array_equal(qr.delta(T, rotated).arr, base.arr)
    rng = np.random.default_rng(4)
    u = Quaternion(*rng.standard_normal(4)).normalized()
    rotated = u.conj() * q * u
    assert qr.delta(T, rotated).isclose(base, tol=1e-12 * (1 + T.frobenius() ** 2))
