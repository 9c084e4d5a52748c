import math

import numpy as np
import pytest

import quatrange as qr
from quatrange import Quaternion
from quatrange.essential import Tail
from quatrange.geometry import minkowski_sum, signed_inner_distance

from conftest import random_qmatrix, seeded_model_operator

I = Quaternion.i
J = Quaternion.j


class InverseTail(Tail):
    """s_n = i / n; limit class is the origin."""

    kind = "inverse"

    def _generate(self, count):
        out = np.zeros((count, 4))
        out[:, 1] = 1.0 / np.arange(1, count + 1)
        return out


# -- tails ------------------------------------------------------------------------


def test_constant_tail():
    t = qr.ConstantTail(Quaternion(2.0))
    assert np.allclose(t.prefix(5), [[2, 0, 0, 0]] * 5)


def test_periodic_tail():
    t = qr.PeriodicTail([I, -I])
    pref = t.prefix(4)
    assert np.allclose(pref[0], I.to_array())
    assert np.allclose(pref[1], (-I).to_array())
    assert np.allclose(pref[2], I.to_array())


def test_explicit_tail_repeats_last():
    t = qr.ExplicitTail([Quaternion(1.0), Quaternion(2.0)])
    assert np.allclose(t.prefix(4)[:, 0], [1.0, 2.0, 2.0, 2.0])


def test_rationals_tail_enumeration():
    t = qr.RationalsITail(0.5)
    pref = t.prefix(10)
    # starts 0, then -1/3, 1/3, -1/4, 1/4, ...
    assert np.allclose(pref[:5, 1], [0.0, -1 / 3, 1 / 3, -0.25, 0.25])
    big = t.prefix(5000)[:, 1]
    assert np.all(np.abs(big) < 0.5)
    # dense: every point of [-1/2, 1/2] is approached
    probes = np.linspace(-0.49, 0.49, 21)
    for p in probes:
        assert np.min(np.abs(big - p)) <= 2e-3
    # only the imaginary-i component is populated
    assert np.all(t.prefix(100)[:, [0, 2, 3]] == 0.0)


def test_decaying_periodic_rate():
    targets = [Quaternion(0.0, 0.5, 0, 0), Quaternion(1.0, 0.25, 0, 0)]
    t = qr.DecayingPeriodicTail(targets, amplitude=0.1)
    pref = t.prefix(1000)
    pts = qr.bild_points(pref)
    for k, target in enumerate(targets):
        idx = np.arange(k, 1000, 2)
        want = np.array(qr.csim(target).point())
        errs = np.linalg.norm(pts[idx] - want[None, :], axis=1)
        assert np.all(errs <= 0.1 / (idx + 1) + 1e-12)


# -- model operators and truncation --------------------------------------------------


def test_truncate_inverse_tail():
    M = qr.ModelOperator(qr.QMatrix.zeros(0), InverseTail(),
                         [qr.SimilaritySphere(0.0, 0.0)], bound=1.0)
    T = qr.truncate(M, 2)
    assert T.n == 2
    assert T.matrix.entry(0, 0).isclose(I)
    assert T.matrix.entry(1, 1).isclose(Quaternion(0, 0.5, 0, 0))


def test_truncate_remark(remark):
    T = qr.truncate(remark, 1)
    assert T.n == 3
    assert T.matrix.entry(0, 0).isclose(Quaternion(-1, 1, 0, 0))
    assert T.matrix.entry(1, 1).isclose(Quaternion(1, 1, 0, 0))
    assert T.matrix.entry(2, 2).isclose(Quaternion())  # first rational is 0
    assert T.block_size == 2


def test_truncate_constant():
    q = Quaternion(0.5, 0.5, 0, 0)
    M = qr.ModelOperator(qr.QMatrix.zeros(1), qr.ConstantTail(q),
                         [qr.csim(q)], bound=1.0)
    T = qr.truncate(M, 3)
    assert T.n == 4
    assert T.matrix.entry(0, 0).isclose(Quaternion())
    for k in (1, 2, 3):
        assert T.matrix.entry(k, k).isclose(q)


def test_truncate_requires_positive_section(remark):
    with pytest.raises(ValueError):
        qr.truncate(remark, 0)


def test_empty_limit_set_rejected():
    with pytest.raises(qr.ValidationError):
        qr.ModelOperator(qr.QMatrix.zeros(0), qr.ConstantTail(I), [], bound=1.0)


def test_validation_rejects_phantom_limit():
    M = qr.ModelOperator(qr.QMatrix.zeros(0), qr.ConstantTail(I),
                         [qr.SimilaritySphere(5.0, 0.0)], bound=1.5)
    with pytest.raises(qr.ValidationError):
        qr.essential_bild(M, n_check=4096)


def test_validation_rejects_bound_violation():
    M = qr.ModelOperator(qr.QMatrix.zeros(0), qr.ConstantTail(Quaternion(2.0)),
                         [qr.SimilaritySphere(2.0, 0.0)], bound=1.0)
    with pytest.raises(qr.ValidationError):
        qr.essential_bild(M)


# -- essential bild -------------------------------------------------------------------


def test_essential_bild_remark_exact(remark):
    poly = qr.essential_bild(remark)
    assert np.array_equal(poly, np.array([(0.0, -0.5), (0.0, 0.5)]))


def test_essential_bild_constant():
    M = qr.ModelOperator(qr.QMatrix.zeros(0), qr.ConstantTail(Quaternion(2.0)),
                         [qr.SimilaritySphere(2.0, 0.0)], bound=2.0)
    poly = qr.essential_bild(M)
    assert np.array_equal(poly, np.array([(2.0, 0.0)]))


def test_essential_bild_alternating_units():
    M = qr.ModelOperator(qr.QMatrix.zeros(0), qr.PeriodicTail([I, -I]),
                         [qr.SimilaritySphere(0.0, 1.0)], bound=1.0)
    poly = qr.essential_bild(M)
    assert np.array_equal(poly, np.array([(0.0, -1.0), (0.0, 1.0)]))


def test_essential_bild_ignores_block(remark):
    variants = [
        qr.ModelOperator(qr.QMatrix.zeros(0), remark.tail, remark.limit_set, 0.5),
        qr.ModelOperator(random_qmatrix(1, 3, scale=10.0), remark.tail,
                         remark.limit_set, 0.5),
        remark,
    ]
    polys = [qr.essential_bild(M) for M in variants]
    for p in polys[1:]:
        assert np.array_equal(polys[0], p)


def test_finite_sections_forget_contained_blocks():
    # blocks whose classes sit inside the essential polygon do not move the
    # support polygon of large sections
    targets = [Quaternion(0.0, 0.8, 0, 0), Quaternion(0.5, 0.3, 0, 0)]
    tail = qr.PeriodicTail(targets)
    limits = [qr.csim(t) for t in targets]
    inside_block = qr.QMatrix.diag([Quaternion(0.1, 0.2, 0.0, 0.0)])
    m1 = qr.ModelOperator(inside_block, tail, limits, bound=1.0)
    m2 = qr.ModelOperator(qr.QMatrix.zeros(0), tail, limits, bound=1.0)
    thetas = np.linspace(0, math.pi, 60)
    for N in (25, 100):
        h1 = qr.support_offsets(qr.truncate(m1, N).matrix, thetas)
        h2 = qr.support_offsets(qr.truncate(m2, N).matrix, thetas)
        assert np.max(np.abs(h1 - h2)) <= 1e-9


def test_adjoint_symmetry():
    M = seeded_model_operator(3)
    assert np.array_equal(qr.essential_bild(M), qr.essential_bild(M.adjoint()))


def test_affine_transform_exact():
    M = seeded_model_operator(4)
    poly = qr.essential_bild(M)
    for a, b in [(2.0, -1.0), (-1.5, 0.5)]:
        transformed = qr.essential_bild(M.affine(a, b))
        image = qr.convex_hull(np.stack([a * poly[:, 0] + b, a * poly[:, 1]], axis=1))
        assert np.array_equal(transformed, image)


def test_infinite_multiplicity_eigenvalue():
    q = Quaternion(0.3, 0.0, 1.2, 0.0)
    M = qr.ModelOperator(qr.QMatrix.zeros(0), qr.ConstantTail(q), [qr.csim(q)],
                         bound=abs(q))
    poly = qr.essential_bild(M)
    assert signed_inner_distance(poly, qr.csim(q).point()) >= 0.0


def test_sum_inclusion_synchronized_diagonals():
    p = Quaternion(0.2, 0.7, 0, 0)
    q = Quaternion(-0.4, 0.1, 0, 0)
    m1 = qr.ModelOperator(qr.QMatrix.zeros(0), qr.PeriodicTail([p]), [qr.csim(p)],
                          bound=1.0)
    m2 = qr.ModelOperator(qr.QMatrix.zeros(0), qr.PeriodicTail([q]), [qr.csim(q)],
                          bound=1.0)
    msum = qr.ModelOperator(qr.QMatrix.zeros(0), qr.PeriodicTail([p + q]),
                            [qr.csim(p + q)], bound=2.0)
    big = minkowski_sum(qr.essential_bild(m1), qr.essential_bild(m2))
    for v in qr.essential_bild(msum):
        assert signed_inner_distance(big, v) >= -1e-9


def test_block_diagonal_unitary_invariance():
    M = seeded_model_operator(6)
    rng = np.random.default_rng(60)

    class RotatedTail(Tail):
        kind = "rotated"

        def __init__(self, base, seed):
            super().__init__()
            self.base = base
            self.seed = seed

        def _generate(self, count):
            vals = self.base.prefix(count).copy()
            gen = np.random.default_rng(self.seed)
            us = qr.quaternion.random_unit_quaternions(gen, count)
            from quatrange.quaternion import qconj, qmul
            return qmul(qmul(us, vals), qconj(us))

    rotated = qr.ModelOperator(M.block, RotatedTail(M.tail, 60), M.limit_set, M.bound)
    # validation passes because classes are unchanged; the essential bild and
    # the section support polygons are identical
    assert np.array_equal(qr.essential_bild(M), qr.essential_bild(rotated))
    thetas = np.linspace(0, math.pi, 45)
    h1 = qr.support_offsets(qr.truncate(M, 40).matrix, thetas)
    h2 = qr.support_offsets(qr.truncate(rotated, 40).matrix, thetas)
    assert np.max(np.abs(h1 - h2)) <= 1e-9


def test_truncation_spectrum_accumulates_inside():
    M = seeded_model_operator(7)
    poly = qr.essential_bild(M)
    block_spec = qr.s_spectrum(M.block).points() if M.block_size else np.zeros((0, 2))
    T = qr.truncate(M, 200)
    tail_pts = qr.bild_points(T.matrix.diagonal()[M.block_size:])
    for pt in tail_pts[100:]:
        d_poly = -min(0.0, signed_inner_distance(poly, pt))
        d_block = np.min(np.linalg.norm(block_spec - pt[None, :], axis=1)) \
            if len(block_spec) else np.inf
        assert min(d_poly, d_block) <= 1e-3


# -- quasi-orthogonal selection --------------------------------------------------------


def test_quasi_orth_disjoint_basis():
    T = qr.truncate(qr.remark_operator(), 6)
    xs = [qr.QVector.basis(T.n, k) for k in range(0, 4)]
    ys = [qr.QVector.basis(T.n, k) for k in range(4, 8)]
    sel = qr.quasi_orth_select(T, xs, ys, N=1, eps=1e-12)
    assert sel.m == 1
    assert max(sel.bounds) == 0.0


def test_quasi_orth_large_eps_accepts_immediately():
    T = random_qmatrix(8, 4)
    xs = [qr.QVector.basis(4, 0)]
    ys = [qr.QVector.basis(4, 0)]
    sel = qr.quasi_orth_select(T, xs, ys, N=0, eps=T.frobenius() + 1.0)
    assert sel.m == 0


def test_quasi_orth_exhaustion_reports_best():
    T = qr.QMatrix.identity(2)
    xs = [qr.QVector.basis(2, 0)]
    ys = [qr.QVector.basis(2, 0), qr.QVector.basis(2, 0)]
    with pytest.raises(qr.QuasiOrthExhausted) as err:
        qr.quasi_orth_select(T, xs, ys, N=0, eps=1e-3)
    assert err.value.best_bounds[0] == pytest.approx(1.0)


def test_quasi_orth_remark_subsequence(remark):
    T = qr.truncate(remark, 8)
    xs = [qr.QVector.basis(T.n, 2 + k) for k in range(4)]
    ys = xs
    sel = qr.quasi_orth_select(T, xs, ys, N=2, eps=1e-6)
    assert sel.m == 3  # first later position with disjoint support
    assert max(sel.bounds) <= 1e-6


# -- constructive convex combinations ---------------------------------------------------


def test_combination_alpha_one_returns_first_sequence(remark):
    target = Quaternion(0.0, 0.5, 0.0, 0.0)
    run = qr.convex_combination_sequence(remark, target, Quaternion(0.0, -0.5, 0, 0),
                                         1.0, 40)
    assert all(len(v.entries) == 1 for v in run.vectors)
    assert run.errors[-1] <= 1.0 / 40 + 1e-12


def test_combination_remark_midpoint(remark):
    run = qr.convex_combination_sequence(
        remark, Quaternion(0, 0.5, 0, 0), Quaternion(0, -0.5, 0, 0),
        math.sqrt(0.5), 200)
    assert abs(run.values[-1]) <= 5 * (2 + remark.opnorm_bound()) / 200
    assert all(max(t) <= 1 / (p + 1) for p, t in enumerate(run.triples))


def test_combination_constant_tail_fixed_point():
    q = Quaternion(0.5, 0.0, 0.75, 0.0)
    M = qr.ModelOperator(qr.QMatrix.zeros(0), qr.ConstantTail(q), [qr.csim(q)],
                         bound=1.0)
    run = qr.convex_combination_sequence(M, q, q, math.sqrt(0.5), 50)
    assert abs(run.values[-1] - q) <= 1e-9


def test_combination_values_are_unit_vector_quadratics(remark):
    run = qr.convex_combination_sequence(
        remark, Quaternion(0, 0.5, 0, 0), Quaternion(0, -0.25, 0, 0),
        math.sqrt(0.3), 25)
    top = max(i for v in run.vectors for i, _ in v.entries)
    T = qr.truncate(remark, top + 1).matrix
    for vec, value in zip(run.vectors[-3:], run.values[-3:]):
        x = vec.to_qvector(T.n)
        assert x.norm() == pytest.approx(1.0, abs=1e-12)
        direct = T.apply(x).inner(x)
        assert abs(direct - value) <= 1e-10


def test_combination_rejects_unknown_target(remark):
    with pytest.raises(qr.MissingSequenceError):
        qr.convex_combination_sequence(remark, Quaternion(3.0), Quaternion(0, 0.5, 0, 0),
                                       0.5, 10)


# -- membership --------------------------------------------------------------------------


def test_membership_remark(remark):
    assert qr.we_membership(remark, Quaternion(0.0, 0.25, 0.0, 0.0))
    assert not qr.we_membership(remark, Quaternion(1.0))
    far = Quaternion(0.0, 0.0, remark.bound + remark.block.frobenius() + 1.0, 0.0)
    assert not qr.we_membership(remark, far)


def test_membership_uses_sphere_classes(remark):
    # any representative of a contained class is contained
    rng = np.random.default_rng(2)
    base = Quaternion(0.0, 0.3, 0.0, 0.0)
    for _ in range(5):
        u = Quaternion(*rng.standard_normal(4)).normalized()
        assert qr.we_membership(remark, u.conj() * base * u)


def test_membership_interior_triangle_decomposition():
    targets = [Quaternion(0.0, 1.0, 0, 0), Quaternion(-1.0, 0.0, 0, 0),
               Quaternion(1.0, 0.0, 0, 0)]
    M = qr.ModelOperator(qr.QMatrix.zeros(0), qr.DecayingPeriodicTail(targets, 0.1),
                         [qr.csim(t) for t in targets], bound=1.3)
    assert qr.we_membership(M, Quaternion(0.1, 0.2, 0.0, 0.0), depth=80)
    assert not qr.we_membership(M, Quaternion(0.9, 0.9, 0.0, 0.0))
