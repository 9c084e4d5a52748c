"""Shared helpers: slow independent oracles and seeded operator families."""

import numpy as np
import pytest

import quatrange as qr
from quatrange import Quaternion


def slow_nr_values(T: qr.QMatrix, vectors) -> list[Quaternion]:
    """Values <Tx, x> via the scalar quaternion path (oracle for the fast sampler)."""
    out = []
    for arr in vectors:
        x = qr.QVector(arr)
        out.append(T.apply(x).inner(x))
    return out


def random_qmatrix(seed: int, n: int, scale: float = 1.0) -> qr.QMatrix:
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(11,)))
    return qr.QMatrix(rng.standard_normal((n, n, 4)) * scale)


def random_unit_qvector(seed: int, n: int) -> qr.QVector:
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(13,)))
    return qr.QVector(rng.standard_normal((n, 4))).normalized()


def random_quaternion(seed: int, scale: float = 1.0) -> Quaternion:
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(17,)))
    return Quaternion(*(rng.standard_normal(4) * scale))


def seeded_model_operator(seed: int) -> qr.ModelOperator:
    """The seeded family used by the acceptance property suites."""
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(9,)))
    nblock = int(rng.integers(0, 3))
    block = qr.QMatrix(rng.standard_normal((nblock, nblock, 4))) if nblock \
        else qr.QMatrix.zeros(0)
    n_targets = int(rng.integers(1, 4))
    targets = [Quaternion(rng.standard_normal() * 0.8,
                          abs(rng.standard_normal()) * 0.8, 0.0, 0.0)
               for _ in range(n_targets)]
    tail = qr.DecayingPeriodicTail(targets, amplitude=0.1)
    bound = max(abs(t) for t in targets) + 0.2
    return qr.ModelOperator(block=block, tail=tail,
                            limit_set=[qr.csim(t) for t in targets], bound=bound)


@pytest.fixture
def remark():
    return qr.remark_operator()
