import math

import numpy as np
import pytest

from gersh import (
    GershError,
    NotRealError,
    ZeroSumWeightVector,
    almost_symmetric_pair_disks,
    eigenvalues,
    lemma52_bound,
    normal_pair_disks,
    symmetry_defect,
)
from gersh.structured import is_normal


def doubly_stochastic(rng, n, terms=5):
    w = rng.dirichlet(np.ones(terms))
    return sum(wk * np.eye(n)[rng.permutation(n)] for wk in w)


class TestSymmetryDefect:
    def test_symmetric(self, rng):
        b = rng.standard_normal((5, 5))
        assert symmetry_defect(b + b.T).value <= 1e-12

    def test_doubly_stochastic(self, rng):
        assert symmetry_defect(doubly_stochastic(rng, 6)).value <= 1e-12

    def test_two_by_two(self):
        eps = 0.125
        d = symmetry_defect([[1, eps], [0, 1 + eps]])
        assert d.value == eps and d.argmax_row == 0

    def test_errors(self):
        with pytest.raises(NotRealError):
            symmetry_defect([[1j, 0], [0, 1]])
        with pytest.raises(GershError):
            symmetry_defect(np.ones((2, 3)))


class TestNormalPairDisks:
    def test_diagonal(self):
        rep = normal_pair_disks(np.diag([1.0, 2.0, 3.0]), 1, 2)
        assert rep.witness_row == 0
        assert all(d.radius == math.sqrt(3) for d in rep.disks)

    def test_block(self):
        a = np.array([[2, 1, 0], [1, 2, 0], [0, 0, 5]], dtype=float)
        ev = eigenvalues(a).eigenvalues
        assert np.allclose(ev, [1, 3, 5])
        rep = normal_pair_disks(a, 1, 3)
        assert rep.disks.disks[0].radius == 1 + 2 * math.sqrt(3)
        assert rep.witness_row == 0

    def test_all_ones(self):
        rep = normal_pair_disks(np.ones((3, 3)), 0, 3)
        assert rep.witness_row is not None
        d = rep.disks.disks[rep.witness_row]
        assert d.center == 1 and abs(d.radius - (1 + 3 * math.sqrt(3))) < 1e-12

    def test_errors(self):
        with pytest.raises(GershError):
            normal_pair_disks(np.triu(np.ones((3, 3))), 0, 1)
        with pytest.raises(GershError):
            normal_pair_disks(np.eye(2), 0, 1)
        with pytest.raises(GershError):
            normal_pair_disks(np.eye(3), 1, 1)

    def test_is_normal(self, rng):
        q, _ = np.linalg.qr(rng.standard_normal((4, 4)))
        assert is_normal(q)
        b = rng.standard_normal((4, 4))
        assert is_normal(b - b.T)
        assert not is_normal(np.triu(np.ones((4, 4))))

    def test_orthogonal_matrix_pairs(self, rng):
        for _ in range(30):
            q, _ = np.linalg.qr(rng.standard_normal((5, 5)))
            ev = eigenvalues(q).distinct()
            for lam in ev:
                for mu in ev:
                    if lam != mu:
                        assert normal_pair_disks(q, lam, mu).witness_row is not None


class TestAlmostSymmetric:
    def test_symmetric_reduces(self, rng):
        b = rng.standard_normal((4, 4))
        a = b + b.T
        n_rep = normal_pair_disks(a, 0.5, 1.5)
        s_rep = almost_symmetric_pair_disks(a, 0.5, 1.5)
        for d, e in zip(n_rep.disks, s_rep.disks):
            assert abs(d.radius - e.radius) <= 1e-12
        assert s_rep.defect <= 1e-12

    def test_doubly_stochastic(self, rng):
        rep = almost_symmetric_pair_disks(doubly_stochastic(rng, 5), 1, 0.2)
        assert rep.defect <= 1e-12

    def test_monotone_on_normal(self, rng):
        for _ in range(30):
            q, _ = np.linalg.qr(rng.standard_normal((4, 4)))
            n_rep = normal_pair_disks(q, 0.3, -0.7)
            s_rep = almost_symmetric_pair_disks(q, 0.3, -0.7)
            delta = s_rep.defect
            for d, e in zip(n_rep.disks, s_rep.disks):
                assert e.radius >= d.radius
                assert abs(e.radius - d.radius - 2.0 * delta) <= 1e-12

    def test_random_4x4_witness(self, rng):
        for _ in range(50):
            a = rng.standard_normal((4, 4))
            ev = eigenvalues(a).distinct()
            for k, lam in enumerate(ev):
                for mu in ev[k + 1:]:
                    assert almost_symmetric_pair_disks(a, lam, mu).witness_row is not None


class TestWeightedRowSum:
    def test_simple_difference(self, rng):
        a = rng.standard_normal((4, 4))
        s, r = lemma52_bound(a, 0, ZeroSumWeightVector([1, -1, 0, 0], 0))
        assert s == abs(a[0, 1]) and s <= r + 1e-12

    def test_invalid_weights(self):
        with pytest.raises(GershError):
            ZeroSumWeightVector([1, 0, 0], 0)
        with pytest.raises(GershError):
            ZeroSumWeightVector([0.5, -0.5, 0], 0)
        with pytest.raises(GershError):
            ZeroSumWeightVector([1, 1, -2], 0)

    def test_pivot_mismatch(self):
        with pytest.raises(GershError):
            lemma52_bound(np.ones((3, 3)), 1, ZeroSumWeightVector([1, -1, 0], 0))

    def test_random_vectors_valid(self, rng):
        for _ in range(200):
            n = int(rng.integers(2, 9))
            pivot = int(rng.integers(n))
            t = ZeroSumWeightVector.random(n, pivot, rng)
            assert t.weights[pivot] == 1 and abs(t.weights.sum()) <= 1e-12
            assert np.all(np.abs(t.weights) <= 1 + 1e-12)

    def test_all_ones_tight(self, rng):
        for n in range(3, 9):
            for _ in range(20):
                i = int(rng.integers(n))
                s, r = lemma52_bound(np.ones((n, n)), i, ZeroSumWeightVector.random(n, i, rng))
                assert r == 1 and abs(s - 1) <= 1e-12

    def test_bound_holds(self, rng):
        for _ in range(20):
            n = int(rng.integers(3, 9))
            a = rng.standard_normal((n, n)) * 4
            for _ in range(100):
                i = int(rng.integers(n))
                s, r = lemma52_bound(a, i, ZeroSumWeightVector.random(n, i, rng))
                assert s <= r + 1e-9
