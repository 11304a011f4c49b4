import numpy as np
import pytest

from gersh import GershError, eigenvalues, numerical_rank, plant_multiple_eigenvalue, plant_shifted_dominant
from gersh.geometry import sylvester_hadamard
from gersh.oracle import (
    Construction,
    aberth_roots,
    charpoly_exact,
    companion,
    eigenvalues_via_charpoly,
    exact_determinant,
    match_spectra,
    single_linkage,
)

from oracles import eig2x2, random_unit_disk


class TestEigenvalues:
    def test_diagonal(self):
        e = eigenvalues(np.diag([3.0, 1.0, 2.0]))
        assert np.allclose(e.eigenvalues, [1, 2, 3])
        assert [m for _, m in e.clusters] == [1, 1, 1]

    def test_rotation(self):
        e = eigenvalues([[0, 1], [-1, 0]])
        assert match_spectra(e.eigenvalues, [1j, -1j]) <= 1e-14

    def test_all_ones(self):
        e = eigenvalues(np.ones((3, 3)))
        assert e.multiplicity_of(0) == 2 and e.multiplicity_of(3) == 1
        assert (0.0, 2) in [(round(abs(z), 9), m) for z, m in e.clusters]

    def test_identity_cluster(self):
        e = eigenvalues(np.eye(5))
        assert len(e.clusters) == 1 and e.clusters[0][1] == 5

    def test_two_by_two_against_formula(self, rng):
        for _ in range(100):
            a = random_unit_disk(rng, (2, 2))
            assert match_spectra(eigenvalues(a).eigenvalues, eig2x2(a)) <= 1e-12

    def test_residual_small(self, rng):
        e = eigenvalues(rng.standard_normal((6, 6)))
        assert e.residual <= 1e-12

    def test_companion_integer_roots(self):
        roots = [-3, -1, 2, 4, 7]
        p = np.poly(roots)
        ev = eigenvalues(companion(p)).eigenvalues
        assert match_spectra(ev, roots) <= 1e-8

    def test_single_linkage_chain(self):
        groups = single_linkage([0, 0.5, 1.0, 5], 0.6)
        assert groups == [[0, 1, 2], [3]]


class TestSecondRoute:
    def test_charpoly_all_ones(self):
        c = [complex(float(re), float(im)) for re, im in charpoly_exact(np.ones((3, 3)))]
        assert c == [1, -3, 0, 0]

    def test_determinant(self, rng):
        for n in range(1, 7):
            a = rng.integers(-4, 5, (n, n)).astype(float)
            assert abs(exact_determinant(a) - np.linalg.det(a)) <= 1e-9 * (1 + abs(np.linalg.det(a)))

    def test_determinant_matches_charpoly(self, rng):
        a = rng.integers(-3, 4, (5, 5)).astype(float)
        c = charpoly_exact(a)
        # det(zI - A) at z=0 equals (-1)^n det(A)
        assert complex(float(c[-1][0]), float(c[-1][1])) == -exact_determinant(a)

    def test_cross_check(self, rng):
        for _ in range(40):
            n = int(rng.integers(2, 9))
            a = rng.standard_normal((n, n))
            assert match_spectra(eigenvalues(a).eigenvalues, eigenvalues_via_charpoly(a)) <= 1e-6

    def test_aberth_known(self):
        r = aberth_roots([1, 0, -1])
        assert match_spectra(r, [1, -1]) <= 1e-14
        assert aberth_roots([5]).size == 0

    def test_limits(self):
        with pytest.raises(GershError):
            exact_determinant(np.eye(9))
        with pytest.raises(GershError):
            eigenvalues_via_charpoly(np.eye(9))


class TestRank:
    def test_examples(self):
        assert numerical_rank(np.ones((3, 3))) == 1
        assert numerical_rank(sylvester_hadamard(4)) == 4
        for d in (2, 6):
            assert numerical_rank(np.ones((d + 2, d + 2)) - np.eye(d + 2)) == d + 2
        assert numerical_rank(np.zeros((3, 3))) == 0

    def test_rank_consistency(self, rng):
        for r in range(0, 6):
            a = rng.standard_normal((6, r)) @ rng.standard_normal((r, 6))
            assert numerical_rank(a) == r


class TestPlanting:
    def test_unmixed(self):
        inst = plant_multiple_eigenvalue(3, 2, 0, seed=1, mix=False)
        d = np.diag(inst.matrix)
        assert d[0] == d[1] == 0 and abs(d[2]) >= 1
        assert np.count_nonzero(inst.matrix - np.diag(d)) == 0

    def test_multiplicity_two(self, rng):
        for seed in range(30):
            n = 3 + seed % 8
            lam = complex(rng.integers(-3, 4), rng.integers(-3, 4))
            inst = plant_multiple_eigenvalue(n, 2, lam, seed)
            assert inst.construction is Construction.SIMILARITY_DIAGONALIZABLE
            assert numerical_rank(inst.matrix - lam * np.eye(n)) == n - 2
            assert eigenvalues(inst.matrix).multiplicity_of(lam, 1e-6) == 2

    def test_jordan(self):
        for seed in range(20):
            inst = plant_multiple_eigenvalue(5, 2, 1.5, seed, jordan=True)
            assert inst.geometric_multiplicity == 1
            assert numerical_rank(inst.matrix - 1.5 * np.eye(5)) == 4

    def test_seed_reproducible(self):
        a = plant_multiple_eigenvalue(6, 3, 2, seed=7).matrix
        b = plant_multiple_eigenvalue(6, 3, 2, seed=7).matrix
        assert np.array_equal(a, b)

    def test_errors(self):
        with pytest.raises(GershError):
            plant_multiple_eigenvalue(3, 4, 0, seed=0)
        with pytest.raises(GershError):
            plant_shifted_dominant(4, False, 0.0, seed=0)
        with pytest.raises(GershError):
            plant_shifted_dominant(1, False, 1.0, seed=0)

    def test_shifted_constructions(self):
        one = plant_shifted_dominant(5, False, 1.0, seed=3)
        two = plant_shifted_dominant(5, True, 1.0, seed=3)
        assert one.construction is Construction.DOMINANT_PLUS_ROW_CONSTANT and one.shifts.col_shifts is None
        assert two.construction is Construction.DOMINANT_PLUS_ROW_AND_COLUMN_CONSTANT
        assert two.shifts.col_shifts is not None
