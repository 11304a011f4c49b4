from fractions import Fraction

import numpy as np
import pytest

from gersh import (
    Conclusion,
    GershError,
    PointPairSet,
    build_gram,
    check_distance_constraints,
    gram_verdict,
    hadamard_octahedron,
    numerical_rank,
    octahedron_verdict,
)
from gersh.geometry import claim_bound, sylvester_hadamard, unit_shift_certificate, worst_case_margin


def l1_ball(d, k=None):
    k = d if k is None else k
    e = np.eye(d)[:k]
    return PointPairSet(d, e, -e, 0.0)


def rotation(rng, d):
    q, r = np.linalg.qr(rng.standard_normal((d, d)))
    return q * np.sign(np.diag(r))


class TestConstraints:
    def test_l1_ball_exact(self):
        rep = check_distance_constraints(l1_ball(5))
        assert rep.ok and rep.worst_cross == 0 and np.all(rep.antipodal == 0)

    @pytest.mark.parametrize("order", [4, 8, 16, 32])
    def test_hadamard_within_eps(self, order):
        s = hadamard_octahedron(order)
        assert check_distance_constraints(s, atol=1e-12).ok

    def test_long_antipodal_strict(self):
        p = np.eye(3)
        q = -np.eye(3)
        q[0, 0] = 1.0 - np.sqrt(4.5)  # |p_0 - q_0|^2 = 4.5
        s = PointPairSet(3, p, q, 0.1)
        assert abs(np.sum((p[0] - q[0]) ** 2) - 4.5) < 1e-12
        assert not check_distance_constraints(s).ok

    def test_relaxed_accepts_near_antipodal(self):
        p = np.eye(3)
        q = -np.eye(3) * 1.01  # antipodal 2.01^2 = 4.0401, cross 1 + 1.0201 = 2.0201
        s = PointPairSet(3, p, q, 0.05)
        assert not check_distance_constraints(s).ok
        assert check_distance_constraints(s, relaxed=True).ok

    def test_pointset_validation(self):
        with pytest.raises(GershError):
            PointPairSet(2, np.zeros((3, 2)), np.zeros((3, 3)))
        with pytest.raises(GershError):
            PointPairSet(2, np.zeros((1, 2)), np.zeros((1, 2)), -1.0)
        with pytest.raises(GershError):
            PointPairSet(2, [[np.inf, 0]], [[0, 0]])

    def test_rigid_motion_invariance(self, rng):
        s = hadamard_octahedron(8)
        q = rotation(rng, s.dimension)
        shift = rng.standard_normal(s.dimension)
        moved = PointPairSet(s.dimension, s.p @ q.T + shift, s.q @ q.T + shift, s.epsilon)
        a, b = check_distance_constraints(s), check_distance_constraints(moved)
        assert np.allclose(a.pq, b.pq, atol=1e-12) and a.ok == b.ok


class TestHadamard:
    def test_sylvester_orthogonal(self):
        for n in (1, 2, 4, 8, 16):
            h = sylvester_hadamard(n)
            assert np.array_equal(h @ h.T, n * np.eye(n, dtype=np.int64))

    def test_bad_order(self):
        with pytest.raises(GershError):
            sylvester_hadamard(12)
        with pytest.raises(GershError):
            hadamard_octahedron(2)

    def test_order_4(self):
        s = hadamard_octahedron(4)
        assert s.dimension == 2 and s.k == 4
        assert np.all(np.abs(np.sum((s.p - s.q) ** 2, axis=1) - 4) <= 1e-12)

    def test_order_8_range(self):
        s = hadamard_octahedron(8)
        rep = check_distance_constraints(s, atol=1e-12)
        assert rep.worst_cross <= 2 / 3 + 1e-12

    def test_order_16_count(self):
        s = hadamard_octahedron(16)
        assert s.dimension == 14 and s.k == 16 == s.dimension + 2
        assert octahedron_verdict(s).conclusion is Conclusion.WITHIN_BOUND


class TestGram:
    def test_translation_invariant(self, rng):
        s = hadamard_octahedron(8)
        extra = PointPairSet(6, np.vstack([s.p, s.p[:1] + 1e-3]), np.vstack([s.q, s.q[:1]]), s.epsilon)
        shift = rng.standard_normal(6)
        moved = PointPairSet(6, extra.p + shift, extra.q + shift, extra.epsilon)
        m = build_gram(extra)
        assert m.shape == (8, 8)
        assert np.allclose(m, build_gram(moved), atol=1e-12)

    def test_too_few_pairs(self):
        with pytest.raises(GershError):
            build_gram(l1_ball(3))

    def test_degenerate_pair_built(self):
        p = np.vstack([np.eye(2), np.zeros((3, 2))])
        s = PointPairSet(2, p, p, 0.0)
        assert build_gram(s).shape == (4, 4)
        assert not check_distance_constraints(s).ok

    def test_bounds(self):
        assert claim_bound(6) == Fraction(2, 23)
        assert claim_bound(6, relaxed=True) == Fraction(2, 24)

    def test_unit_shift_on_j_minus_i(self, rng):
        for d in (2, 6, 14):
            eps = 0.9 * float(claim_bound(d))
            noise = rng.uniform(-1.5 * eps, 1.5 * eps, (d + 2, d + 2))
            np.fill_diagonal(noise, 0.0)
            m = np.ones((d + 2, d + 2)) - np.eye(d + 2) + noise
            cert = unit_shift_certificate(m)
            assert cert.verdict and cert.rank_lower_bound == d + 1
            assert numerical_rank(m) >= d + 1
            v = gram_verdict(m, d, eps)
            assert v.conclusion is Conclusion.INFEASIBLE_BY_RANK

    def test_gram_verdict_not_applicable(self):
        d = 4
        m = np.ones((d + 2, d + 2)) - np.eye(d + 2)
        assert gram_verdict(m, d, float(claim_bound(d))).conclusion is Conclusion.NOT_APPLICABLE
        with pytest.raises(GershError):
            gram_verdict(np.eye(3), d, 0.0)


class TestVerdict:
    def test_within_bound(self):
        v = octahedron_verdict(l1_ball(4))
        assert v.conclusion is Conclusion.WITHIN_BOUND and v.constraints_ok

    def test_not_applicable(self):
        s = hadamard_octahedron(8)
        extra = PointPairSet(6, np.vstack([s.p, s.p[:1]]), np.vstack([s.q, s.q[:1]]), s.epsilon)
        assert octahedron_verdict(extra).conclusion is Conclusion.NOT_APPLICABLE

    def test_too_many_pairs_small_eps(self):
        # duplicate pairs violate the constraints but expose the rank contradiction path
        d = 3
        e = np.eye(d)
        p = np.vstack([e, e])
        v = octahedron_verdict(PointPairSet(d, p, -p, 0.01))
        assert v.gram is not None and v.gram.shape == (5, 5) and not v.constraints_ok
        assert v.bound_applicable and v.certificate is not None

    def test_worst_case_margin_sign(self):
        for d in (2, 6, 14):
            for relaxed in (False, True):
                b = claim_bound(d, relaxed)
                assert worst_case_margin(d, b, relaxed) <= 0
                assert worst_case_margin(d, b * Fraction(999, 1000), relaxed) > 0
