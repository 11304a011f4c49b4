"""Approximate cross-polytope configurations and their Gram-matrix rank certificate.

A configuration is ``k`` point pairs ``(p_i, q_i)`` in R^d with antipodal
squared distance 4 and every other squared distance within ``eps`` of 2. For
``eps < 2/(3d+5)`` at most ``d + 2`` pairs exist: the Gram-type matrix
``m_ij = (p_i - p_1).(q_j - p_1)`` built from ``d + 3`` pairs has rank at most
``d`` yet is certified to have rank at least ``d + 1`` by dominance with every
row shift equal to 1. The relaxed variant allows ``|(p_i - q_i)^2 - 4| <= eps``
and needs ``eps < 2/(3d+6)``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.linalg import hadamard

from .core import Certificate, GershError, ShiftVector, as_real_matrix, make_certificate
from .kernels import shifted_margins

STRICT_ANTIPODAL_TOL = 1e-9


class Conclusion(enum.Enum):
    WITHIN_BOUND = "WithinBound"
    INFEASIBLE_BY_RANK = "InfeasibleByRank"
    NOT_APPLICABLE = "NotApplicable"


@dataclass(frozen=True, eq=False)
class PointPairSet:
    dimension: int
    p: np.ndarray  # (k, d)
    q: np.ndarray  # (k, d)
    epsilon: float = 0.0

    def __post_init__(self):
        p = np.array(self.p, dtype=np.float64)
        q = np.array(self.q, dtype=np.float64)
        d = int(self.dimension)
        if d < 1:
            raise GershError("dimension must be positive")
        if p.ndim != 2 or p.shape != q.shape or p.shape[1] != d or p.shape[0] < 1:
            raise GershError(f"pairs must be two (k, {d}) arrays with k >= 1")
        if not (np.all(np.isfinite(p)) and np.all(np.isfinite(q))):
            raise GershError("coordinates must be finite")
        eps = float(self.epsilon)
        if not np.isfinite(eps) or eps < 0:
            raise GershError("epsilon must be finite and >= 0")
        p.flags.writeable = False
        q.flags.writeable = False
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "dimension", d)
        object.__setattr__(self, "epsilon", eps)

    @property
    def k(self) -> int:
        return self.p.shape[0]


@dataclass(frozen=True, eq=False)
class ConstraintReport:
    """Residuals ``|dist^2 - target|``; ``pq[i, j]`` is for ``(p_i, q_j)``, diagonal = antipodal."""

    ok: bool
    antipodal: np.ndarray
    pq: np.ndarray
    pp: np.ndarray
    qq: np.ndarray

    @property
    def worst_cross(self) -> float:
        k = len(self.antipodal)
        off = ~np.eye(k, dtype=bool)
        vals = [m[off] for m in (self.pq, self.pp, self.qq)]
        return float(max((v.max() for v in vals if v.size), default=0.0))


@dataclass(frozen=True, eq=False)
class FeasibilityVerdict:
    constraints_ok: bool
    bound_applicable: bool
    bound: float
    gram: np.ndarray | None
    certificate: Certificate | None
    conclusion: Conclusion


def _sqdist(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    diff = x[:, None, :] - y[None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


ROUNDING_ATOL = 1e-12


def check_distance_constraints(s: PointPairSet, relaxed: bool = False,
                               atol: float = ROUNDING_ATOL) -> ConstraintReport:
    """Check all pair distance constraints at tolerance ``epsilon`` (+ ``atol``).

    Strict mode requires antipodal squared distances of 4 within 1e-9; relaxed
    mode within ``epsilon``. The default ``atol`` absorbs rounding for inputs
    that sit exactly on the ``2 +- epsilon`` boundary.
    """
    pq = np.abs(_sqdist(s.p, s.q) - 2.0)
    anti = np.abs(np.einsum("ij,ij->i", s.p - s.q, s.p - s.q) - 4.0)
    pq[np.diag_indices(s.k)] = anti
    pp = np.abs(_sqdist(s.p, s.p) - 2.0)
    qq = np.abs(_sqdist(s.q, s.q) - 2.0)
    np.fill_diagonal(pp, 0.0)
    np.fill_diagonal(qq, 0.0)

    off = ~np.eye(s.k, dtype=bool)
    limit = s.epsilon + atol
    cross_ok = all(np.all(m[off] <= limit) for m in (pq, pp, qq))
    anti_limit = limit if relaxed else STRICT_ANTIPODAL_TOL + atol
    ok = bool(cross_ok and np.all(anti <= anti_limit))
    return ConstraintReport(ok, anti, pq, pp, qq)


def claim_bound(d: int, relaxed: bool = False):
    """Upper limit on ``eps`` (exclusive): ``2/(3d+5)``, or ``2/(3d+6)`` relaxed."""
    return Fraction(2, 3 * d + (6 if relaxed else 5))


def build_gram(s: PointPairSet) -> np.ndarray:
    """``(d+2) x (d+2)`` matrix ``m_ij = (p_i - p_1).(q_j - p_1)`` over pairs 2..d+3."""
    d = s.dimension
    if s.k < d + 3:
        raise GershError(f"need at least d+3 = {d + 3} pairs, got {s.k}")
    base = s.p[0]
    pd = s.p[1 : d + 3] - base
    qd = s.q[1 : d + 3] - base
    return pd @ qd.T


def unit_shift_certificate(m) -> Certificate:
    """Dominance of ``m - J`` (every row shifted by 1): success gives rank(m) >= size - 1."""
    m = as_real_matrix(m)
    size = m.shape[0]
    ones = np.ones(size)
    margins = shifted_margins(m, 0.0, ones, np.zeros(size))
    return make_certificate(margins, ShiftVector(ones), 0.0, tier=1)


def _below_bound(eps: float, bound: Fraction) -> bool:
    # strict in exact arithmetic and against the rounded bound, so an eps typed as 2/(3d+5) never qualifies
    return Fraction(float(eps)) < bound and float(eps) < float(bound)


def gram_verdict(m, d: int, epsilon: float, relaxed: bool = False) -> FeasibilityVerdict:
    """Run the unit-shift certificate on an already-built ``(d+2) x (d+2)`` Gram matrix."""
    m = as_real_matrix(m)
    if m.shape[0] != d + 2:
        raise GershError(f"Gram matrix must be {d + 2} x {d + 2} for d = {d}")
    bound = claim_bound(d, relaxed)
    applicable = _below_bound(epsilon, bound)
    cert = unit_shift_certificate(m)
    conclusion = Conclusion.INFEASIBLE_BY_RANK if (applicable and cert.verdict) else Conclusion.NOT_APPLICABLE
    return FeasibilityVerdict(True, applicable, float(bound), m, cert, conclusion)


def octahedron_verdict(s: PointPairSet, relaxed: bool = False) -> FeasibilityVerdict:
    """Classify a configuration against the ``k <= d + 2`` bound.

    ``WithinBound`` when ``k <= d + 2``. With more pairs and ``eps`` below the
    bound, the unit-shift certificate on the Gram matrix proves rank >= d + 1,
    contradicting rank <= d (``InfeasibleByRank``). Otherwise the claim says
    nothing (``NotApplicable``).
    """
    report = check_distance_constraints(s, relaxed)
    d = s.dimension
    bound = claim_bound(d, relaxed)
    applicable = _below_bound(s.epsilon, bound)
    if s.k <= d + 2:
        return FeasibilityVerdict(report.ok, applicable, float(bound), None, None, Conclusion.WITHIN_BOUND)
    if not applicable:
        return FeasibilityVerdict(report.ok, False, float(bound), None, None, Conclusion.NOT_APPLICABLE)
    m = build_gram(s)
    cert = unit_shift_certificate(m)
    conclusion = Conclusion.INFEASIBLE_BY_RANK if cert.verdict else Conclusion.NOT_APPLICABLE
    return FeasibilityVerdict(report.ok, True, float(bound), m, cert, conclusion)


def worst_case_margin(d: int, eps, relaxed: bool = False):
    """Smallest unit-shift margin allowed by the entry bounds implied by the constraints.

    Diagonal: ``|m_ii - 1| >= 1 - eps`` (``1 - 3 eps / 2`` relaxed); off-diagonal:
    ``|m_ij - 1| <= 3 eps / 2`` for each of the ``d + 1`` other entries. Exact
    for :class:`fractions.Fraction` input.
    """
    three_halves = Fraction(3, 2) if isinstance(eps, Fraction) else 1.5
    diag = 1 - (three_halves * eps if relaxed else eps)
    return diag - (d + 1) * three_halves * eps


def sylvester_hadamard(n: int) -> np.ndarray:
    """Sylvester Hadamard matrix of order ``n`` (a power of two)."""
    if n < 1 or n & (n - 1):
        raise GershError(f"Sylvester construction needs a power of two, got {n}")
    return hadamard(n, dtype=np.int64)


def hadamard_octahedron(order: int) -> PointPairSet:
    """Near-extremal configuration from the rows of a Hadamard matrix.

    The rows of ``H / sqrt(d)`` (``d = order - 2``) with their last two
    coordinates deleted give ``p_i``; ``q_i = -p_i``. Antipodal squared
    distances are exactly 4 and all others lie in ``[2 - 4/d, 2 + 4/d]``, so
    ``epsilon = 4/d``.
    """
    if order < 4:
        raise GershError("order must be >= 4")
    h = sylvester_hadamard(order)
    d = order - 2
    p = h[:, :d] / np.sqrt(d)
    return PointPairSet(d, p, -p, 4.0 / d)
