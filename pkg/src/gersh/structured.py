"""Disks that hold a pair of distinct eigenvalues of a real matrix at once.

For a real normal matrix, both eigenvalues of a pair ``(lam, mu)`` lie in one
disk ``D(a_ii, r_i + sqrt(n)|lam - mu|)``. For an arbitrary real matrix the
radius grows by ``sqrt(n) * defect`` where ``defect`` is the largest gap
between a row sum and the matching column sum. ``r_i`` is the with-zero
median radius from :mod:`gersh.reduced_real`.

Eigenvalues are supplied by the caller; nothing here computes a spectrum.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DiskUnion, GershError, as_real_matrix
from .reduced_real import row_median_with_zero

NORMAL_TOL = 1e-8


@dataclass(frozen=True)
class SymmetryDefect:
    value: float
    argmax_row: int


@dataclass(frozen=True)
class PairDiskReport:
    lambda_: complex
    mu: complex
    disks: DiskUnion
    witness_row: int | None
    enlargement: float
    defect: float | None = None


@dataclass(frozen=True, eq=False)
class ZeroSumWeightVector:
    """Complex weights summing to zero, with ``weights[pivot] == 1`` and all moduli <= 1."""

    weights: np.ndarray
    pivot: int

    def __post_init__(self):
        w = np.array(self.weights, dtype=np.complex128).reshape(-1)
        if not 0 <= self.pivot < len(w):
            raise GershError("pivot out of range")
        if abs(w.sum()) > 1e-12:
            raise GershError(f"weights must sum to zero (sum={w.sum()!r})")
        if abs(w[self.pivot] - 1.0) > 1e-12:
            raise GershError("pivot weight must equal 1")
        if np.any(np.abs(w) > 1.0 + 1e-12):
            raise GershError("weights must have modulus <= 1")
        w.flags.writeable = False
        object.__setattr__(self, "weights", w)

    @classmethod
    def random(cls, n: int, pivot: int, rng: np.random.Generator) -> "ZeroSumWeightVector":
        """Random admissible vector: unit-disk draws, centred, rescaled, pivot moved into place."""
        if n < 2:
            raise GershError("need n >= 2")
        radius = np.sqrt(rng.random(n))
        w = radius * np.exp(2j * np.pi * rng.random(n))
        w = w - w.mean()
        k = int(np.argmax(np.abs(w)))
        w = w / w[k]
        w[k], w[pivot] = w[pivot], w[k]
        w[pivot] = 1.0
        return cls(w, pivot)


def symmetry_defect(a) -> SymmetryDefect:
    """``max_i |sum_j (a_ij - a_ji)|``: the worst row-sum / column-sum gap."""
    a = as_real_matrix(a)
    gaps = np.abs(a.sum(axis=1) - a.sum(axis=0))
    k = int(np.argmax(gaps))
    return SymmetryDefect(float(gaps[k]), k)


def is_normal(a, tol: float = NORMAL_TOL) -> bool:
    """Commutator test ``max|A A^T - A^T A| <= tol (1 + max|A|)^2``."""
    a = as_real_matrix(a)
    comm = a @ a.T - a.T @ a
    scale = (1.0 + float(np.abs(a).max())) ** 2
    return float(np.abs(comm).max()) <= tol * scale


def _pair_report(a, lam, mu, enlargement, tol, defect=None) -> PairDiskReport:
    n = a.shape[0]
    radii = [row_median_with_zero(a, i).radius + enlargement for i in range(n)]
    disks = DiskUnion.one_per_row(np.diagonal(a), radii)
    witness = None
    for i, d in enumerate(disks):
        if d.contains(lam, tol) and d.contains(mu, tol):
            witness = i
            break
    return PairDiskReport(lam, mu, disks, witness, enlargement, defect)


def _check_pair(a, lam, mu):
    a = as_real_matrix(a)
    if a.shape[0] < 3:
        raise GershError("pair disks need n >= 3")
    lam, mu = complex(lam), complex(mu)
    if lam == mu:
        raise GershError("lambda and mu must be distinct")
    return a, lam, mu


def normal_pair_disks(a, lam, mu, tol: float = 1e-8) -> PairDiskReport:
    """Disks ``D(a_ii, r_i + sqrt(n)|lam - mu|)`` for a real normal matrix."""
    a, lam, mu = _check_pair(a, lam, mu)
    if not is_normal(a):
        raise GershError("matrix fails the normality (commutator) test")
    n = a.shape[0]
    return _pair_report(a, lam, mu, np.sqrt(n) * abs(lam - mu), tol)


def almost_symmetric_pair_disks(a, lam, mu, tol: float = 1e-8) -> PairDiskReport:
    """Disks ``D(a_ii, r_i + sqrt(n)(defect + |lam - mu|))`` for any real matrix."""
    a, lam, mu = _check_pair(a, lam, mu)
    n = a.shape[0]
    delta = symmetry_defect(a).value
    return _pair_report(a, lam, mu, np.sqrt(n) * (delta + abs(lam - mu)), tol, delta)


def lemma52_bound(a, i: int, t: ZeroSumWeightVector) -> tuple[float, float]:
    """Return ``(|sum_{j != i} a_ij t_j|, r_i)``; the first never exceeds the second."""
    a = as_real_matrix(a)
    n = a.shape[0]
    if not 0 <= i < n:
        raise GershError("row index out of range")
    if t.pivot != i:
        raise GershError("weight vector pivot must equal the row index")
    if len(t.weights) != n:
        raise GershError("weight vector length does not match the matrix")
    row = np.array(a[i], dtype=np.complex128)
    row[i] = 0.0
    s = abs(complex(np.dot(row, t.weights)))
    return s, row_median_with_zero(a, i).radius
