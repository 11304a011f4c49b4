"""Row medians and reduced disks for real matrices.

Two radius families are provided. The *with-zero* family takes the median
``t_i`` of the row with its diagonal entry replaced by ``0`` and radius
``r_i = |t_i| + sum_{j != i} |a_ij - t_i|``. The *without-zero* family takes
the median ``t*_i`` of the ``n - 1`` off-diagonal entries and radius
``r*_i = sum_{j != i} |a_ij - t*_i|``; always ``r*_i <= r_i``.

Row indices are 0-based throughout.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import (
    Certificate,
    DiskUnion,
    Disk,
    GershError,
    ShiftVector,
    as_real_matrix,
    make_certificate,
)
from .kernels import shifted_margins


class MedianVariant(enum.Enum):
    WITH_ZERO = "with_zero"
    WITHOUT_ZERO = "without_zero"


@dataclass(frozen=True)
class RowMedianSummary:
    row_index: int
    median_lo: float
    median_hi: float
    radius: float
    variant: MedianVariant


def median_interval(values) -> tuple[float, float]:
    """Endpoints of the set of minimizers of ``t -> sum |v - t|``."""
    v = sorted(float(x) for x in values)
    m = len(v)
    if m == 0:
        raise GershError("median of an empty sequence")
    if m % 2:
        return v[m // 2], v[m // 2]
    return v[m // 2 - 1], v[m // 2]


def abs_dev(values, t: float) -> float:
    return math.fsum(abs(float(x) - t) for x in values)


def _checked(a, i=None) -> np.ndarray:
    a = as_real_matrix(a)
    if a.shape[0] < 2:
        raise GershError("reduced disks need n >= 2")
    if i is not None and not 0 <= i < a.shape[0]:
        raise GershError(f"row index {i} out of range for n={a.shape[0]}")
    return a


def _off_diagonal(a: np.ndarray, i: int) -> np.ndarray:
    return np.delete(a[i], i)


def row_median_with_zero(a, i: int) -> RowMedianSummary:
    a = _checked(a, i)
    values = np.append(_off_diagonal(a, i), 0.0)
    lo, hi = median_interval(values)
    # the objective is constant on [lo, hi]; take the smaller rounding of the two ends
    radius = min(abs_dev(values, lo), abs_dev(values, hi))
    return RowMedianSummary(i, lo, hi, radius, MedianVariant.WITH_ZERO)


def row_median_without_zero(a, i: int) -> RowMedianSummary:
    a = _checked(a, i)
    values = _off_diagonal(a, i)
    lo, hi = median_interval(values)
    radius = min(abs_dev(values, lo), abs_dev(values, hi))
    return RowMedianSummary(i, lo, hi, radius, MedianVariant.WITHOUT_ZERO)


def reduced_disks_thm12(a) -> DiskUnion:
    """Disks ``D(a_ii, r_i)`` from the with-zero medians."""
    a = _checked(a)
    n = a.shape[0]
    radii = [row_median_with_zero(a, i).radius for i in range(n)]
    return DiskUnion.one_per_row(np.diagonal(a), radii)


def reduced_disks_cor14(a) -> DiskUnion:
    """Shifted disks ``D(a_ii - t*_i, r*_i)`` from the without-zero medians.

    For odd ``n`` the median is an interval ``[lo, hi]`` and each row carries
    two disks, one per endpoint. A row localizes ``z`` only when ``z`` lies in
    both, since a shift at either endpoint that excludes ``z`` certifies
    ``rank(A - zI) >= n - 1`` for that row.
    """
    a = _checked(a)
    n = a.shape[0]
    disks, rows = [], []
    for i in range(n):
        s = row_median_without_zero(a, i)
        ends = (s.median_lo,) if n % 2 == 0 else (s.median_lo, s.median_hi)
        for t in ends:
            disks.append(Disk(a[i, i] - t, s.radius))
            rows.append(i)
    return DiskUnion(tuple(disks), tuple(rows), n)


def reduced_disks_cor14_centered(a) -> DiskUnion:
    """Comparison variant centered at ``a_ii`` with radius ``min_t |t| + r*_i``.

    Each disk contains every point that row localizes in
    :func:`reduced_disks_cor14` (for odd ``n``, the intersection of its two
    endpoint disks), so this region is larger but still valid.
    """
    a = _checked(a)
    n = a.shape[0]
    radii = []
    for i in range(n):
        s = row_median_without_zero(a, i)
        if s.median_lo <= 0.0 <= s.median_hi:
            nearest = 0.0
        else:
            nearest = min(abs(s.median_lo), abs(s.median_hi))
        radii.append(nearest + s.radius)
    return DiskUnion.one_per_row(np.diagonal(a), radii)


def check_condition3_real(a, lam) -> Certificate:
    """Decide whether real row shifts ``c_i`` make ``A - lam*I - C`` dominant.

    Only the median (``n`` even) or the two median-interval endpoints (``n``
    odd) need testing: if neither works, no real shift does. If zero shifts
    already work the certificate is reported at full rank ``n``.
    """
    a = _checked(a)
    n = a.shape[0]
    lam = complex(lam)
    zeros = np.zeros(n)

    plain = shifted_margins(a, lam, zeros, zeros)
    if np.all(plain > 0.0):
        return make_certificate(plain, ShiftVector.zeros(n), lam, tier=0)

    summaries = [row_median_without_zero(a, i) for i in range(n)]
    lo = np.array([s.median_lo for s in summaries])
    hi = np.array([s.median_hi for s in summaries])
    m_lo = shifted_margins(a, lam, lo, zeros)
    m_hi = shifted_margins(a, lam, hi, zeros)
    best = np.where(m_hi > m_lo, hi, lo)
    margins = np.maximum(m_lo, m_hi)
    return make_certificate(margins, ShiftVector(best), lam, tier=1)
