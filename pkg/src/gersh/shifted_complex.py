"""Rank certificates from shifted diagonal dominance over complex shifts.

If row shifts ``c_i`` make ``D = A - lam*I - C`` strictly diagonally dominant
(``C`` has every entry of row ``i`` equal to ``c_i``), then ``D`` has full rank
and ``rank(A - lam*I) >= n - 1`` because ``C`` has rank one. Adding column
shifts ``e_j`` as well weakens the conclusion to ``n - 2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    Certificate,
    DiskUnion,
    GershError,
    ShiftVector,
    as_matrix,
    make_certificate,
)
from .kernels import shifted_margins, weiszfeld_iterate
from .reduced_real import median_interval

COLLINEAR_TOL = 1e-12
ANCHOR_REL = 1e-14


@dataclass(frozen=True)
class WeiszfeldResult:
    """Minimizer of ``t -> sum_k |p_k - t|`` over the complex plane.

    ``segment`` holds the ends of the minimizing segment when all points are
    collinear (both ends equal when the minimizer is unique).
    """

    minimizer: complex
    objective: float
    iterations: int
    converged: bool
    collinear_case: bool
    residual: float = 0.0
    segment: tuple[complex, complex] | None = None


def median_objective(points, t) -> float:
    t = complex(t)
    return math.fsum(abs(complex(p) - t) for p in points)


def _collinear_median(pts: np.ndarray, origin: complex, u: complex) -> WeiszfeldResult:
    s = ((pts - origin) * np.conj(u)).real
    order = np.argsort(s, kind="stable")
    m = len(pts)
    if m % 2:
        p_lo = p_hi = complex(pts[order[m // 2]])
    else:
        p_lo, p_hi = complex(pts[order[m // 2 - 1]]), complex(pts[order[m // 2]])
    mid = p_lo if p_lo == p_hi else 0.5 * (p_lo + p_hi)
    return WeiszfeldResult(mid, median_objective(pts, mid), 0, True, True, 0.0, (p_lo, p_hi))


def geometric_median(points, tol: float = 1e-10, max_iter: int = 1000) -> WeiszfeldResult:
    """Geometric median (Fermat-Weber point) of complex points.

    Collinear inputs are solved exactly by the 1-D median along their line.
    Otherwise the iteration starts from the input point of smallest objective
    and runs the Vardi-Zhang variant of Weiszfeld's method, which handles
    iterates landing on input points, accelerated by Newton steps that are
    kept only when they lower the objective. ``converged`` means the distance
    from zero to the subdifferential is at most ``tol``; otherwise the last
    iterate is returned with ``converged=False``.
    """
    pts = np.asarray(points, dtype=np.complex128).reshape(-1)
    if pts.size == 0:
        raise GershError("geometric median of an empty point set")
    if not np.all(np.isfinite(pts)):
        raise GershError("points must be finite")
    if not tol > 0:
        raise GershError("tol must be > 0")

    origin = complex(pts[0])
    dist = np.abs(pts - origin)
    far = int(np.argmax(dist))
    span = float(dist[far])
    if span == 0.0:
        return WeiszfeldResult(origin, 0.0, 0, True, True, 0.0, (origin, origin))
    u = (complex(pts[far]) - origin) / span
    perp = np.abs(((pts - origin) * np.conj(u)).imag)
    if float(perp.max()) <= COLLINEAR_TOL * span:
        return _collinear_median(pts, origin, u)

    objs = [median_objective(pts, p) for p in pts]
    start = complex(pts[int(np.argmin(objs))])
    x, y, it, res, conv = weiszfeld_iterate(
        pts.real, pts.imag, start.real, start.imag, tol, max_iter, ANCHOR_REL * span
    )
    best = complex(x, y)
    return WeiszfeldResult(best, median_objective(pts, best), int(it), bool(conv), False, float(res))


def _square(a, min_n: int = 2) -> np.ndarray:
    a = as_matrix(a)
    if a.shape[0] < min_n:
        raise GershError(f"need n >= {min_n}")
    return a


def _row_candidates(off: np.ndarray, lam_real: bool) -> np.ndarray:
    wz = geometric_median(off)
    cands = [0j, wz.minimizer]
    if wz.segment is not None:
        cands.extend(wz.segment)
    if lam_real and not np.any(off.imag != 0.0):
        cands.extend(median_interval(off.real))
    cands.extend(off.tolist())
    return np.asarray(cands, dtype=np.complex128)


def check_condition3(a, lam) -> Certificate:
    """Search per-row complex shifts satisfying the shifted dominance condition.

    Candidates per row: zero, the geometric median of the off-diagonal entries
    (plus the ends of its minimizing segment when collinear), the median
    interval ends for real rows, and every off-diagonal entry. The search is
    exact for real rows and real ``lam`` and a heuristic otherwise, so a false
    verdict on a complex row does not prove that no shift exists.
    """
    a = _square(a)
    n = a.shape[0]
    lam = complex(lam)
    zeros = np.zeros(n, dtype=np.complex128)

    plain = shifted_margins(a, lam, zeros, zeros)
    if np.all(plain > 0.0):
        return make_certificate(plain, ShiftVector.zeros(n), lam, tier=0)

    lam_real = lam.imag == 0.0
    chosen = np.empty(n, dtype=np.complex128)
    for i in range(n):
        off = np.delete(a[i], i)
        z = a[i, i] - lam
        cands = _row_candidates(off, lam_real)
        scores = np.abs(z - cands) - np.abs(off[None, :] - cands[:, None]).sum(axis=1)
        chosen[i] = cands[int(np.argmax(scores))]
    margins = shifted_margins(a, lam, chosen, zeros)
    return make_certificate(margins, ShiftVector(chosen), lam, tier=1)


def median_shifts(a) -> ShiftVector:
    """Row shifts at the geometric median of each row's off-diagonal entries."""
    a = _square(a)
    n = a.shape[0]
    return ShiftVector([geometric_median(np.delete(a[i], i)).minimizer for i in range(n)])


def localization_union(a, shifts: ShiftVector | None = None) -> DiskUnion:
    """Disks ``D(a_ii - c_i, sum_{j != i} |a_ij - c_i|)``.

    Every ``lam`` with ``rank(A - lam*I) <= n - 2`` lies in the union, for any
    fixed choice of shifts. The default shifts are the row geometric medians,
    which minimize every radius; zero shifts give the classical disks.
    """
    a = _square(a)
    n = a.shape[0]
    if shifts is None:
        shifts = median_shifts(a)
    if shifts.col_shifts is not None:
        raise GershError("localization_union takes row shifts only")
    if len(shifts) != n:
        raise GershError("shift vector length does not match the matrix")
    c = shifts.row_shifts
    dev = np.abs(a - c[:, None])
    np.fill_diagonal(dev, 0.0)
    return DiskUnion.one_per_row(np.diagonal(a) - c, dev.sum(axis=1))


def verify_two_sided(a, shifts: ShiftVector, lam) -> Certificate:
    """Dominance of ``d_ij = a_ij - lam*[i=j] - c_i - e_j``; success gives rank >= n - 2."""
    a = _square(a, 1)
    if shifts.col_shifts is None:
        raise GershError("two-sided verification needs column shifts")
    if len(shifts) != a.shape[0]:
        raise GershError("shift vector length does not match the matrix")
    margins = shifted_margins(a, lam, shifts.row_shifts, shifts.col_shifts)
    return make_certificate(margins, shifts, lam, tier=2)


def search_two_sided(a, lam, rounds: int = 10) -> Certificate:
    """Alternating median search for row and column shifts.

    Starts from the one-sided certificate's row shifts with ``e = 0``, then
    alternates: each ``c_i`` becomes the geometric median of
    ``{a_ij - e_j : j != i}`` and each ``e_j`` the geometric median of
    ``{a_ij - c_i : i != j}``. Stops after ``rounds`` rounds or when the worst
    margin improves by less than 1e-12. Returns the best certificate seen.
    """
    a = _square(a)
    n = a.shape[0]
    lam = complex(lam)
    c = np.array(check_condition3(a, lam).shifts.row_shifts, dtype=np.complex128)
    e = np.zeros(n, dtype=np.complex128)

    best = verify_two_sided(a, ShiftVector(c, e), lam)
    prev = best.min_margin
    for _ in range(rounds):
        for i in range(n):
            c[i] = geometric_median(np.delete(a[i] - e, i)).minimizer
        for j in range(n):
            e[j] = geometric_median(np.delete(a[:, j] - c, j)).minimizer
        cert = verify_two_sided(a, ShiftVector(c, e), lam)
        if cert.min_margin > best.min_margin:
            best = cert
        if cert.min_margin - prev < 1e-12:
            break
        prev = cert.min_margin
    return best
