"""Independent verification machinery: spectra, numerical rank, planted instances.

The primary eigensolver is LAPACK's balanced Hessenberg + shifted QR (via
``numpy.linalg.eigvals``). For small matrices a second, unrelated route is
available: the characteristic polynomial is expanded exactly in Gaussian
rationals (Faddeev-LeVerrier) and its roots are found with Aberth's method.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.cluster.hierarchy import fcluster, linkage
from scipy.optimize import linear_sum_assignment

from .core import GershError, ShiftVector, as_matrix

MAX_ORACLE_N = 64


class OracleError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class EigenSolution:
    eigenvalues: np.ndarray
    clusters: tuple[tuple[complex, int], ...]
    residual: float
    cluster_tol: float

    def multiplicity_of(self, z, tol: float | None = None) -> int:
        tol = self.cluster_tol if tol is None else tol
        return int(np.sum(np.abs(self.eigenvalues - complex(z)) <= tol))

    def distinct(self) -> list[complex]:
        return [rep for rep, _ in self.clusters]


class Construction(enum.Enum):
    SIMILARITY_DIAGONALIZABLE = "SimilarityDiagonalizable"
    JORDAN_BLOCK = "JordanBlock"
    DOMINANT_PLUS_ROW_CONSTANT = "DominantPlusRowConstant"
    DOMINANT_PLUS_ROW_AND_COLUMN_CONSTANT = "DominantPlusRowAndColumnConstant"


@dataclass(frozen=True, eq=False)
class PlantedInstance:
    matrix: np.ndarray
    planted_lambda: complex
    geometric_multiplicity: int
    construction: Construction
    shifts: ShiftVector | None = None


def single_linkage(values, tol: float) -> list[list[int]]:
    """Group indices whose values chain together within ``tol``."""
    values = np.asarray(values, dtype=np.complex128)
    if len(values) < 2:
        return [[i] for i in range(len(values))]
    pts = np.column_stack([values.real, values.imag])
    labels = fcluster(linkage(pts, method="single"), t=tol, criterion="distance")
    groups: dict[int, list[int]] = {}
    for i, lab in enumerate(labels):
        groups.setdefault(int(lab), []).append(i)
    return sorted(groups.values(), key=lambda g: g[0])


def _sort_spectrum(ev: np.ndarray) -> np.ndarray:
    order = np.lexsort((ev.imag, ev.real))
    return ev[order]


def eigenvalues(a, cluster_tol: float | None = None) -> EigenSolution:
    """Full spectrum with multiplicity clusters and a backward-error estimate.

    ``residual`` is ``max_k sigma_min(A - lam_k I) / ||A||_2``. The default
    ``cluster_tol`` is ``1e-6 (1 + spectral radius)``.
    """
    a = as_matrix(a)
    n = a.shape[0]
    if n > MAX_ORACLE_N:
        raise GershError(f"oracle limited to n <= {MAX_ORACLE_N}")
    try:
        ev = np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:
        raise OracleError(f"eigenvalue iteration failed: {exc}") from exc
    ev = _sort_spectrum(np.asarray(ev, dtype=np.complex128))

    norm = float(np.linalg.norm(a, 2))
    if norm == 0.0:
        residual = 0.0
    else:
        eye = np.eye(n)
        residual = max(float(np.linalg.svd(a - z * eye, compute_uv=False)[-1]) for z in ev) / norm

    if cluster_tol is None:
        cluster_tol = 1e-6 * (1.0 + float(np.abs(ev).max()))
    clusters = []
    for group in single_linkage(ev, cluster_tol):
        clusters.append((complex(ev[group].mean()), len(group)))
    return EigenSolution(ev, tuple(clusters), residual, float(cluster_tol))


def numerical_rank(a, rel_tol: float = 1e-10) -> int:
    """Number of singular values above ``rel_tol`` times the largest."""
    a = as_matrix(a, square=False)
    if max(a.shape) > MAX_ORACLE_N:
        raise GershError(f"oracle limited to dimensions <= {MAX_ORACLE_N}")
    s = np.linalg.svd(a, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.sum(s > rel_tol * s[0]))


# --- exact arithmetic helpers (second route) ---------------------------------

def _gq(z) -> tuple[Fraction, Fraction]:
    z = complex(z)
    return Fraction(z.real), Fraction(z.imag)


def _gmul(x, y):
    return x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0]


def _gadd(x, y):
    return x[0] + y[0], x[1] + y[1]


_GZERO = (Fraction(0), Fraction(0))


def charpoly_exact(a) -> list[tuple[Fraction, Fraction]]:
    """Coefficients of ``det(zI - A)``, highest degree first, exact in Q[i].

    Floating-point entries are converted exactly to rationals first.
    """
    a = as_matrix(a)
    n = a.shape[0]
    A = [[_gq(a[i, j]) for j in range(n)] for i in range(n)]
    coeffs = [(Fraction(1), Fraction(0))]
    M = [[_GZERO] * n for _ in range(n)]
    for k in range(1, n + 1):
        c_prev = coeffs[-1]
        # M <- A M + c_prev I
        AM = [[_GZERO] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                acc = _GZERO
                for l in range(n):
                    if M[l][j] != _GZERO:
                        acc = _gadd(acc, _gmul(A[i][l], M[l][j]))
                AM[i][j] = acc
        for i in range(n):
            AM[i][i] = _gadd(AM[i][i], c_prev)
        M = AM
        tr = _GZERO
        for i in range(n):
            for l in range(n):
                tr = _gadd(tr, _gmul(A[i][l], M[l][i]))
        coeffs.append((-tr[0] / k, -tr[1] / k))
    return coeffs


def exact_determinant(a) -> complex:
    """Cofactor-expansion determinant in exact rational arithmetic (small ``n`` only)."""
    a = as_matrix(a)
    n = a.shape[0]
    if n > 8:
        raise GershError("cofactor expansion limited to n <= 8")
    A = [[_gq(a[i, j]) for j in range(n)] for i in range(n)]

    def det(rows, cols):
        if len(rows) == 1:
            return A[rows[0]][cols[0]]
        total = _GZERO
        r0, rest = rows[0], rows[1:]
        for k, c in enumerate(cols):
            entry = A[r0][c]
            if entry == _GZERO:
                continue
            minor = det(rest, cols[:k] + cols[k + 1 :])
            term = _gmul(entry, minor)
            if k % 2:
                term = (-term[0], -term[1])
            total = _gadd(total, term)
        return total

    re, im = det(list(range(n)), list(range(n)))
    return complex(float(re), float(im))


def aberth_roots(coeffs, tol: float = 1e-15, max_iter: int = 500) -> np.ndarray:
    """All roots of a polynomial (highest degree first) by Aberth-Ehrlich iteration."""
    p = np.asarray(coeffs, dtype=np.complex128)
    nz = np.flatnonzero(p)
    if nz.size == 0:
        raise GershError("zero polynomial")
    p = p[nz[0]:] / p[nz[0]]
    deg = len(p) - 1
    if deg == 0:
        return np.zeros(0, dtype=np.complex128)
    dp = np.polyder(p)
    bound = 1.0 + float(np.abs(p[1:]).max())
    k = np.arange(deg)
    z = 0.5 * bound * np.exp(1j * (2 * np.pi * k / deg + 0.4))
    for _ in range(max_iter):
        pv = np.polyval(p, z)
        dv = np.polyval(dp, z)
        ratio = np.divide(pv, dv, out=np.zeros_like(pv), where=dv != 0)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        denom = 1.0 - ratio * inv.sum(axis=1)
        w = np.divide(ratio, denom, out=ratio.copy(), where=denom != 0)
        z = z - w
        if np.all(np.abs(w) <= tol * (1.0 + np.abs(z))):
            break
    return _sort_spectrum(z)


def eigenvalues_via_charpoly(a) -> np.ndarray:
    """Second-route spectrum for ``n <= 8``: exact characteristic polynomial + Aberth."""
    a = as_matrix(a)
    if a.shape[0] > 8:
        raise GershError("characteristic-polynomial route limited to n <= 8")
    coeffs = [complex(float(re), float(im)) for re, im in charpoly_exact(a)]
    return aberth_roots(coeffs)


def match_spectra(x, y) -> float:
    """Largest distance under the optimal one-to-one matching of two spectra."""
    x = np.asarray(x, dtype=np.complex128)
    y = np.asarray(y, dtype=np.complex128)
    if x.shape != y.shape:
        raise GershError("spectra of different sizes")
    if x.size == 0:
        return 0.0
    cost = np.abs(x[:, None] - y[None, :])
    r, c = linear_sum_assignment(cost)
    return float(cost[r, c].max())


def companion(coeffs) -> np.ndarray:
    """Companion matrix of a monic-normalised polynomial (highest degree first)."""
    p = np.asarray(coeffs, dtype=np.complex128)
    p = p / p[0]
    n = len(p) - 1
    c = np.zeros((n, n), dtype=np.complex128)
    c[0, :] = -p[1:]
    c[np.arange(1, n), np.arange(n - 1)] = 1.0
    return c


# --- planted instances ------------------------------------------------------

def _unimodular_pair(n: int, rng: np.random.Generator, ops: int, cap: int = 6):
    p = np.eye(n, dtype=np.int64)
    pinv = np.eye(n, dtype=np.int64)
    for _ in range(ops):
        i, j = rng.choice(n, size=2, replace=False)
        coef = int(rng.choice([-1, 1]))
        new_p = p[i] + coef * p[j]
        new_col = pinv[:, j] - coef * pinv[:, i]
        if np.abs(new_p).max() > cap or np.abs(new_col).max() > cap:
            continue
        p[i] = new_p
        pinv[:, j] = new_col
    assert np.array_equal(p @ pinv, np.eye(n, dtype=np.int64))
    return p, pinv


def _singular_gap_ok(m: np.ndarray, expected_rank: int) -> bool:
    s = np.linalg.svd(m, compute_uv=False)
    if s[0] == 0.0:
        return expected_rank == 0
    s = s / s[0]
    nonzero_ok = expected_rank == 0 or s[expected_rank - 1] > 1e-4
    zero_ok = expected_rank == len(s) or s[expected_rank] <= 1e-12
    return bool(nonzero_ok and zero_ok)


def plant_multiple_eigenvalue(n: int, multiplicity: int, lam, seed: int,
                              jordan: bool = False, mix: bool = True) -> PlantedInstance:
    """``A = P D P^-1`` with ``lam`` planted ``multiplicity`` times.

    ``P`` is a product of elementary integer row operations (determinant 1),
    so ``P^-1`` is exact. Other diagonal entries are ``lam`` plus distinct
    nonzero integers, hence separated by at least 1. With ``jordan=True`` the
    first two copies of ``lam`` form a 2x2 Jordan block and the geometric
    multiplicity is ``multiplicity - 1``. ``mix=False`` keeps ``P = I``.
    """
    if not 2 <= multiplicity <= n <= 16:
        raise GershError("need 2 <= multiplicity <= n <= 16")
    lam = complex(lam)
    rng = np.random.default_rng(seed)
    geo = multiplicity - 1 if jordan else multiplicity
    construction = Construction.JORDAN_BLOCK if jordan else Construction.SIMILARITY_DIAGONALIZABLE
    pool = [v for v in range(-3 * n, 3 * n + 1) if v != 0]
    for _ in range(50):
        others = rng.choice(pool, size=n - multiplicity, replace=False)
        d = np.diag(np.concatenate([np.full(multiplicity, lam), lam + others]).astype(np.complex128))
        if jordan:
            d[0, 1] = 1.0
        if mix:
            p, pinv = _unimodular_pair(n, rng, ops=2 * n)
        else:
            p = pinv = np.eye(n, dtype=np.int64)
        a = p @ d @ pinv
        if lam.imag == 0.0:
            a = a.real.astype(np.complex128)
        if _singular_gap_ok(a - lam * np.eye(n), n - geo):
            a.flags.writeable = False
            return PlantedInstance(a, lam, geo, construction)
    raise OracleError("could not plant a well-separated instance")


def plant_shifted_dominant(n: int, two_sided: bool, margin: float, seed: int,
                           shift_scale: float = 5.0) -> PlantedInstance:
    """``A = D0 + C (+ E)`` with ``D0`` strictly dominant by at least ``margin``.

    Off-diagonal entries of ``D0`` lie in the unit disk. Each diagonal entry
    has modulus ``sum|off| + max|off| + margin (1 + u)``, ``u`` uniform in
    [0, 1); the extra ``max|off|`` keeps the row dominant after shifting by
    any point of the convex hull of its off-diagonal entries, so the row
    geometric median also certifies it. ``planted_lambda`` is 0.
    """
    if n < 2:
        raise GershError("need n >= 2")
    if not margin > 0:
        raise GershError("margin must be > 0")
    rng = np.random.default_rng(seed)

    def disk(size):
        return np.sqrt(rng.random(size)) * np.exp(2j * np.pi * rng.random(size))

    d0 = disk((n, n))
    np.fill_diagonal(d0, 0.0)
    mag = np.abs(d0)
    diag_mod = mag.sum(axis=1) + mag.max(axis=1) + margin * (1.0 + rng.random(n))
    d0[np.diag_indices(n)] = diag_mod * np.exp(2j * np.pi * rng.random(n))
    c = shift_scale * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
    e = shift_scale * (rng.standard_normal(n) + 1j * rng.standard_normal(n)) if two_sided else np.zeros(n)
    a = d0 + c[:, None] + e[None, :]
    a.flags.writeable = False
    construction = (Construction.DOMINANT_PLUS_ROW_AND_COLUMN_CONSTANT if two_sided
                    else Construction.DOMINANT_PLUS_ROW_CONSTANT)
    shifts = ShiftVector(c, e if two_sided else None)
    return PlantedInstance(a, 0j, n - numerical_rank(a), construction, shifts)
