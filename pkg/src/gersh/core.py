"""Matrix validation, disks, certificates, and classical Gershgorin disks."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np


class GershError(ValueError):
    """Base class for precondition violations raised by this package."""


class NotSquareError(GershError):
    pass


class NotRealError(GershError):
    pass


class NonFiniteError(GershError):
    pass


def as_matrix(a, *, square: bool = True) -> np.ndarray:
    """Return ``a`` as a read-only complex128 2-D array.

    Rejects non-finite entries, empty shapes and (by default) non-square input.
    """
    arr = np.array(a, dtype=np.complex128, copy=True)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise GershError(f"expected a non-empty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteError("matrix has non-finite entries")
    if square and arr.shape[0] != arr.shape[1]:
        raise NotSquareError(f"expected a square matrix, got shape {arr.shape}")
    arr.flags.writeable = False
    return arr


def as_real_matrix(a, *, square: bool = True) -> np.ndarray:
    """Like :func:`as_matrix` but requires exactly zero imaginary parts; returns float64."""
    arr = as_matrix(a, square=square)
    if np.any(arr.imag != 0.0):
        raise NotRealError("matrix has non-zero imaginary parts")
    out = np.ascontiguousarray(arr.real)
    out.flags.writeable = False
    return out


def is_real(a: np.ndarray) -> bool:
    return not np.iscomplexobj(a) or not np.any(np.asarray(a).imag != 0.0)


def _finite_complex(z) -> complex:
    z = complex(z)
    if not (np.isfinite(z.real) and np.isfinite(z.imag)):
        raise NonFiniteError(f"non-finite scalar {z!r}")
    return z


@dataclass(frozen=True)
class Disk:
    """Closed disk ``{z : |z - center| <= radius}`` in the complex plane."""

    center: complex
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", _finite_complex(self.center))
        r = float(self.radius)
        if not np.isfinite(r) or r < 0:
            raise GershError(f"disk radius must be finite and >= 0, got {r}")
        object.__setattr__(self, "radius", r)

    def contains(self, z, tol: float = 0.0) -> bool:
        return disk_contains(self, z, tol)


def disk_contains(d: Disk, z, tol: float = 0.0) -> bool:
    if tol < 0:
        raise GershError("tol must be >= 0")
    return abs(complex(z) - d.center) <= d.radius + tol


@dataclass(frozen=True)
class DiskUnion:
    """Localization region built from per-row disks.

    ``rows[k]`` is the source row of ``disks[k]``. Most families carry one disk
    per row. A row may carry several disks (odd-order median intervals), in
    which case the row localizes ``z`` only if ``z`` lies in every one of them;
    the region is the union over rows of these per-row intersections.
    """

    disks: tuple[Disk, ...]
    rows: tuple[int, ...]
    n: int

    @classmethod
    def one_per_row(cls, centers: Sequence[complex], radii: Sequence[float]) -> "DiskUnion":
        disks = tuple(Disk(c, r) for c, r in zip(centers, radii))
        return cls(disks, tuple(range(len(disks))), len(disks))

    def __len__(self) -> int:
        return len(self.disks)

    def __iter__(self) -> Iterator[Disk]:
        return iter(self.disks)

    def row_disks(self, i: int) -> list[Disk]:
        return [d for d, r in zip(self.disks, self.rows) if r == i]

    def containing_rows(self, z, tol: float = 0.0) -> list[int]:
        hits = []
        for i in range(self.n):
            ds = self.row_disks(i)
            if ds and all(d.contains(z, tol) for d in ds):
                hits.append(i)
        return hits

    def contains(self, z, tol: float = 0.0) -> bool:
        return bool(self.containing_rows(z, tol))


@dataclass(frozen=True, eq=False)
class ShiftVector:
    """Per-row shifts ``c_i`` and optional per-column shifts ``e_j``."""

    row_shifts: np.ndarray
    col_shifts: np.ndarray | None = None

    def __post_init__(self):
        c = np.array(self.row_shifts, dtype=np.complex128).reshape(-1)
        if not np.all(np.isfinite(c)):
            raise NonFiniteError("row shifts must be finite")
        c.flags.writeable = False
        object.__setattr__(self, "row_shifts", c)
        if self.col_shifts is not None:
            e = np.array(self.col_shifts, dtype=np.complex128).reshape(-1)
            if e.shape != c.shape:
                raise GershError("row and column shifts must have equal length")
            if not np.all(np.isfinite(e)):
                raise NonFiniteError("column shifts must be finite")
            e.flags.writeable = False
            object.__setattr__(self, "col_shifts", e)

    @classmethod
    def zeros(cls, n: int, two_sided: bool = False) -> "ShiftVector":
        return cls(np.zeros(n), np.zeros(n) if two_sided else None)

    def __len__(self) -> int:
        return len(self.row_shifts)


@dataclass(frozen=True, eq=False)
class Certificate:
    """Outcome of a (shifted) diagonal-dominance check.

    ``rank_lower_bound`` is ``n`` for plain dominance, ``n - 1`` with row shifts,
    ``n - 2`` with row and column shifts, and ``0`` when nothing is certified.
    """

    verdict: bool
    row_margins: np.ndarray
    shifts: ShiftVector
    rank_lower_bound: int
    lambda_: complex = 0j

    @property
    def n(self) -> int:
        return len(self.row_margins)

    @property
    def min_margin(self) -> float:
        return float(np.min(self.row_margins))


def make_certificate(margins, shifts: ShiftVector, lam, tier: int) -> Certificate:
    """Build a certificate; ``tier`` is the rank deficit allowed on success (0, 1 or 2)."""
    margins = np.asarray(margins, dtype=np.float64)
    verdict = bool(np.all(margins > 0.0))
    rank = max(len(margins) - tier, 0) if verdict else 0
    return Certificate(verdict, margins, shifts, rank, complex(lam))


def classical_disks(a) -> DiskUnion:
    """Gershgorin disks ``D(a_ii, sum_{j != i} |a_ij|)``."""
    a = as_matrix(a)
    mag = np.abs(a)
    np.fill_diagonal(mag, 0.0)
    return DiskUnion.one_per_row(np.diagonal(a), mag.sum(axis=1))


def is_diagonally_dominant(a) -> Certificate:
    """Strict row diagonal dominance; on success ``rank(a) = n``."""
    from .kernels import shifted_margins

    a = as_matrix(a)
    n = a.shape[0]
    zeros = np.zeros(n, dtype=np.complex128)
    margins = shifted_margins(a, 0.0, zeros, zeros)
    return make_certificate(margins, ShiftVector.zeros(n), 0.0, tier=0)
