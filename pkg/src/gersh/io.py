"""Matrix / point-set file formats and JSON report encoding.

Matrix files are either JSON ``{"rows": r, "cols": c, "entries": [[re, im], ...]}``
(row-major) or CSV of real numbers, chosen by extension. Point-set files are
JSON ``{"dimension": d, "epsilon": eps, "pairs": [{"p": [...], "q": [...]}, ...]}``.
"""
from __future__ import annotations

import csv
import json
import os
import tempfile
from pathlib import Path

import numpy as np

from .core import Certificate, DiskUnion, as_matrix
from .geometry import FeasibilityVerdict, PointPairSet
from .oracle import EigenSolution
from .structured import PairDiskReport


class FormatError(ValueError):
    """Malformed input file."""


def _number(v, what: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise FormatError(f"{what}: expected a number, got {v!r}")
    v = float(v)
    if not np.isfinite(v):
        raise FormatError(f"{what}: non-finite value")
    return v


def parse_matrix_json(doc) -> np.ndarray:
    if not isinstance(doc, dict):
        raise FormatError("matrix JSON must be an object")
    try:
        rows, cols, entries = doc["rows"], doc["cols"], doc["entries"]
    except KeyError as exc:
        raise FormatError(f"matrix JSON missing key {exc}") from None
    if not (isinstance(rows, int) and isinstance(cols, int)) or rows < 1 or cols < 1:
        raise FormatError("rows and cols must be positive integers")
    if not isinstance(entries, list) or len(entries) != rows * cols:
        raise FormatError(f"expected {rows * cols} entries")
    vals = []
    for k, e in enumerate(entries):
        if isinstance(e, list) and len(e) == 2:
            vals.append(complex(_number(e[0], f"entry {k}"), _number(e[1], f"entry {k}")))
        else:
            raise FormatError(f"entry {k} must be a [re, im] pair")
    return np.array(vals, dtype=np.complex128).reshape(rows, cols)


def parse_matrix_csv(text: str) -> np.ndarray:
    rows = [r for r in csv.reader(text.splitlines()) if r and any(c.strip() for c in r)]
    if not rows:
        raise FormatError("empty CSV")
    width = len(rows[0])
    out = []
    for i, r in enumerate(rows):
        if len(r) != width:
            raise FormatError(f"CSV row {i + 1} has {len(r)} fields, expected {width}")
        try:
            vals = [float(c) for c in r]
        except ValueError:
            raise FormatError(f"CSV row {i + 1}: not a real number") from None
        if not all(np.isfinite(vals)):
            raise FormatError(f"CSV row {i + 1}: non-finite value")
        out.append(vals)
    return np.array(out, dtype=np.float64).astype(np.complex128)


def read_matrix(path) -> np.ndarray:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    suffix = path.suffix.lower()
    if suffix == ".json":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: invalid JSON ({exc.msg})") from None
        return parse_matrix_json(doc)
    if suffix == ".csv":
        return parse_matrix_csv(text)
    raise FormatError(f"{path}: unknown matrix file extension (use .json or .csv)")


def matrix_to_json(a) -> dict:
    a = as_matrix(a, square=False)
    return {
        "rows": a.shape[0],
        "cols": a.shape[1],
        "entries": [[float(z.real), float(z.imag)] for z in a.reshape(-1)],
    }


def read_pointset(path) -> PointPairSet:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc.msg})") from None
    return parse_pointset(doc)


def parse_pointset(doc) -> PointPairSet:
    if not isinstance(doc, dict):
        raise FormatError("point-set JSON must be an object")
    try:
        d, eps, pairs = doc["dimension"], doc["epsilon"], doc["pairs"]
    except KeyError as exc:
        raise FormatError(f"point-set JSON missing key {exc}") from None
    if not isinstance(d, int) or d < 1:
        raise FormatError("dimension must be a positive integer")
    eps = _number(eps, "epsilon")
    if not isinstance(pairs, list) or not pairs:
        raise FormatError("pairs must be a non-empty list")
    p, q = [], []
    for k, pair in enumerate(pairs):
        if not isinstance(pair, dict) or "p" not in pair or "q" not in pair:
            raise FormatError(f"pair {k} must have 'p' and 'q'")
        for name, dest in (("p", p), ("q", q)):
            vec = pair[name]
            if not isinstance(vec, list) or len(vec) != d:
                raise FormatError(f"pair {k}: '{name}' must have length {d}")
            dest.append([_number(v, f"pair {k} {name}") for v in vec])
    return PointPairSet(d, np.array(p), np.array(q), eps)


def pointset_to_json(s: PointPairSet) -> dict:
    return {
        "dimension": s.dimension,
        "epsilon": s.epsilon,
        "pairs": [{"p": [float(v) for v in p], "q": [float(v) for v in q]} for p, q in zip(s.p, s.q)],
    }


# --- reports -------------------------------------------------------------------

def cplx(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def disks_to_json(u: DiskUnion) -> list[dict]:
    return [{"row": r, "center": cplx(d.center), "radius": d.radius} for d, r in zip(u.disks, u.rows)]


def certificate_to_json(c: Certificate) -> dict:
    col = c.shifts.col_shifts
    return {
        "verdict": c.verdict,
        "rank_lower_bound": c.rank_lower_bound,
        "lambda": cplx(c.lambda_),
        "min_margin": c.min_margin,
        "row_margins": [float(m) for m in c.row_margins],
        "shifts": {
            "row": [cplx(z) for z in c.shifts.row_shifts],
            "col": None if col is None else [cplx(z) for z in col],
        },
    }


def pair_report_to_json(r: PairDiskReport, mode: str) -> dict:
    out = {
        "mode": mode,
        "lambda": cplx(r.lambda_),
        "mu": cplx(r.mu),
        "enlargement": r.enlargement,
        "witness_row": r.witness_row,
        "disks": disks_to_json(r.disks),
    }
    if r.defect is not None:
        out["delta"] = r.defect
    return out


def verdict_to_json(v: FeasibilityVerdict, k: int | None, dimension: int, epsilon: float) -> dict:
    return {
        "conclusion": v.conclusion.value,
        "constraints_ok": v.constraints_ok,
        "bound_applicable": v.bound_applicable,
        "bound": v.bound,
        "dimension": dimension,
        "epsilon": epsilon,
        "k": k,
        "gram": None if v.gram is None else [[float(x) for x in row] for row in v.gram],
        "certificate": None if v.certificate is None else certificate_to_json(v.certificate),
    }


def eigen_to_json(e: EigenSolution) -> dict:
    return {
        "n": len(e.eigenvalues),
        "eigenvalues": [cplx(z) for z in e.eigenvalues],
        "clusters": [{"value": cplx(z), "multiplicity": m} for z, m in e.clusters],
        "residual": e.residual,
        "cluster_tol": e.cluster_tol,
    }


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def write_atomic(path, text: str) -> None:
    """Write via a temporary file in the target directory, then rename over ``path``."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
