"""Command-line front end.

Exit codes: 0 success (or certificate verdict true), 1 certificate verdict
false, 2 unreadable or malformed input, 3 precondition violation.
"""
from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import io
from .core import GershError, as_matrix, classical_disks
from .geometry import gram_verdict, hadamard_octahedron, octahedron_verdict
from .oracle import eigenvalues, plant_multiple_eigenvalue, plant_shifted_dominant
from .reduced_real import reduced_disks_cor14, reduced_disks_thm12
from .shifted_complex import check_condition3, localization_union, median_shifts, search_two_sided
from .structured import almost_symmetric_pair_disks, normal_pair_disks
from .svg import disks_svg

EXIT_OK, EXIT_FALSE, EXIT_PARSE, EXIT_PRECONDITION = 0, 1, 2, 3


class _ParseError(Exception):
    pass


def parse_complex(text: str) -> complex:
    """``"RE"`` or ``"RE,IM"``."""
    parts = text.split(",")
    if len(parts) not in (1, 2):
        raise _ParseError(f"cannot parse complex number {text!r}")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise _ParseError(f"cannot parse complex number {text!r}") from None
    if not all(np.isfinite(vals)):
        raise _ParseError(f"non-finite complex number {text!r}")
    return complex(vals[0], vals[1] if len(vals) == 2 else 0.0)


def _emit(doc, out):
    text = io.dumps(doc)
    if out:
        io.write_atomic(out, text)
    else:
        sys.stdout.write(text)


def _seed(arg_seed: int) -> int:
    env = os.environ.get("GERSH_SEED")
    if env is None:
        return arg_seed
    try:
        return int(env)
    except ValueError:
        raise _ParseError(f"GERSH_SEED must be an integer, got {env!r}") from None


def cmd_disks(args) -> int:
    a = io.read_matrix(args.input)
    lam = parse_complex(args.lam) if args.lam is not None else None
    doc = {"variant": args.variant}
    if args.variant == "classical":
        u = classical_disks(a)
    elif args.variant == "thm12":
        u = reduced_disks_thm12(a)
    elif args.variant == "cor14":
        u = reduced_disks_cor14(a)
    else:
        shifts = median_shifts(a)
        u = localization_union(a, shifts)
        doc["shifts"] = [io.cplx(z) for z in shifts.row_shifts]
    doc["n"] = u.n
    doc["disks"] = io.disks_to_json(u)
    if lam is not None:
        doc["lambda"] = io.cplx(lam)
        doc["contains_lambda"] = u.contains(lam)
    _emit(doc, args.out)
    if args.svg:
        pts = eigenvalues(a).eigenvalues if args.plot_eigenvalues else ()
        io.write_atomic(args.svg, disks_svg(u, pts, lam, title=f"{args.variant} disks"))
    return EXIT_OK


def cmd_certify(args) -> int:
    a = as_matrix(io.read_matrix(args.input))
    lam = parse_complex(args.lam)
    if args.two_sided:
        cert = search_two_sided(a, lam, rounds=args.rounds)
    else:
        cert = check_condition3(a, lam)
    doc = {"mode": "two-sided" if args.two_sided else "one-sided", "n": cert.n}
    doc.update(io.certificate_to_json(cert))
    _emit(doc, args.out)
    return EXIT_OK if cert.verdict else EXIT_FALSE


def cmd_pairdisks(args) -> int:
    a = io.read_matrix(args.input)
    lam, mu = parse_complex(args.lam), parse_complex(args.mu)
    if args.mode == "normal":
        rep = normal_pair_disks(a, lam, mu)
    else:
        rep = almost_symmetric_pair_disks(a, lam, mu)
    _emit(io.pair_report_to_json(rep, args.mode), args.out)
    return EXIT_OK


def cmd_octa(args) -> int:
    if args.octa_cmd == "gen":
        s = hadamard_octahedron(args.order)
        _emit(io.pointset_to_json(s), args.out)
        return EXIT_OK
    if args.gram:
        if args.dimension is None or args.epsilon is None:
            raise GershError("--gram needs --dimension and --epsilon")
        m = io.read_matrix(args.gram)
        eps = args.epsilon
        v = gram_verdict(m, args.dimension, eps, args.relaxed)
        _emit(io.verdict_to_json(v, None, args.dimension, eps), args.out)
        return EXIT_OK
    if not args.input:
        raise GershError("octa needs --input POINTSET, --gram MATRIX, or the 'gen' subcommand")
    s = io.read_pointset(args.input)
    v = octahedron_verdict(s, args.relaxed)
    _emit(io.verdict_to_json(v, s.k, s.dimension, s.epsilon), args.out)
    return EXIT_OK


def cmd_eigs(args) -> int:
    a = io.read_matrix(args.input)
    _emit(io.eigen_to_json(eigenvalues(a, args.cluster_tol)), args.out)
    return EXIT_OK


def cmd_plant(args) -> int:
    seed = _seed(args.seed)
    if args.kind in ("multiple", "jordan"):
        lam = parse_complex(args.lam)
        inst = plant_multiple_eigenvalue(args.n, args.multiplicity, lam, seed, jordan=args.kind == "jordan")
    else:
        inst = plant_shifted_dominant(args.n, args.kind == "shifted-two-sided", args.margin, seed)
    doc = io.matrix_to_json(inst.matrix)
    doc["planted"] = {
        "construction": inst.construction.value,
        "lambda": io.cplx(inst.planted_lambda),
        "geometric_multiplicity": inst.geometric_multiplicity,
        "seed": seed,
    }
    if inst.shifts is not None:
        doc["planted"]["row_shifts"] = [io.cplx(z) for z in inst.shifts.row_shifts]
        col = inst.shifts.col_shifts
        doc["planted"]["col_shifts"] = None if col is None else [io.cplx(z) for z in col]
    _emit(doc, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gersh", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("disks", help="disk families for a matrix")
    d.add_argument("--input", required=True)
    d.add_argument("--variant", choices=["classical", "thm12", "cor14", "shifted"], default="classical")
    d.add_argument("--lambda", dest="lam", metavar="RE[,IM]")
    d.add_argument("--out")
    d.add_argument("--svg")
    d.add_argument("--plot-eigenvalues", action="store_true")
    d.set_defaults(func=cmd_disks)

    c = sub.add_parser("certify", help="rank certificate for A - lambda I")
    c.add_argument("--input", required=True)
    c.add_argument("--lambda", dest="lam", metavar="RE[,IM]", default="0")
    c.add_argument("--two-sided", action="store_true")
    c.add_argument("--rounds", type=int, default=10)
    c.add_argument("--out")
    c.set_defaults(func=cmd_certify)

    q = sub.add_parser("pairdisks", help="disks holding a pair of eigenvalues")
    q.add_argument("--input", required=True)
    q.add_argument("--mode", choices=["normal", "almost-symmetric"], default="almost-symmetric")
    q.add_argument("--lambda", dest="lam", metavar="RE[,IM]", required=True)
    q.add_argument("--mu", metavar="RE[,IM]", required=True)
    q.add_argument("--out")
    q.set_defaults(func=cmd_pairdisks)

    o = sub.add_parser("octa", help="cross-polytope configuration verdict")
    o.add_argument("--input", metavar="POINTSET")
    o.add_argument("--gram", metavar="MATRIX", help="check a Gram matrix directly")
    o.add_argument("--dimension", type=int)
    o.add_argument("--epsilon", type=float)
    o.add_argument("--relaxed", action="store_true")
    o.add_argument("--out")
    o.set_defaults(func=cmd_octa, octa_cmd=None)
    osub = o.add_subparsers(dest="octa_cmd")
    g = osub.add_parser("gen", help="Hadamard near-extremal configuration")
    g.add_argument("--order", type=int, required=True)
    g.add_argument("--out")

    e = sub.add_parser("eigs", help="oracle spectrum with clusters")
    e.add_argument("--input", required=True)
    e.add_argument("--cluster-tol", type=float)
    e.add_argument("--out")
    e.set_defaults(func=cmd_eigs)

    pl = sub.add_parser("plant", help="write a planted test matrix (GERSH_SEED overrides --seed)")
    pl.add_argument("--kind", choices=["multiple", "jordan", "shifted", "shifted-two-sided"], required=True)
    pl.add_argument("--n", type=int, required=True)
    pl.add_argument("--multiplicity", type=int, default=2)
    pl.add_argument("--lambda", dest="lam", metavar="RE[,IM]", default="0")
    pl.add_argument("--margin", type=float, default=1.0)
    pl.add_argument("--seed", type=int, default=0)
    pl.add_argument("--out")
    pl.set_defaults(func=cmd_plant)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (io.FormatError, _ParseError) as exc:
        print(f"gersh: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except GershError as exc:
        print(f"gersh: precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
