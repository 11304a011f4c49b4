"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat 5] [--json out.json]

Times the Weiszfeld iteration on random point sets and the shifted-margin
kernel on random matrices, checks that both backends return identical
results, and prints the speedup.
"""
import argparse
import json
import sys
import timeit

import numpy as np

from gersh.kernels import available_backends, shifted_margins, weiszfeld_iterate


def weiszfeld_workload(rng, sets, size):
    data = []
    for _ in range(sets):
        pts = np.sqrt(rng.random(size)) * np.exp(2j * np.pi * rng.random(size))
        data.append((pts.real.copy(), pts.imag.copy(), float(pts.real[0]), float(pts.imag[0])))
    return data


def run_weiszfeld(impl, data):
    return [weiszfeld_iterate(px, py, x, y, 1e-10, 1000, 1e-14, impl=impl) for px, py, x, y in data]


def margin_workload(rng, count, n):
    out = []
    for _ in range(count):
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        c = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        e = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        out.append((a, 0.3 - 0.1j, c, e))
    return out


def run_margins(impl, data):
    return [shifted_margins(a, lam, c, e, impl=impl) for a, lam, c, e in data]


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json")
    args = p.parse_args(argv)

    backends = available_backends()
    if "cython" not in backends:
        print("compiled extension not built; only the Python backend is available", file=sys.stderr)
    rng = np.random.default_rng(args.seed)
    cases = {
        "weiszfeld m=12 x200": (run_weiszfeld, weiszfeld_workload(rng, 200, 12)),
        "weiszfeld m=200 x20": (run_weiszfeld, weiszfeld_workload(rng, 20, 200)),
        "margins n=8 x500": (run_margins, margin_workload(rng, 500, 8)),
        "margins n=64 x20": (run_margins, margin_workload(rng, 20, 64)),
    }

    rows = []
    for label, (fn, data) in cases.items():
        timings, results = {}, {}
        for name, impl in backends.items():
            results[name] = fn(impl, data)
            timings[name] = min(timeit.repeat(lambda: fn(impl, data), number=1, repeat=args.repeat))
        if len(results) == 2:
            same = all(np.array_equal(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
                       for x, y in zip(results["python"], results["cython"]))
        else:
            same = None
        rows.append({"case": label, "seconds": timings, "identical": same})

    print(f"{'case':<22}{'python [s]':>12}{'cython [s]':>12}{'speedup':>10}  identical")
    for r in rows:
        py = r["seconds"]["python"]
        cy = r["seconds"].get("cython")
        speed = f"{py / cy:9.1f}x" if cy else "      n/a"
        cys = f"{cy:12.4f}" if cy else f"{'n/a':>12}"
        print(f"{r['case']:<22}{py:12.4f}{cys}{speed}  {r['identical']}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
