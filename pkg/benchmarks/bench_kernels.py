#!/usr/bin/env python3
"""Benchmark: compiled coefficient kernel vs the pure-Python fallback.

Runs the same workloads twice, once per kernel (the pure kernel is selected
by re-executing this script with QSERIES_PURE=1), and prints a comparison
table.  Workloads:

  * raw kernel loops (binomial multiply/divide, dense product, inverse)
  * one real verification (g1x5pp at t^200)
  * the full catalog verification at t^120

Usage: python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import json
import os
import subprocess
import sys
import time
from fractions import Fraction


def bench_raw(reps):
    from qseries import kernel

    coeffs = [((-1) ** i) * (i % 7 == 0 and 1 or i % 3) for i in range(400)]
    t0 = time.perf_counter()
    for _ in range(reps):
        kernel.mul_binom(coeffs, 7, 1, 400)
    t_mul = time.perf_counter() - t0

    t0 = time.perf_counter()
    for _ in range(reps):
        kernel.div_binom(coeffs, 7, 1, 400)
    t_div = time.perf_counter() - t0

    t0 = time.perf_counter()
    for _ in range(max(1, reps // 50)):
        kernel.mul_dense(coeffs, coeffs, 400)
    t_dense = time.perf_counter() - t0

    ones = [1] + [Fraction(1, k) for k in range(1, 200)]
    t0 = time.perf_counter()
    for _ in range(max(1, reps // 50)):
        kernel.inv_dense(ones, 200)
    t_inv = time.perf_counter() - t0
    return {"mul_binom": t_mul, "div_binom": t_div, "mul_dense": t_dense, "inv_dense": t_inv}


def bench_verify():
    from qseries.registry import load_catalog, verify_all, verify_identity

    cat = load_catalog()
    t0 = time.perf_counter()
    rep = verify_identity(cat.get("g1x5pp"), order=200)
    t_one = time.perf_counter() - t0
    assert rep.status == "verified"

    t0 = time.perf_counter()
    reports = verify_all(cat, order=120)
    t_all = time.perf_counter() - t0
    assert all(r.status == "verified" for r in reports)
    return {"verify_g1x5pp_t200": t_one, "verify_all_t120": t_all}


def run(reps):
    from qseries import kernel

    out = {"kernel": kernel.IMPLEMENTATION}
    out.update(bench_raw(reps))
    out.update(bench_verify())
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true")
    ap.add_argument("--inner", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()
    reps = 500 if args.quick else 3000

    if args.inner:
        print(json.dumps(run(reps)))
        return

    results = []
    for pure in ("0", "1"):
        env = dict(os.environ, QSERIES_PURE=pure) if pure == "1" else \
            {k: v for k, v in os.environ.items() if k != "QSERIES_PURE"}
        cmd = [sys.executable, __file__, "--inner"]
        if args.quick:
            cmd.append("--quick")
        proc = subprocess.run(cmd, env=env, capture_output=True, text=True)
        if proc.returncode:
            sys.stderr.write(proc.stderr)
            sys.exit(1)
        results.append(json.loads(proc.stdout.strip().splitlines()[-1]))

    names = [k for k in results[0] if k != "kernel"]
    width = max(len(n) for n in names)
    print(f"{'workload':<{width}}  {results[0]['kernel']:>10}  {results[1]['kernel']:>10}  speedup")
    for n in names:
        a, b = results[0][n], results[1][n]
        print(f"{n:<{width}}  {a:>9.3f}s  {b:>9.3f}s  {b / a:6.2f}x")


if __name__ == "__main__":
    main()
