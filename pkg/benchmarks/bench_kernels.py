#!/usr/bin/env python3
"""Time the numba-compiled kernels against the pure numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]

The numpy timings come from a child process started with
GALIKIT_DISABLE_JIT=1, so nested kernel calls are uncompiled as well.
"""
import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

from galikit import _kernels as K
from galikit._jit import JIT_ENABLED


def best_of(fn, args, repeat, inner):
    fn(*args)  # warm up, compiles on first call
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        for _ in range(inner):
            fn(*args)
        best = min(best, (time.perf_counter() - t0) / inner)
    return best


def cases(rng):
    xi = rng.standard_normal(10)
    M = K.gal_exp(xi)
    n = 2000
    times = np.cumsum(np.r_[0.0, np.full(n - 1, 5e-3)])
    imu = (times, rng.standard_normal((n, 3)), rng.standard_normal((n, 3)),
           np.zeros((n, 3)), np.zeros((n, 3)))
    F0 = np.eye(5)
    rot = (F0, np.array([0, 0, 7.29e-5]), np.array([0, 0, -9.8]), 0.1 * rng.standard_normal((n, 3)),
           rng.standard_normal((n, 3)), 0.0, np.zeros(3), 1.0, 1e-3)
    return [
        ("gal_exp", K.gal_exp, (xi,), 2000),
        ("gal_log", K.gal_log, (M,), 2000),
        ("gal_adjoint", K.gal_adjoint, (M,), 2000),
        ("gal_right_jacobian", K.gal_right_jacobian, (xi,), 200),
        ("exp_batch[1000]", K.exp_batch, (rng.standard_normal((1000, 10)),), 5),
        ("compose_chain[64]", K.compose_chain, (np.stack([K.gal_exp(x) for x in rng.standard_normal((64, 10))]),), 200),
        (f"preintegrate[{n}]", K.preintegrate, imu, 2),
        (f"rk4_rotating[{n}]", K.rk4_rotating, rot, 2),
    ]


def timings(repeat):
    rng = np.random.default_rng(0)
    # the uncompiled path is slow, so it gets fewer inner loops
    scale = 1 if JIT_ENABLED else 10
    return {name: best_of(fn, fargs, repeat, max(1, inner // scale))
            for name, fn, fargs, inner in cases(rng)}


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()
    if args.json:
        print(json.dumps(timings(args.repeat)))
        return
    env = dict(os.environ, GALIKIT_DISABLE_JIT="1")
    child = subprocess.run([sys.executable, __file__, "--json", "--repeat", str(args.repeat)],
                           env=env, capture_output=True, text=True, check=True)
    slow = json.loads(child.stdout)
    fast = timings(args.repeat) if JIT_ENABLED else {}
    print(f"{'kernel':24s} {'numpy (us)':>12s} {'numba (us)':>12s} {'speedup':>9s}")
    for name, t in slow.items():
        if name in fast:
            print(f"{name:24s} {t * 1e6:12.1f} {fast[name] * 1e6:12.1f} {t / fast[name]:8.1f}x")
        else:
            print(f"{name:24s} {t * 1e6:12.1f} {'-':>12s} {'-':>9s}")


if __name__ == "__main__":
    main()
