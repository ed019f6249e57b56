#!/usr/bin/env python3
"""Time the pure-Python kernels against the compiled extension.

Both kernel modules are imported side by side and fed the exact same
flat-array inputs, so the numbers compare the implementations, not the
workloads.  Outputs are also cross-checked byte for byte while we are
at it; a mismatch aborts the run.

The end-to-end row re-runs the solver in subprocesses with
DAFBE_KERNELS forced, because the backend is chosen once at import.

Usage:
    python3 benchmarks/compare_backends.py [--repeats N] [--skip-solve]
"""

import argparse
import itertools
import os
import random
import subprocess
import sys
import time
from array import array

from dafbe import _kernels_py

try:
    from dafbe import _kernels_cy
except ImportError:
    print("compiled extension not importable; build it first (pip install -e .)")
    sys.exit(1)

from dafbe.automata import Dafsa


def flat(d):
    return (d.state_count, d.t_off, d.t_sym, d.t_dst, d.acc, d.start)


def rand_words(rng, domains, n):
    return sorted({tuple(rng.randrange(k) for k in domains) for _ in range(n)})


def sorted_digit_buffer(words, length):
    buf = array("i")
    for w in words:
        buf.extend(w)
    return buf


def bench(fn, repeats):
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeats", type=int, default=5, help="keep the best of N runs")
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--skip-solve", action="store_true",
                    help="kernel microbenchmarks only, no subprocess solve")
    args = ap.parse_args()
    rng = random.Random(args.seed)

    length = 10
    domains = tuple([3] * length)
    words_a = rand_words(rng, domains, 4000)
    words_b = rand_words(rng, domains, 4000)
    a = Dafsa.from_strings(domains, words_a)
    b = Dafsa.from_strings(domains, words_b)

    full = sorted(itertools.product(*[range(2)] * 14))
    full_buf = sorted_digit_buffer(full, 14)
    buf_a = sorted_digit_buffer(words_a, length)

    rows = []

    def workload(name, call):
        t_py, out_py = bench(lambda: call(_kernels_py), args.repeats)
        t_cy, out_cy = bench(lambda: call(_kernels_cy), args.repeats)
        if out_py != out_cy:
            print(f"OUTPUT MISMATCH in {name}; not publishing numbers for broken code")
            sys.exit(2)
        rows.append((name, t_py, t_cy))

    workload(
        f"compile {len(words_a)} sorted strings (len {length})",
        lambda K: tuple(K.compile_sorted(buf_a, len(words_a), length, domains)),
    )
    workload(
        "compile 2^14 binary strings",
        lambda K: tuple(K.compile_sorted(full_buf, len(full), 14, (2,) * 14)),
    )
    for mode, label in ((0, "intersect"), (1, "union"), (2, "difference")):
        workload(
            f"{label} 4k x 4k automata",
            lambda K, m=mode: tuple(K.product(m, *flat(a), *flat(b), domains)),
        )
    workload(
        "minimize (already minimal)",
        lambda K: tuple(K.minimize(*flat(a), domains)),
    )
    for lvl in (0, length // 2, length - 1):
        workload(
            f"remove level {lvl} (determinize)",
            lambda K, l=lvl: tuple(K.remove_level(*flat(a), domains, l)),
        )

    if not args.skip_solve:
        probe = (
            "import time, random\n"
            "from dafbe import generate\n"
            "from dafbe.model import bucket_elimination\n"
            "from dafbe._backend import BACKEND\n"
            "m = generate.model_in_width_band(0, 13, 17)\n"
            "t0 = time.perf_counter()\n"
            "r = bucket_elimination(m)\n"
            "print(BACKEND, time.perf_counter() - t0, r.optimum)\n"
        )
        times = {}
        opts = {}
        for backend in ("python", "compiled"):
            best = float("inf")
            for _ in range(max(1, args.repeats // 2)):
                out = subprocess.run(
                    [sys.executable, "-c", probe],
                    capture_output=True, text=True, check=True,
                    env={**os.environ, "DAFBE_KERNELS": backend},
                ).stdout.split()
                assert out[0] == backend, out
                best = min(best, float(out[1]))
                opts[backend] = out[2]
            times[backend] = best
        if opts["python"] != opts["compiled"]:
            print("OUTPUT MISMATCH in end-to-end solve")
            sys.exit(2)
        rows.append(("end-to-end solve (w*~13, n=30)", times["python"], times["compiled"]))

    width = max(len(r[0]) for r in rows)
    print(f"{'workload'.ljust(width)}  {'python':>10}  {'compiled':>10}  {'speedup':>8}")
    for name, t_py, t_cy in rows:
        print(f"{name.ljust(width)}  {t_py:>9.4f}s  {t_cy:>9.4f}s  {t_py / t_cy:>7.1f}x")


if __name__ == "__main__":
    main()
