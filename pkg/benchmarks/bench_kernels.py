"""Compare the compiled mod-p kernels with the pure-Python fallback.

Run with ``python benchmarks/bench_kernels.py``.  The first table times the raw
kernels on random square matrices; the second runs the linear-algebra and K1
property suites once per backend in a subprocess (``BINARYK_PURE=1`` forces
the fallback).
"""
import argparse
import os
import random
import subprocess
import sys
import timeit

from binaryk.exactrings import _kernels_py

try:
    from binaryk.exactrings import _kernels as _compiled
except ImportError:
    _compiled = None

SUITE_SNIPPET = (
    "import time; from binaryk.suites import run_suites; from binaryk.exactrings import kernels;"
    "t = time.perf_counter(); run_suites(1729, None, {names!r});"
    "print(kernels.BACKEND, round(time.perf_counter() - t, 3))"
)


def random_rows(n, p, rng):
    return [[rng.randrange(p) for _ in range(n)] for _ in range(n)]


def time_kernels(sizes, p, repeat):
    rng = random.Random(0)
    backends = [("python", _kernels_py)] + ([("compiled", _compiled)] if _compiled else [])
    print(f"{'kernel':<8}{'n':>5}" + "".join(f"{name:>14}" for name, _ in backends) + f"{'speedup':>10}")
    for n in sizes:
        a, b = random_rows(n, p, rng), random_rows(n, p, rng)
        for kernel, call in (("matmul", lambda m: m.matmul_mod_p(a, b, p)),
                             ("rref", lambda m: m.rref_mod_p([r[:] for r in a], p)),
                             ("det", lambda m: m.det_mod_p([r[:] for r in a], p))):
            times = [min(timeit.repeat(lambda: call(mod), number=1, repeat=repeat)) for _, mod in backends]
            speed = f"{times[0] / times[1]:>9.1f}x" if len(times) == 2 and times[1] else ""
            print(f"{kernel:<8}{n:>5}" + "".join(f"{t * 1e3:>12.2f}ms" for t in times) + speed)


def time_suites(names):
    code = SUITE_SNIPPET.format(names=names)
    for pure in ("0", "1"):
        env = dict(os.environ, BINARYK_PURE=pure)
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        backend, seconds = out.stdout.split()
        print(f"suites {','.join(names)} with {backend} kernels: {seconds}s")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="8,32,64,128")
    ap.add_argument("--prime", type=int, default=65521)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--suites", default="linalg,k1")
    args = ap.parse_args(argv)
    if _compiled is None:
        print("compiled extension not built; timing the fallback only")
    time_kernels([int(s) for s in args.sizes.split(",")], args.prime, args.repeat)
    time_suites(args.suites.split(","))


if __name__ == "__main__":
    main()
