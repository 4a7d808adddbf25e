"""Compare the compiled and pure-Python cyclotomic kernels.

Two measurements:

* raw kernel calls (``mul``, ``fma``) on random operands, timed with timeit;
* two end-to-end workloads run in a fresh interpreter per backend, selected
  through ``RSPIN_PURE_PYTHON``: a dense matrix product over Q(zeta_15)
  (arithmetic bound) and axiom verification plus a profile (dominated by
  sparse bookkeeping, where the backend matters little).

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from rspin import _pykernels
from rspin.cyclotomic import _phi_tail

try:
    from rspin import _ckernels
except ImportError:
    _ckernels = None

WORKLOAD = """
import random, time
from rspin.catalog import make_d, make_c
from rspin.cyclotomic import CycQ
from rspin.frobenius import verify
from rspin.invariants import profile
from rspin.kernels import BACKEND
rng = random.Random(1)
n = 30
m = [[CycQ(15, [rng.randint(-5, 5) for _ in range(8)]) for _ in range(n)] for _ in range(n)]
t = time.perf_counter()
for i in range(n):
    for j in range(n):
        s = CycQ.zero(15)
        for k in range(n):
            s = s.fma(m[i][k], m[k][j])
matmul = time.perf_counter() - t
t = time.perf_counter()
assert verify(make_d(6)).passed
assert verify(make_c(8)).passed
profile(make_d(12), 4)
print(BACKEND, matmul, time.perf_counter() - t)
"""


def operands(r, size, rng):
    phi = _phi_tail(r)
    n = len(phi)
    vec = lambda: [rng.randint(-size, size) for _ in range(n)]  # noqa: E731
    return phi, vec(), rng.randint(1, 1000), vec(), rng.randint(1, 1000), vec(), rng.randint(1, 1000)


def bench_raw(repeat):
    rng = random.Random(0)
    rows = []
    for r in (3, 12, 15, 24):
        ops = [operands(r, 100, rng) for _ in range(200)]
        for name, mod in (("python", _pykernels), ("cython", _ckernels)):
            if mod is None:
                continue

            def run(mod=mod):
                for phi, a, ad, b, bd, c, cd in ops:
                    mod.mul(a, ad, b, bd, phi)
                    mod.fma(c, cd, a, ad, b, bd, phi)

            best = min(timeit.repeat(run, number=5, repeat=repeat)) / (5 * len(ops))
            rows.append((r, name, best * 1e6))
    return rows


def bench_workload():
    out = {}
    for name, env in (("cython", {}), ("python", {"RSPIN_PURE_PYTHON": "1"})):
        full = dict(os.environ)
        full.pop("RSPIN_PURE_PYTHON", None)
        full.update(env)
        proc = subprocess.run([sys.executable, "-c", WORKLOAD], env=full,
                              capture_output=True, text=True, check=True)
        backend, matmul, algebra = proc.stdout.split()
        out[name] = (backend, float(matmul), float(algebra))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; only the Python backend is timed")
    print("raw kernels (microseconds per mul+fma pair)")
    raw = bench_raw(args.repeat)
    for r, name, us in raw:
        print(f"  r={r:<3d} {name:7s} {us:8.2f}")
    print("end-to-end workloads (seconds)")
    print(f"  {'backend':8s} {'matmul':>8s} {'verify+profile':>15s}")
    for name, (backend, matmul, algebra) in bench_workload().items():
        if backend != name:
            print(f"  warning: requested {name}, got {backend}")
        print(f"  {backend:8s} {matmul:8.2f} {algebra:15.2f}")


if __name__ == "__main__":
    main()
