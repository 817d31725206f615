"""Compare the compiled and pure-Python series kernels.

    python benchmarks/bench_kernels.py [--s 2] [--n 64] [--repeat 200] [--depth 8]

Times the raw kernel calls at series length n, then a whole rational census
run in a subprocess per backend.
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import timeit

from astower._kernels import available_backends, make_kernel
from astower.gf import FieldCtx, _antilog_tables


def kernel_timings(s: int, n: int, repeat: int) -> dict:
    ctx = FieldCtx(s)
    tables = _antilog_tables(s, ctx.modulus) if s <= 16 else (None, None)
    rng = random.Random(0)
    a = [rng.randrange(1, ctx.q)] + [rng.randrange(ctx.q) for _ in range(n - 1)]
    b = [rng.randrange(ctx.q) for _ in range(n)]
    T = [0] + b[1:]
    out = {}
    for backend in available_backends():
        k = make_kernel(s, ctx.modulus, *tables, backend=backend)
        out[backend] = {
            "mul_trunc": timeit.timeit(lambda: k.mul_trunc(a, b, n), number=repeat) / repeat,
            "inv_trunc": timeit.timeit(lambda: k.inv_trunc(a, n), number=repeat) / repeat,
            "compose_trunc": timeit.timeit(lambda: k.compose_trunc(b, T, n),
                                           number=max(1, repeat // 10)) / max(1, repeat // 10),
        }
    return out


def census_timing(s: int, depth: int, backend: str) -> float:
    code = ("import time; from astower.census import rational_run; from astower.gf import FieldCtx;"
            f"t=time.perf_counter(); rational_run(FieldCtx({s}), {depth});"
            "print(time.perf_counter()-t)")
    env = dict(os.environ)
    if backend == "python":
        env["ASTOWER_PURE_PYTHON"] = "1"
    else:
        env.pop("ASTOWER_PURE_PYTHON", None)
    res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True)
    return float(res.stdout.strip())


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--s", type=int, default=2)
    ap.add_argument("--n", type=int, default=64)
    ap.add_argument("--repeat", type=int, default=200)
    ap.add_argument("--depth", type=int, default=8)
    args = ap.parse_args(argv)

    backends = available_backends()
    print(f"GF(2^{args.s}), series length {args.n}, backends: {', '.join(backends)}")
    kt = kernel_timings(args.s, args.n, args.repeat)
    print(f"{'kernel':<15}" + "".join(f"{b:>14}" for b in backends) + "   speedup")
    for op in ("mul_trunc", "inv_trunc", "compose_trunc"):
        cells = "".join(f"{kt[b][op] * 1e6:>12.1f}us" for b in backends)
        speed = f"{kt['python'][op] / kt['cython'][op]:8.1f}x" if "cython" in kt else ""
        print(f"{op:<15}{cells}{speed}")
    times = {b: census_timing(args.s, args.depth, b) for b in backends}
    cells = "".join(f"{times[b]:>13.2f}s" for b in backends)
    speed = f"{times['python'] / times['cython']:8.1f}x" if "cython" in times else ""
    print(f"{'census d=' + str(args.depth):<15}{cells}{speed}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
