#!/usr/bin/env python3
"""Compare the pure-Python and compiled GF(2) backends.

Times the raw kernels on seeded random matrices at the shapes the engine
actually produces (action blocks, stacked perp systems, extension-test
row batches), then times one realistic workload end to end in a
subprocess per backend (the backend is chosen at import time).

Usage: python3 benchmarks/bench_f2.py [--quick]
"""

import argparse
import os
import random
import subprocess
import sys
import time

from steenmod import _f2pure

try:
    from steenmod import _f2core
except ImportError:
    _f2core = None

KERNEL_SHAPES = [
    ("action block", 16, 16, 400),
    ("window stack", 120, 30, 120),
    ("deep stack", 400, 60, 40),
    ("constraint batch", 250, 500, 25),
]


def bench_kernels(repeats: int) -> None:
    backends = [("pure", _f2pure)]
    if _f2core is not None:
        backends.append(("compiled", _f2core))
    print(f"{'kernel':<18} {'shape':<12} " +
          " ".join(f"{name:>10}" for name, _ in backends) + "   speedup")
    for label, nrows, ncols, base_reps in KERNEL_SHAPES:
        reps = max(1, base_reps * repeats)
        rng = random.Random(0)
        rows = [rng.getrandbits(ncols) for _ in range(nrows)]
        arows = [rng.getrandbits(nrows) for _ in range(nrows)]
        target = rng.getrandbits(nrows)
        for op in ("rref", "mul", "nullspace", "solve"):
            times = []
            for _, impl in backends:
                t0 = time.perf_counter()
                for _ in range(reps):
                    if op == "rref":
                        impl.rref(list(rows), ncols)
                    elif op == "mul":
                        impl.mul(arows, rows)
                    elif op == "nullspace":
                        impl.nullspace(list(rows), ncols)
                    else:
                        impl.solve(list(rows), ncols, target)
                times.append(time.perf_counter() - t0)
            ratio = times[0] / times[-1] if len(times) > 1 and times[-1] else 1.0
            cells = " ".join(f"{t / reps * 1e6:9.1f}u" for t in times)
            print(f"{op:<18} {nrows}x{ncols:<8} {cells}   {ratio:5.1f}x")


def bench_workload() -> None:
    script = (
        "import time\n"
        "from steenmod import f2\n"
        "from steenmod.milnor import Algebra\n"
        "from steenmod.annihilator import chain_perp_profile, sq_power_chain\n"
        "from steenmod.gmodule import Window, dual_regular, regular, validate\n"
        "t0 = time.time()\n"
        "m = dual_regular(Algebra.full(), Window(-26, 0))\n"
        "prof = chain_perp_profile(sq_power_chain(4), m)\n"
        "assert validate(regular(Algebra.full(), Window(0, 12))) == []\n"
        "print(f'{f2.backend_name()} workload: {time.time() - t0:.2f}s')\n"
    )
    for backend in ("pure", "compiled"):
        if backend == "compiled" and _f2core is None:
            print("compiled backend not built; skipping workload")
            continue
        env = dict(os.environ, STEENMOD_F2_BACKEND=backend)
        proc = subprocess.run([sys.executable, "-c", script], env=env,
                              capture_output=True, text=True)
        sys.stdout.write(proc.stdout or proc.stderr)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true",
                        help="fewer repetitions")
    args = parser.parse_args()
    if _f2core is None:
        print("note: compiled core not built; timing the pure backend only")
    bench_kernels(1 if args.quick else 3)
    print()
    bench_workload()


if __name__ == "__main__":
    main()
