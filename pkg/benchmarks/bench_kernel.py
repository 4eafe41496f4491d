"""Time the compiled and pure-Python exploration kernels on the built-in models.

    python3 benchmarks/bench_kernel.py [--repeat 5]
"""

import argparse
import timeit

from rrverify import kernel
from rrverify.explore import druba
from rrverify.models import load_builtin

CASES = [
    ("example2", 3, None),
    ("program-p", 3, "alpha3"),
    ("program-p", 4, "alpha3"),
    ("ticket-lock", 4, None),
    ("example3", 3, None),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    impls = kernel.available()
    print(f"{'model':<14}{'n':>3}  " + "".join(f"{k:>12}" for k in impls) + "     speedup")
    for name, n, abstraction in CASES:
        b = load_builtin(name, n, abstraction, None)
        best = {}
        for label, mod in impls.items():
            run = lambda: druba(b.program, b.abstraction, b.prop, kernel=mod)
            best[label] = min(timeit.repeat(run, number=1, repeat=args.repeat))
        ratio = best["python"] / best["cython"] if "cython" in best else float("nan")
        cells = "".join(f"{best[k] * 1000:>10.2f}ms" for k in impls)
        print(f"{name:<14}{n:>3}  {cells}  {ratio:>8.2f}x")


if __name__ == "__main__":
    main()
