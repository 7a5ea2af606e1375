"""Time the isometry-counting kernel in each available backend.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--quick]
"""

import argparse
import time

from artifact import isometry
from artifact.exactnum import QuadField
from artifact.fingroups import ClassicalGroupKind, brute_force_order
from artifact.hermlocal import GramMatrix, brute_force_density

CASES = [
    ("O_4+ over F_3", lambda b: brute_force_order(ClassicalGroupKind.parse("O_4+"), 3, backend=b)),
    ("Sp_4 over F_2", lambda b: brute_force_order(ClassicalGroupKind.parse("Sp_4"), 2, backend=b)),
    ("U_2 over F_9", lambda b: brute_force_order(ClassicalGroupKind.parse("U_2"), 3, backend=b)),
    ("I_2 over Z[i]/9", lambda b: brute_force_density(GramMatrix.identity(-1, 2), QuadField(-1), 3, 2, backend=b)),
    ("H over Z[sqrt-2]/8", lambda b: brute_force_density(GramMatrix.hyperbolic(-2, 1), QuadField(-2), 2, 3, backend=b)),
]
SLOW = [
    ("SO_5 over F_3", lambda b: brute_force_order(ClassicalGroupKind.parse("SO_5"), 3, cap=10**9, backend=b)),
]


def best_of(fn, backend, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        value = fn(backend)
        times.append(time.perf_counter() - start)
    return min(times), value


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--quick", action="store_true", help="skip the slow pure-Python cases")
    args = parser.parse_args()
    backends = sorted(isometry.BACKENDS)
    print(f"{'case':24}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for name, fn in CASES + ([] if args.quick else SLOW):
        row, values = {}, set()
        for b in backends:
            row[b], value = best_of(fn, b, args.repeat)
            values.add(value)
        assert len(values) == 1, f"backends disagree on {name}: {values}"
        speed = f"{row['python'] / row['compiled']:9.1f}x" if "compiled" in row else ""
        print(f"{name:24}" + "".join(f"{row[b]:11.3f}s" for b in backends) + f"{speed:>10}")


if __name__ == "__main__":
    main()
