"""Compare the jitted kernels against the pure-Python fallback.

Runs the same workload in two subprocesses, one with
QORDER_DISABLE_NUMBA=1 and one without, and prints the timings side by
side.  JIT compilation happens during a warmup pass so it is excluded
from the measured time.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json
import time

from qorder._kernels import USE_NUMBA, _j_series, osc_tail

# warmup (compiles under numba, costs nothing meaningful otherwise)
_j_series(0.5, 10.0)
osc_tail(1.0, 1.0, 1.0, 0)

repeat = int(__import__("sys").argv[1])

start = time.perf_counter()
acc = 0.0
for _ in range(repeat):
    for k in range(60):
        acc += _j_series(0.25 * (k % 8), 0.5 * k + 0.1)[0]
series_time = time.perf_counter() - start

start = time.perf_counter()
for _ in range(repeat):
    for mode in (0, 1, 2):
        acc += osc_tail(1.0, 1.0, 0.7 + 0.1 * mode, mode)[0]
tail_time = time.perf_counter() - start

print(json.dumps({"use_numba": USE_NUMBA, "series_s": series_time,
                  "tail_s": tail_time, "checksum": acc}))
"""


def run_once(disable_numba: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env["QORDER_DISABLE_NUMBA"] = "1" if disable_numba else "0"
    proc = subprocess.run(
        [sys.executable, "-c", WORKLOAD, str(repeat)],
        env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=20)
    args = parser.parse_args()

    jitted = run_once(False, args.repeat)
    plain = run_once(True, args.repeat)
    if not jitted["use_numba"]:
        print("warning: numba unavailable; both runs used the fallback")
    drift = abs(jitted["checksum"] - plain["checksum"])
    print(f"checksum drift between paths: {drift:.3e}")
    for label, key in (("bessel series", "series_s"),
                       ("oscillatory tails", "tail_s")):
        a, b = jitted[key], plain[key]
        speedup = b / a if a > 0 else float("inf")
        print(f"{label:18s} jit {a:8.4f}s   fallback {b:8.4f}s   "
              f"speedup x{speedup:.1f}")


if __name__ == "__main__":
    main()
