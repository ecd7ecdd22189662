"""Benchmark the pure-Python kernel against the compiled one.

Each workload runs in a fresh subprocess so kernel selection happens at
import time exactly as it does for users (HEISENPOLY_PURE=1 forces the
fallback).  Usage::

    python benchmarks/bench_kernel.py
"""

import json
import os
import subprocess
import sys

WORKLOADS = {
    "suite core (max_n=4, max_p=2, max_m=3)": (
        "from heisenpoly.identities import verify_suite\n"
        "verify_suite(max_n=4, max_p=2, max_m=3)\n"
    ),
    "E16 n=6 p=3 l=3 (hottest grid point)": (
        "from heisenpoly.identities import verify\n"
        "assert verify('E16', n=6, p=3, l=3).status == 'pass'\n"
    ),
    "E32 n=6 (quantum plane)": (
        "from heisenpoly.identities import verify\n"
        "assert verify('E32', n=6).status == 'pass'\n"
    ),
    "straighten a^12 b^12 x 40 (classical)": (
        "from heisenpoly.ncalg import heisenberg_classical\n"
        "from heisenpoly import _kernel as K\n"
        "A = heisenberg_classical()\n"
        "for _ in range(40):\n"
        "    K.straighten([((1, 12, 0, 12), {(0, 0, 0, 0): 1})], A.rules, A.weights)\n"
    ),
    "straighten a1^9 b1^9 x 3 (quantum plane)": (
        "from heisenpoly.ncalg import quantum_plane\n"
        "from heisenpoly import _kernel as K\n"
        "A = quantum_plane()\n"
        "for _ in range(3):\n"
        "    K.straighten([((2, 9, 0, 9), {(0, 0, 0, 0): 1})], A.rules, A.weights)\n"
    ),
}

DRIVER = """
import json, sys, time
from heisenpoly._kernel import KERNEL_IMPL
body = sys.stdin.read()
start = time.perf_counter()
exec(body, {})
elapsed = time.perf_counter() - start
print(json.dumps({"impl": KERNEL_IMPL, "seconds": elapsed}))
"""


def run(body: str, pure: bool) -> dict:
    env = dict(os.environ)
    if pure:
        env["HEISENPOLY_PURE"] = "1"
    else:
        env.pop("HEISENPOLY_PURE", None)
    proc = subprocess.run(
        [sys.executable, "-c", DRIVER], input=body, env=env,
        capture_output=True, text=True, check=True)
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main() -> int:
    rows = []
    for name, body in WORKLOADS.items():
        pure = run(body, pure=True)
        fast = run(body, pure=False)
        rows.append((name, pure, fast))

    width = max(len(name) for name, _, _ in rows)
    print(f"{'workload':<{width}}  {'python':>9}  {'selected':>9}  speedup")
    for name, pure, fast in rows:
        speed = pure["seconds"] / fast["seconds"] if fast["seconds"] else float("inf")
        note = "" if fast["impl"] == "cython" else "  (no compiled kernel)"
        print(f"{name:<{width}}  {pure['seconds']:>8.3f}s  {fast['seconds']:>8.3f}s  "
              f"{speed:>6.2f}x{note}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
