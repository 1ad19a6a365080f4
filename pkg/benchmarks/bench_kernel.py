"""Benchmark: compiled term kernel versus the pure-Python twin.

Runs the same workloads in two subprocesses, one with LINFTY_PURE=1,
and prints a comparison table.  Workloads exercise the hot paths:
raw term products, the simplicial gauge over a monomial basis (operator
caches are not shared across processes), and a gauge-fixed solve.

Usage: python benchmarks/bench_kernel.py
"""

import json
import os
import subprocess
import sys
import time

WORKLOAD = r"""
import json, time
from fractions import Fraction
from linfty import kernel
from linfty.forms import Form, wedge
from linfty.dupont import dupont_s, monomial_basis
from linfty.fixtures import Sampler, get_fixture
from linfty.mc_gamma import GaugeParameter, solve_gauge_fixed

results = {"lane": kernel.IMPLEMENTATION}

# raw products: multiply every pair of degree-<=3 monomial forms on the 3-simplex
monos = monomial_basis(3, 3)
t0 = time.perf_counter()
acc = Form.zero(3)
for a in monos:
    for b in monos:
        acc = acc + wedge(a, b)
results["wedge_pairs"] = time.perf_counter() - t0

# the gauge over the full degree-4 monomial basis (cold caches)
t0 = time.perf_counter()
for mono in monomial_basis(3, 4):
    dupont_s(3, mono)
results["gauge_sweep"] = time.perf_counter() - t0

# gauge-fixed solves on a 12-dimensional algebra
algebra = get_fixture("heis_exterior")
sampler = Sampler(7)
t0 = time.perf_counter()
for _ in range(10):
    g = GaugeParameter(n=3, mu=sampler.mc_element(algebra),
                       witness=sampler.witness(algebra, 3))
    solve_gauge_fixed(algebra, 3, 0, g)
results["solver"] = time.perf_counter() - t0

print(json.dumps(results))
"""


def run_lane(pure: bool) -> dict:
    env = dict(os.environ)
    if pure:
        env["LINFTY_PURE"] = "1"
    else:
        env.pop("LINFTY_PURE", None)
    out = subprocess.run(
        [sys.executable, "-c", WORKLOAD],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    lanes = [run_lane(pure=False), run_lane(pure=True)]
    names = [r["lane"] for r in lanes]
    if names[0] == names[1]:
        print("compiled kernel unavailable; both lanes ran pure Python")
    keys = ["wedge_pairs", "gauge_sweep", "solver"]
    print(f"{'workload':<14}" + "".join(f"{name:>12}" for name in names) + f"{'speedup':>10}")
    for key in keys:
        times = [r[key] for r in lanes]
        ratio = times[1] / times[0] if times[0] else float("inf")
        print(f"{key:<14}" + "".join(f"{t:>11.3f}s" for t in times) + f"{ratio:>9.2f}x")


if __name__ == "__main__":
    main()
