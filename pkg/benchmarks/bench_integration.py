"""Timing comparison of the two integration kernel paths.

The package ships two independent right-hand-side/stepper implementations:
a jit-compiled scalar-loop path and a vectorized pure-numpy path, selected
at call time by the LEIBNIZ_NO_NUMBA environment variable.  This script
times both on the same catalog systems and checks that their endpoints
agree, so the speedup numbers come with a correctness cross-check.

Run from the repository root:

    python3 benchmarks/bench_integration.py
    python3 benchmarks/bench_integration.py --t-end 50 --step 1e-4 --repeats 5
"""

from __future__ import annotations

import argparse
import os
import time

import numpy as np

from leibniz import _kernels
from leibniz.catalog import catalog_build
from leibniz.dynamics import IntegratorConfig, integrate


def _time_run(system, x0, config, use_numba: bool, repeats: int):
    if use_numba:
        os.environ.pop("LEIBNIZ_NO_NUMBA", None)
        if not _kernels.use_numba():
            return None, None
    else:
        os.environ["LEIBNIZ_NO_NUMBA"] = "1"
    trajectory = integrate(system, x0, config)  # warmup (jit compile, caches)
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        trajectory = integrate(system, x0, config)
        best = min(best, time.perf_counter() - start)
    return best, trajectory


def bench(name: str, config: IntegratorConfig, repeats: int) -> None:
    entry = catalog_build(name)
    numpy_t, numpy_traj = _time_run(entry.system, entry.x0, config, False, repeats)
    numba_t, numba_traj = _time_run(entry.system, entry.x0, config, True, repeats)
    label = f"{name} [{config.method}]"
    if numba_t is None:
        print(f"{label}: numpy {numpy_t * 1e3:9.2f} ms   (jit path unavailable)")
        return
    diff = float(np.max(np.abs(numpy_traj.states[-1] - numba_traj.states[-1])))
    print(
        f"{label}: numpy {numpy_t * 1e3:9.2f} ms   jit {numba_t * 1e3:9.2f} ms   "
        f"speedup {numpy_t / numba_t:5.1f}x   endpoint diff {diff:.2e}"
    )


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--t-end", type=float, default=20.0)
    parser.add_argument("--step", type=float, default=1e-4, help="fixed step for the rk4 runs")
    parser.add_argument("--tol", type=float, default=1e-12, help="tolerance for the adaptive runs")
    parser.add_argument("--repeats", type=int, default=3, help="best-of-N timing")
    args = parser.parse_args()

    rk4 = IntegratorConfig(
        method="rk4_fixed", t_end=args.t_end, step=args.step, max_steps=10_000_000
    )
    rk45 = IntegratorConfig(
        method="rk45_adaptive",
        t_end=args.t_end,
        abs_tol=args.tol,
        rel_tol=args.tol,
        max_steps=10_000_000,
    )
    had_flag = os.environ.get("LEIBNIZ_NO_NUMBA")
    try:
        for name in ("revised-rigid-body", "rigid-body-metriplectic-algebroid"):
            for config in (rk4, rk45):
                bench(name, config, args.repeats)
    finally:
        if had_flag is None:
            os.environ.pop("LEIBNIZ_NO_NUMBA", None)
        else:
            os.environ["LEIBNIZ_NO_NUMBA"] = had_flag


if __name__ == "__main__":
    main()
