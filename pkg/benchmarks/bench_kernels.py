"""Timing comparison of the compiled and numpy kernel backends.

Runs the three hot integrand kernels on grids sized like the adaptive
quadrature's panels, plus one end-to-end free-energy evaluation, and
prints the per-call times side by side.  Usage:

    python3 benchmarks/bench_kernels.py [repeats]
"""

from __future__ import annotations

import sys
import time

import numpy as np

from casimir._kernels import pure

try:
    from casimir._kernels import fast
except ImportError:
    fast = None


def best_of(fn, repeats: int) -> float:
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main() -> int:
    repeats = int(sys.argv[1]) if len(sys.argv) > 1 else 7
    if fast is None:
        print("compiled backend not built; showing numpy fallback only")

    rng = np.random.default_rng(1234)
    xi, wp, gt = 1.7, 116.7, 0.5
    cases = []
    for n in (15, 240, 3840):
        y = np.sort(xi + 40.0 * rng.random(n))
        cases.append((n, y))

    kernels = [
        ("free_energy_integrand", lambda m, y: m.free_energy_integrand(xi, y, wp, gt, m.MODEL_DRUDE)),
        ("energy_integrand", lambda m, y: m.energy_integrand(xi, y, wp, gt, m.MODEL_DRUDE, 0.5)),
        ("reflection_derivatives", lambda m, y: m.reflection_derivatives(xi, y, wp, gt, m.MODEL_DRUDE)),
    ]

    print(f"{'kernel':24s} {'n':>5s} {'numpy':>12s} {'cython':>12s} {'speedup':>8s}")
    for name, call in kernels:
        for n, y in cases:
            loops = max(1, 2000 // n)
            t_pure = best_of(lambda: [call(pure, y) for _ in range(loops)], repeats) / loops
            if fast is not None:
                t_fast = best_of(lambda: [call(fast, y) for _ in range(loops)], repeats) / loops
                print(f"{name:24s} {n:5d} {t_pure * 1e6:10.1f}us {t_fast * 1e6:10.1f}us {t_pure / t_fast:7.1f}x")
            else:
                print(f"{name:24s} {n:5d} {t_pure * 1e6:10.1f}us {'-':>12s} {'-':>8s}")

    # End-to-end: one Drude free energy per backend (backend chosen at
    # import time, so run each in a forced-environment subprocess).
    import subprocess

    script = (
        "import time, casimir\n"
        "st = casimir.to_dimensionless(1e-6, 300.0, casimir.aluminum())\n"
        "t0 = time.perf_counter()\n"
        "F = casimir.free_energy(st, 'drude', 'a').total\n"
        "print(casimir.KERNEL_BACKEND, time.perf_counter() - t0, F)\n"
    )
    print()
    for env_val in ("0", "1"):
        out = subprocess.run(
            [sys.executable, "-c", script],
            capture_output=True,
            text=True,
            env={"PATH": "/usr/bin:/bin", "CASIMIR_PURE_KERNELS": env_val},
        ).stdout.strip()
        if out:
            backend, dt, F = out.split()
            print(f"free_energy(1um, 300K, drude-a) on {backend:6s}: {float(dt) * 1e3:8.2f} ms  (F = {F})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
