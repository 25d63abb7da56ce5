#!/usr/bin/env python3
"""Compare the numba kernels against their pure-numpy fallbacks.

The active path is chosen at import time (MATAGENT_NO_NUMBA=1 forces the
fallback), so this script imports both implementations directly and times
them on representative workloads: structure factors for a dense hkl cube,
Gaussian broadening onto a fine grid, pair-potential evaluation, and the
minimum-separation scan.

    python3 benchmarks/kernel_bench.py [--repeat 5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from matagent import kernels
from matagent.kernels import (
    _gaussian_profile_np,
    _lj_energy_forces_np,
    _min_pair_distance_np,
    _structure_factor_sq_np,
)


def timeit(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5, help="take the best of N timings")
    args = parser.parse_args()

    if not kernels.USING_NUMBA:
        print("numba path unavailable (MATAGENT_NO_NUMBA set or numba missing);")
        print("only the numpy fallback can be timed here.")

    rng = np.random.default_rng(0)
    hkl = np.stack(np.meshgrid(*[np.arange(-8, 9)] * 3, indexing="ij"), axis=-1).reshape(-1, 3)
    hkl = hkl[np.any(hkl != 0, axis=1)].astype(np.float64)
    frac = rng.uniform(0, 1, size=(64, 3))
    f = rng.uniform(5, 80, size=64)

    centers = rng.uniform(10, 90, size=3000)
    weights = rng.uniform(0, 1e5, size=3000)

    lj_frac = rng.uniform(0, 1, size=(128, 3))
    lj_lat = np.eye(3) * 14.0
    lj_sigma = np.full((128, 128), 2.1)

    sep_cart = rng.uniform(0, 12, size=(400, 3))
    sep_lat = np.eye(3) * 12.0

    kernels.warmup()
    cases = [
        (
            f"structure factors ({hkl.shape[0]} hkl x 64 sites)",
            lambda: kernels.structure_factor_sq_batch(hkl, frac, f),
            lambda: _structure_factor_sq_np(hkl, frac, f),
        ),
        (
            "gaussian broadening (3000 peaks, 4001-point grid)",
            lambda: kernels.gaussian_profile(centers, weights, 10.0, 0.02, 4001, 0.0425),
            lambda: _gaussian_profile_np(centers, weights, 10.0, 0.02, 4001, 0.0425),
        ),
        (
            "pair potential (128 sites)",
            lambda: kernels.lj_energy_forces(lj_frac, lj_lat, lj_sigma),
            lambda: _lj_energy_forces_np(lj_frac, lj_lat, lj_sigma, 1.0),
        ),
        (
            "min pair distance (400 sites, 27 images)",
            lambda: kernels.min_pair_distance(sep_cart, sep_lat),
            lambda: _min_pair_distance_np(sep_cart, sep_lat),
        ),
    ]

    label = "numba" if kernels.USING_NUMBA else "active(numpy)"
    print(f"{'kernel':<50} {label:>12} {'numpy':>12} {'speedup':>9}")
    for name, fast, ref in cases:
        t_fast = timeit(fast, args.repeat)
        t_ref = timeit(ref, args.repeat)
        print(f"{name:<50} {t_fast * 1e3:>10.2f}ms {t_ref * 1e3:>10.2f}ms {t_ref / t_fast:>8.1f}x")


if __name__ == "__main__":
    main()
