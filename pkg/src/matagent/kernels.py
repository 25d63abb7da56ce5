"""Numeric hot loops: structure factors, peak broadening, pair potentials.

Each kernel exists twice: a numba ``@njit`` version and a pure-numpy
fallback with identical accumulation order. The fallback is selected by
setting ``MATAGENT_NO_NUMBA=1`` in the environment (or automatically when
numba is not importable). ``benchmarks/kernel_bench.py`` compares the two
paths.
"""

from __future__ import annotations

import os

import numpy as np

_GAUSS_WINDOW_SIGMAS = 5.0  # truncate Gaussian tails beyond this


def _env_disabled() -> bool:
    return os.environ.get("MATAGENT_NO_NUMBA", "").strip() in {"1", "true", "yes"}


# ---------------------------------------------------------------------------
# pure-numpy implementations


def _structure_factor_sq_np(hkl: np.ndarray, frac: np.ndarray, f: np.ndarray) -> np.ndarray:
    phase = 2.0 * np.pi * (hkl @ frac.T)  # (M, N)
    re = (np.cos(phase) * f).sum(axis=1)
    im = (np.sin(phase) * f).sum(axis=1)
    return re * re + im * im


def _gaussian_profile_np(
    centers: np.ndarray,
    weights: np.ndarray,
    grid_start: float,
    step: float,
    npts: int,
    sigma: float,
) -> np.ndarray:
    out = np.zeros(npts)
    half = _GAUSS_WINDOW_SIGMAS * sigma
    inv2s2 = 1.0 / (2.0 * sigma * sigma)
    for c, w in zip(centers, weights):
        lo = max(0, int(np.ceil((c - half - grid_start) / step)))
        hi = min(npts - 1, int(np.floor((c + half - grid_start) / step)))
        if hi < lo:
            continue
        x = grid_start + step * np.arange(lo, hi + 1)
        out[lo : hi + 1] += w * np.exp(-((x - c) ** 2) * inv2s2)
    return out


def _min_pair_distance_np(cart: np.ndarray, lattice: np.ndarray) -> float:
    n = cart.shape[0]
    best = np.inf
    for a in (-1.0, 0.0, 1.0):
        for b in (-1.0, 0.0, 1.0):
            for c in (-1.0, 0.0, 1.0):
                shift = a * lattice[0] + b * lattice[1] + c * lattice[2]
                d = cart[:, None, :] - cart[None, :, :] + shift
                r2 = (d * d).sum(axis=2)
                if a == 0.0 and b == 0.0 and c == 0.0:
                    r2[np.arange(n), np.arange(n)] = np.inf
                m = r2.min()
                if m < best:
                    best = m
    return float(np.sqrt(best))


def _lj_energy_forces_np(
    frac: np.ndarray, lattice: np.ndarray, sigma: np.ndarray, eps: float
) -> tuple[float, np.ndarray]:
    n = frac.shape[0]
    d = frac[:, None, :] - frac[None, :, :]
    d -= np.round(d)  # minimum image in fractional space
    cart = d @ lattice
    r2 = (cart * cart).sum(axis=2)
    np.fill_diagonal(r2, 1.0)
    s2 = (sigma * sigma) / r2
    s6 = s2 * s2 * s2
    s12 = s6 * s6
    pair_e = 4.0 * eps * (s12 - s6)
    np.fill_diagonal(pair_e, 0.0)
    energy = 0.5 * pair_e.sum()
    coef = 24.0 * eps * (2.0 * s12 - s6) / r2
    np.fill_diagonal(coef, 0.0)
    forces = (coef[:, :, None] * cart).sum(axis=1)
    return float(energy), forces


# ---------------------------------------------------------------------------
# numba implementations

_HAVE_NUMBA = False
if not _env_disabled():
    try:
        from numba import njit

        _HAVE_NUMBA = True
    except ImportError:
        _HAVE_NUMBA = False

if _HAVE_NUMBA:

    @njit(cache=True)
    def _structure_factor_sq_nb(hkl, frac, f):  # pragma: no cover - jitted
        m = hkl.shape[0]
        n = frac.shape[0]
        out = np.empty(m)
        for i in range(m):
            re = 0.0
            im = 0.0
            for j in range(n):
                ph = 2.0 * np.pi * (
                    hkl[i, 0] * frac[j, 0] + hkl[i, 1] * frac[j, 1] + hkl[i, 2] * frac[j, 2]
                )
                re += f[j] * np.cos(ph)
                im += f[j] * np.sin(ph)
            out[i] = re * re + im * im
        return out

    @njit(cache=True)
    def _gaussian_profile_nb(centers, weights, grid_start, step, npts, sigma):  # pragma: no cover
        out = np.zeros(npts)
        half = _GAUSS_WINDOW_SIGMAS * sigma
        inv2s2 = 1.0 / (2.0 * sigma * sigma)
        for k in range(centers.shape[0]):
            c = centers[k]
            w = weights[k]
            lo = int(np.ceil((c - half - grid_start) / step))
            hi = int(np.floor((c + half - grid_start) / step))
            if lo < 0:
                lo = 0
            if hi > npts - 1:
                hi = npts - 1
            for g in range(lo, hi + 1):
                x = grid_start + step * g - c
                out[g] += w * np.exp(-x * x * inv2s2)
        return out

    @njit(cache=True)
    def _min_pair_distance_nb(cart, lattice):  # pragma: no cover - jitted
        n = cart.shape[0]
        best = np.inf
        for ia in range(-1, 2):
            for ib in range(-1, 2):
                for ic in range(-1, 2):
                    sx = ia * lattice[0, 0] + ib * lattice[1, 0] + ic * lattice[2, 0]
                    sy = ia * lattice[0, 1] + ib * lattice[1, 1] + ic * lattice[2, 1]
                    sz = ia * lattice[0, 2] + ib * lattice[1, 2] + ic * lattice[2, 2]
                    home = ia == 0 and ib == 0 and ic == 0
                    for i in range(n):
                        for j in range(n):
                            if home and i == j:
                                continue
                            dx = cart[i, 0] - cart[j, 0] + sx
                            dy = cart[i, 1] - cart[j, 1] + sy
                            dz = cart[i, 2] - cart[j, 2] + sz
                            r2 = dx * dx + dy * dy + dz * dz
                            if r2 < best:
                                best = r2
        return np.sqrt(best)

    @njit(cache=True)
    def _lj_energy_forces_nb(frac, lattice, sigma, eps):  # pragma: no cover - jitted
        n = frac.shape[0]
        energy = 0.0
        forces = np.zeros((n, 3))
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                da = frac[i, 0] - frac[j, 0]
                db = frac[i, 1] - frac[j, 1]
                dc = frac[i, 2] - frac[j, 2]
                da -= np.round(da)
                db -= np.round(db)
                dc -= np.round(dc)
                x = da * lattice[0, 0] + db * lattice[1, 0] + dc * lattice[2, 0]
                y = da * lattice[0, 1] + db * lattice[1, 1] + dc * lattice[2, 1]
                z = da * lattice[0, 2] + db * lattice[1, 2] + dc * lattice[2, 2]
                r2 = x * x + y * y + z * z
                s2 = sigma[i, j] * sigma[i, j] / r2
                s6 = s2 * s2 * s2
                s12 = s6 * s6
                energy += 0.5 * 4.0 * eps * (s12 - s6)
                coef = 24.0 * eps * (2.0 * s12 - s6) / r2
                forces[i, 0] += coef * x
                forces[i, 1] += coef * y
                forces[i, 2] += coef * z
        return energy, forces


USING_NUMBA = _HAVE_NUMBA


def structure_factor_sq_batch(hkl: np.ndarray, frac: np.ndarray, f: np.ndarray) -> np.ndarray:
    """|F(hkl)|^2 for each row of ``hkl`` given fractional sites and factors."""
    hkl = np.ascontiguousarray(hkl, dtype=np.float64)
    frac = np.ascontiguousarray(frac, dtype=np.float64)
    f = np.ascontiguousarray(f, dtype=np.float64)
    if USING_NUMBA:
        return _structure_factor_sq_nb(hkl, frac, f)
    return _structure_factor_sq_np(hkl, frac, f)


def gaussian_profile(
    centers: np.ndarray,
    weights: np.ndarray,
    grid_start: float,
    step: float,
    npts: int,
    sigma: float,
) -> np.ndarray:
    """Sum of Gaussians (stddev ``sigma``) sampled on a uniform grid."""
    centers = np.ascontiguousarray(centers, dtype=np.float64)
    weights = np.ascontiguousarray(weights, dtype=np.float64)
    if USING_NUMBA:
        return _gaussian_profile_nb(centers, weights, float(grid_start), float(step), int(npts), float(sigma))
    return _gaussian_profile_np(centers, weights, float(grid_start), float(step), int(npts), float(sigma))


def min_pair_distance(cart: np.ndarray, lattice: np.ndarray) -> float:
    """Minimum site-pair distance over the 27 neighboring cell images."""
    cart = np.ascontiguousarray(cart, dtype=np.float64)
    lattice = np.ascontiguousarray(lattice, dtype=np.float64)
    if USING_NUMBA:
        return float(_min_pair_distance_nb(cart, lattice))
    return _min_pair_distance_np(cart, lattice)


def lj_energy_forces(
    frac: np.ndarray, lattice: np.ndarray, sigma: np.ndarray, eps: float = 1.0
) -> tuple[float, np.ndarray]:
    """Lennard-Jones energy and per-site forces, minimum-image convention."""
    frac = np.ascontiguousarray(frac, dtype=np.float64)
    lattice = np.ascontiguousarray(lattice, dtype=np.float64)
    sigma = np.ascontiguousarray(sigma, dtype=np.float64)
    if USING_NUMBA:
        e, forces = _lj_energy_forces_nb(frac, lattice, sigma, float(eps))
        return float(e), forces
    return _lj_energy_forces_np(frac, lattice, sigma, float(eps))


def warmup() -> None:
    """Trigger jit compilation with tiny inputs (no-op on the numpy path)."""
    hkl = np.array([[1.0, 0.0, 0.0]])
    frac = np.array([[0.0, 0.0, 0.0], [0.5, 0.5, 0.5]])
    structure_factor_sq_batch(hkl, frac, np.array([1.0, 1.0]))
    gaussian_profile(np.array([1.0]), np.array([1.0]), 0.0, 0.1, 4, 0.05)
    min_pair_distance(frac @ np.eye(3), np.eye(3) * 4.0)
    lj_energy_forces(frac, np.eye(3) * 8.0, np.full((2, 2), 2.0), 1.0)
