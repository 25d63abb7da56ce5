"""Powder X-ray diffraction simulation.

Reflections are enumerated over the full signed hkl cube that is Bragg
accessible (d >= lambda/2), so symmetry-equivalent reflections sum
naturally without any multiplicity bookkeeping. Scattering factors are the
constant-Z approximation: peak positions are exact, relative intensities
are approximate (Lorentz-polarization is the only angular correction).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import elements, kernels
from .errors import MatagentError
from .structure import CrystalStructure, ZeroVectorError

DEFAULT_WAVELENGTH = 1.5406  # Cu Ka, Angstrom
DEFAULT_RANGE = (10.0, 90.0)
DEFAULT_STEP = 0.02
DEFAULT_FWHM = 0.1
PEAK_THRESHOLD = 1.0  # relative intensity floor for the reported peak list

_FWHM_TO_SIGMA = 1.0 / (2.0 * math.sqrt(2.0 * math.log(2.0)))


class InvalidRangeError(MatagentError):
    """Scan range, step, or width parameter out of bounds."""


@dataclass(frozen=True)
class RadiationSource:
    label: str
    wavelength: float

    def __post_init__(self):
        if not 0.1 < self.wavelength < 5.0:
            raise InvalidRangeError(
                f"wavelength {self.wavelength} A outside the supported (0.1, 5.0) A window"
            )


CU_KA = RadiationSource("Cu Ka", DEFAULT_WAVELENGTH)


@dataclass(frozen=True)
class Peak:
    two_theta: float
    intensity: float
    hkl: tuple[int, int, int]

    def to_dict(self) -> dict:
        return {
            "two_theta": round(self.two_theta, 8),
            "intensity": round(self.intensity, 8),
            "hkl": list(self.hkl),
        }


@dataclass(frozen=True, eq=False)
class DiffractionPattern:
    """Uniform 2-theta grid, intensities normalized to max 100, peak list.

    ``peaks`` holds the reported maxima (>= 1.0 relative intensity);
    ``all_maxima`` keeps every local maximum so lower thresholds can still
    be queried after the fact.
    """

    two_theta: np.ndarray
    intensity: np.ndarray
    peaks: tuple[Peak, ...]
    all_maxima: tuple[Peak, ...] = ()

    def to_dict(self) -> dict:
        return {
            "two_theta": [round(float(x), 8) for x in self.two_theta],
            "intensity": [round(float(y), 8) for y in self.intensity],
            "peaks": [p.to_dict() for p in self.peaks],
        }


def structure_factor_sq(s: CrystalStructure, hkl) -> float:
    """|F(hkl)|^2 with f_j = Z_j (constant scattering factor)."""
    hkl = np.asarray(hkl, dtype=np.float64).reshape(3)
    if np.all(hkl == 0):
        raise ZeroVectorError("hkl must not be (0, 0, 0)")
    f = np.array([elements.atomic_number(sym) for sym in s.symbols()], dtype=np.float64)
    return float(kernels.structure_factor_sq_batch(hkl[None, :], s.frac_coords(), f)[0])


def _accessible_reflections(s: CrystalStructure, wavelength: float):
    """All hkl with d >= lambda/2, their g = 1/d, in lexicographic order."""
    recip = s.lattice.reciprocal()
    g_max = 2.0 / wavelength
    h_caps = [int(math.floor(g_max * length)) for length in s.lattice.lengths()]
    axes = [np.arange(-cap, cap + 1) for cap in h_caps]
    hh, kk, ll = np.meshgrid(*axes, indexing="ij")
    hkl = np.stack([hh.ravel(), kk.ravel(), ll.ravel()], axis=1).astype(np.float64)
    nonzero = np.any(hkl != 0, axis=1)
    hkl = hkl[nonzero]
    g = np.linalg.norm(hkl @ recip, axis=1)
    keep = g <= g_max
    return hkl[keep], g[keep]


def simulate_pxrd(
    s: CrystalStructure,
    src: RadiationSource = CU_KA,
    two_theta_range: tuple[float, float] = DEFAULT_RANGE,
    step: float = DEFAULT_STEP,
    fwhm: float = DEFAULT_FWHM,
) -> DiffractionPattern:
    """Simulate a powder pattern: Bragg positions, |F|^2 * LP, Gaussian broadening."""
    lo, hi = float(two_theta_range[0]), float(two_theta_range[1])
    if not 0.0 < lo < hi <= 180.0:
        raise InvalidRangeError(f"two-theta range must satisfy 0 < min < max <= 180, got [{lo}, {hi}]")
    if not 0.0 < step <= 1.0:
        raise InvalidRangeError(f"step must lie in (0, 1] degrees, got {step}")
    if not 0.0 < fwhm <= 5.0:
        raise InvalidRangeError(f"fwhm must lie in (0, 5] degrees, got {fwhm}")

    npts = int(math.floor((hi - lo) / step + 1e-9)) + 1
    grid = lo + step * np.arange(npts)

    hkl, g = _accessible_reflections(s, src.wavelength)
    pattern_zero = DiffractionPattern(
        two_theta=grid, intensity=np.zeros(npts), peaks=()
    )
    if hkl.shape[0] == 0:
        return pattern_zero

    theta = np.arcsin(src.wavelength * g / 2.0)
    two_theta = np.degrees(2.0 * theta)
    in_range = (two_theta >= lo) & (two_theta <= hi)
    if not np.any(in_range):
        return pattern_zero
    hkl = hkl[in_range]
    theta = theta[in_range]
    centers = two_theta[in_range]

    f = np.array([elements.atomic_number(sym) for sym in s.symbols()], dtype=np.float64)
    fsq = kernels.structure_factor_sq_batch(hkl, s.frac_coords(), f)
    lp = (1.0 + np.cos(2.0 * theta) ** 2) / (np.sin(theta) ** 2 * np.cos(theta))
    weights = fsq * lp

    sigma = fwhm * _FWHM_TO_SIGMA
    profile = kernels.gaussian_profile(centers, weights, lo, step, npts, sigma)
    top = profile.max()
    if top <= 0.0:
        return pattern_zero
    profile = profile * (100.0 / top)

    maxima = tuple(_find_peaks(grid, profile, centers, weights, sigma, hkl, 0.0))
    peaks = tuple(p for p in maxima if p.intensity >= PEAK_THRESHOLD)
    return DiffractionPattern(
        two_theta=grid, intensity=profile, peaks=peaks, all_maxima=maxima
    )


def _find_peaks(grid, profile, centers, weights, sigma, hkl, threshold) -> list[Peak]:
    inner = profile[1:-1]
    is_max = (inner > profile[:-2]) & (inner >= profile[2:]) & (inner >= threshold)
    peak_idx = np.nonzero(is_max)[0] + 1
    inv2s2 = 1.0 / (2.0 * sigma * sigma)
    peaks = []
    for i in peak_idx:
        x = grid[i]
        contrib = weights * np.exp(-((x - centers) ** 2) * inv2s2)
        best = contrib.max()
        tied = np.nonzero(contrib >= best * (1.0 - 1e-9))[0]
        # prefer the lexicographically largest equivalent, e.g. (1,1,1) over (-1,-1,-1)
        rep = max(tied, key=lambda j: tuple(hkl[j]))
        peaks.append(
            Peak(
                two_theta=float(x),
                intensity=float(profile[i]),
                hkl=tuple(int(v) for v in hkl[rep]),
            )
        )
    return peaks


def peak_list(pattern: DiffractionPattern, threshold: float) -> list[Peak]:
    """Local maxima of the broadened profile at or above ``threshold``."""
    if not 0.0 <= threshold <= 100.0:
        raise InvalidRangeError(f"threshold must lie in [0, 100], got {threshold}")
    return [p for p in pattern.all_maxima if p.intensity >= threshold]
