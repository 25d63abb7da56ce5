"""Deterministic property-prediction and band-structure stubs.

The formulas have no physical authority. They exist so that pipelines have
a deterministic, structure-sensitive oracle: properties react to both the
composition (electronegativity spread) and the cell volume per atom.
"""

from __future__ import annotations

import math

import numpy as np

from .. import elements
from ..errors import MatagentError
from ..structure import CrystalStructure

BAND_HOPPING_EV = 0.5
DEFAULT_KPOINTS = 50
METHOD_NOTE = (
    "Values come from a deterministic composition/volume heuristic, not a "
    "trained model; treat them as computational estimates requiring "
    "experimental validation."
)


class TooManySitesError(MatagentError):
    """Structure exceeds the configured site cap for prediction."""


def predict_properties(s: CrystalStructure, max_sites: int = 500) -> dict:
    """Composition/volume heuristic for energies, gaps, and bulk modulus.

    With chi_j the tabulated electronegativities, x = mean(chi), and
    spread = mean |chi_j - x|, V/N the volume per atom:

        formation_energy = -spread
        bandgap_opt      = max(0, 2*spread - 0.05*(V/N - 10))
        bandgap_mbj      = 1.35 * bandgap_opt
        bulk_modulus     = 2500 / (V/N)

    all rounded to 4 decimals.
    """
    if s.n_sites > max_sites:
        raise TooManySitesError(
            f"structure has {s.n_sites} sites, prediction cap is {max_sites}"
        )
    chi = np.array([elements.electronegativity(sym) for sym in s.symbols()])
    mean_chi = chi.mean()
    spread = np.abs(chi - mean_chi).mean()
    vpa = s.lattice.volume / s.n_sites

    bandgap_opt = max(0.0, 2.0 * spread - 0.05 * (vpa - 10.0))
    return {
        "formation_energy": round(-spread, 4),
        "bandgap_opt": round(bandgap_opt, 4),
        "bandgap_mbj": round(1.35 * bandgap_opt, 4),
        "bulk_modulus": round(2500.0 / vpa, 4),
        "note": METHOD_NOTE,
    }


def band_structure(s: CrystalStructure, npoints: int = DEFAULT_KPOINTS, max_sites: int = 500) -> dict:
    """Two-band cosine model on Gamma -> X, gapped by the predicted bandgap_opt.

    E_upper(k) = +g/2 + 2t(1 - cos k), E_lower(k) = -g/2 - 2t(1 - cos k),
    k in [0, pi], t = 0.5 eV. The gap at Gamma equals bandgap_opt exactly.
    """
    if npoints < 2:
        raise ValueError("npoints must be at least 2")
    gap = predict_properties(s, max_sites=max_sites)["bandgap_opt"]
    k = np.linspace(0.0, math.pi, int(npoints))
    dispersion = 2.0 * BAND_HOPPING_EV * (1.0 - np.cos(k))
    lower = -gap / 2.0 - dispersion
    upper = gap / 2.0 + dispersion
    return {
        "kpath_labels": ["Gamma", "X"],
        "energies": [
            [round(float(e), 6) for e in lower],
            [round(float(e), 6) for e in upper],
        ],
    }
