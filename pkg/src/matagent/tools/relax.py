"""Toy-potential geometry relaxation.

Steepest descent on a Lennard-Jones pair energy with sigma_ij = 0.9 x the
sum of covalent radii and epsilon = 1 (model units), minimum-image
convention over the fixed cell. Only atomic positions move; the cell does
not relax. The step rule caps the fastest atom at 0.01 A per accepted
step, halving on any energy increase, so the energy trace is monotonically
non-increasing by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import elements, kernels
from ..errors import MatagentError
from ..structure import CrystalStructure, Site, wrap_frac

SIGMA_RADIUS_FACTOR = 0.9
STEP_LENGTH = 0.01  # Angstrom moved by the max-force atom per step
FORCE_TOL = 0.05  # model units; converged when max |F_i| drops below
MAX_HALVINGS = 10
DEFAULT_MAX_STEPS = 200
MIN_SITES, MAX_SITES = 2, 200


class SiteCountOutOfRangeError(MatagentError):
    """Relaxation handles 2..200 sites."""


@dataclass(frozen=True)
class RelaxResult:
    final: CrystalStructure
    initial_energy: float
    final_energy: float
    steps: int
    converged: bool
    energy_trace: tuple[float, ...]


def _sigma_matrix(symbols: list[str]) -> np.ndarray:
    radii = np.array([elements.covalent_radius(sym) for sym in symbols])
    return SIGMA_RADIUS_FACTOR * (radii[:, None] + radii[None, :])


def relax(s: CrystalStructure, max_steps: int = DEFAULT_MAX_STEPS) -> RelaxResult:
    if not MIN_SITES <= s.n_sites <= MAX_SITES:
        raise SiteCountOutOfRangeError(
            f"relaxation supports {MIN_SITES}..{MAX_SITES} sites, got {s.n_sites}"
        )
    lattice = s.lattice.matrix
    inv_lattice = np.linalg.inv(lattice)
    sigma = _sigma_matrix(s.symbols())

    frac = s.frac_coords()
    energy, forces = kernels.lj_energy_forces(frac, lattice, sigma)
    trace = [energy]
    steps = 0
    for _ in range(int(max_steps)):
        max_force = float(np.linalg.norm(forces, axis=1).max())
        if max_force < FORCE_TOL:
            break
        scale = STEP_LENGTH
        accepted = False
        for _ in range(MAX_HALVINGS + 1):
            disp = (scale / max_force) * forces
            trial = wrap_frac(frac + disp @ inv_lattice)
            trial_energy, trial_forces = kernels.lj_energy_forces(trial, lattice, sigma)
            if trial_energy <= energy:
                frac, energy, forces = trial, trial_energy, trial_forces
                accepted = True
                break
            scale *= 0.5
        if not accepted:
            break
        steps += 1
        trace.append(energy)

    converged = float(np.linalg.norm(forces, axis=1).max()) < FORCE_TOL
    final = CrystalStructure(
        s.lattice,
        [Site(site.element, f) for site, f in zip(s.sites, frac)],
        comment=s.comment,
    )
    return RelaxResult(
        final=final,
        initial_energy=trace[0],
        final_energy=energy,
        steps=steps,
        converged=converged,
        energy_trace=tuple(trace),
    )
