"""Basal-plane coincidence matching and slab stacking.

A deliberately reduced 2D variant of coincidence-lattice interface search:
only diagonal supercells (i, j) of slab A and (k, l) of slab B are
considered, strain compares in-plane lattice-vector lengths, and the
matched slabs are stacked along the surface normal with a fixed gap and
vacuum. Good enough to produce low-strain stacks for downstream tools; not
a general miller-indexed interface builder.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import MatagentError
from ..structure import CrystalStructure, Lattice, Site, make_supercell

MAX_AREA_CAP = 400.0  # A^2
DEFAULT_MAX_AREA = 200.0
DEFAULT_STRAIN_TOL = 0.05
STACK_GAP = 2.5  # A between the top of A and the bottom of B
VACUUM = 15.0  # A above the stack


class NoMatchWithinToleranceError(MatagentError):
    """No supercell pair matches within the strain tolerance."""

    def __init__(self, best_strain: float | None, strain_tol: float):
        if best_strain is None:
            msg = "no supercell pair fits under the area budget"
            hint = "increase max_area"
        else:
            msg = (
                f"best achievable strain {best_strain:.4f} exceeds the tolerance {strain_tol:.4f}"
            )
            hint = f"raise strain_tol to at least {math.ceil(best_strain * 1e4) / 1e4:.4f} or increase max_area"
        super().__init__(msg, hint=hint)
        self.best_strain = best_strain


class AreaCapExceededError(MatagentError):
    """Requested search area beyond the hard cap."""


@dataclass(frozen=True)
class InterfaceMatch:
    structure: CrystalStructure
    strain: float
    matched_cells: tuple[int, int, int, int]


def _basal_lengths(s: CrystalStructure) -> tuple[float, float, float]:
    a1, a2 = s.lattice.matrix[0], s.lattice.matrix[1]
    area = float(np.linalg.norm(np.cross(a1, a2)))
    return float(np.linalg.norm(a1)), float(np.linalg.norm(a2)), area


def best_match(
    a: CrystalStructure,
    b: CrystalStructure,
    max_area: float = DEFAULT_MAX_AREA,
    strain_tol: float = DEFAULT_STRAIN_TOL,
) -> tuple[tuple[int, int, int, int], float]:
    """Search diagonal supercells for the lowest mean-absolute-strain pair.

    Ties break on smaller combined basal area, then lexicographic
    (i, j, k, l). Raises NoMatchWithinToleranceError with the best strain
    found when nothing fits.
    """
    if max_area > MAX_AREA_CAP:
        raise AreaCapExceededError(
            f"max_area {max_area} exceeds the cap of {MAX_AREA_CAP} A^2"
        )
    la1, la2, area_a = _basal_lengths(a)
    lb1, lb2, area_b = _basal_lengths(b)

    best_key = None
    best = None
    best_strain_overall = None
    for i in range(1, int(max_area / area_a) + 1):
        for j in range(1, int(max_area / (area_a * i)) + 1):
            for k in range(1, int(max_area / area_b) + 1):
                for l in range(1, int(max_area / (area_b * k)) + 1):
                    e1 = abs(i * la1 - k * lb1) / (k * lb1)
                    e2 = abs(j * la2 - l * lb2) / (l * lb2)
                    strain = 0.5 * (e1 + e2)
                    if best_strain_overall is None or strain < best_strain_overall:
                        best_strain_overall = strain
                    if strain > strain_tol:
                        continue
                    key = (strain, i * j * area_a + k * l * area_b, (i, j, k, l))
                    if best_key is None or key < best_key:
                        best_key = key
                        best = ((i, j, k, l), strain)
    if best is None:
        raise NoMatchWithinToleranceError(best_strain_overall, strain_tol)
    return best


def generate_interface(
    a: CrystalStructure,
    b: CrystalStructure,
    max_area: float = DEFAULT_MAX_AREA,
    strain_tol: float = DEFAULT_STRAIN_TOL,
) -> InterfaceMatch:
    """Stack B (strained onto A's in-plane cell) above A with gap and vacuum."""
    (i, j, k, l), strain = best_match(a, b, max_area=max_area, strain_tol=strain_tol)

    sup_a = make_supercell(a, i, j, 1)
    sup_b = make_supercell(b, k, l, 1)

    a1, a2 = sup_a.lattice.matrix[0], sup_a.lattice.matrix[1]
    normal = np.cross(a1, a2)
    normal /= np.linalg.norm(normal)  # points along +c because det > 0

    cart_a = sup_a.cart_coords()
    z_a = cart_a @ normal
    thickness_a = float(z_a.max() - z_a.min())

    b1, b2 = sup_b.lattice.matrix[0], sup_b.lattice.matrix[1]
    normal_b = np.cross(b1, b2)
    normal_b /= np.linalg.norm(normal_b)
    basis_b = np.array([b1, b2, normal_b])
    uvw = sup_b.cart_coords() @ np.linalg.inv(basis_b)
    w = uvw[:, 2]
    thickness_b = float(w.max() - w.min())

    height = thickness_a + STACK_GAP + thickness_b + VACUUM
    new_lattice = Lattice(np.array([a1, a2, height * normal]))

    sites: list[Site] = []
    inv_new = np.linalg.inv(new_lattice.matrix)
    for site, cart in zip(sup_a.sites, cart_a):
        shifted = cart - z_a.min() * normal  # slab A starts at height 0
        sites.append(Site(site.element, shifted @ inv_new))
    z_base = thickness_a + STACK_GAP
    for site, (u, v, wz) in zip(sup_b.sites, uvw):
        cart = u * a1 + v * a2 + (z_base + (wz - w.min())) * normal
        sites.append(Site(site.element, cart @ inv_new))

    structure = CrystalStructure(
        new_lattice,
        sites,
        comment=f"{a.formula()}/{b.formula()} interface ({i}x{j} on {k}x{l})",
    )
    return InterfaceMatch(structure=structure, strain=strain, matched_cells=(i, j, k, l))
