"""Pure construction operations: supercells, point defects, plane spacings."""

from __future__ import annotations

import numpy as np

from .. import elements
from ..errors import MatagentError
from .model import CrystalStructure, Lattice, Site

SUPERCELL_IMAGE_CAP = 10000  # n1*n2*n3 guard against unphysical requests


class LimitExceededError(MatagentError):
    """Requested size is beyond the configured physical-sanity cap."""


class IndexOutOfRangeError(MatagentError):
    """Site index outside the structure."""


class EmptyStructureError(MatagentError):
    """Operation would leave the structure with no sites."""


class ZeroVectorError(MatagentError):
    """hkl must not be the zero vector."""


def make_supercell(s: CrystalStructure, n1: int, n2: int, n3: int) -> CrystalStructure:
    """Replicate the cell n1 x n2 x n3 times along the lattice vectors."""
    for n in (n1, n2, n3):
        if int(n) != n or n < 1:
            raise LimitExceededError(f"replication factors must be positive integers, got {n!r}")
    n1, n2, n3 = int(n1), int(n2), int(n3)
    if n1 * n2 * n3 > SUPERCELL_IMAGE_CAP:
        raise LimitExceededError(
            f"supercell of {n1}x{n2}x{n3} = {n1 * n2 * n3} images exceeds the cap of "
            f"{SUPERCELL_IMAGE_CAP}",
            hint="request fewer repetitions",
        )
    factors = np.array([n1, n2, n3], dtype=np.float64)
    lattice = Lattice(s.lattice.matrix * factors[:, None])
    sites = []
    for k1 in range(n1):
        for k2 in range(n2):
            for k3 in range(n3):
                shift = np.array([k1, k2, k3], dtype=np.float64)
                for site in s.sites:
                    sites.append(Site(site.element, (site.frac + shift) / factors))
    return CrystalStructure(lattice, sites, comment=s.comment, _trusted=True)


def substitute_site(s: CrystalStructure, site_index: int, new_element: str) -> CrystalStructure:
    """Return a copy with one site's element replaced; the input is untouched."""
    if not elements.is_element(new_element):
        raise elements.UnknownElementError(new_element)
    if not 0 <= site_index < s.n_sites:
        raise IndexOutOfRangeError(
            f"site index {site_index} out of range for {s.n_sites} sites"
        )
    sites = list(s.sites)
    sites[site_index] = Site(new_element, sites[site_index].frac)
    return CrystalStructure(s.lattice, sites, comment=s.comment, _trusted=True)


def create_vacancy(s: CrystalStructure, site_index: int) -> CrystalStructure:
    """Return a copy with one site removed; the input is untouched."""
    if not 0 <= site_index < s.n_sites:
        raise IndexOutOfRangeError(
            f"site index {site_index} out of range for {s.n_sites} sites"
        )
    if s.n_sites == 1:
        raise EmptyStructureError("cannot remove the only site of a structure")
    sites = [site for i, site in enumerate(s.sites) if i != site_index]
    return CrystalStructure(s.lattice, sites, comment=s.comment, _trusted=True)


def d_spacing(s: CrystalStructure, hkl) -> float:
    """Interplanar spacing d(hkl) = 1/|h b1 + k b2 + l b3| in Angstrom."""
    hkl = np.asarray(hkl, dtype=np.float64).reshape(3)
    if np.all(hkl == 0):
        raise ZeroVectorError("hkl must not be (0, 0, 0)")
    g = hkl @ s.lattice.reciprocal()
    return float(1.0 / np.linalg.norm(g))
