"""Crystal-structure value types: lattice, sites, and the combined cell.

All types are immutable after construction and every operation on them is
pure, so instances can be shared across threads freely.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import elements, kernels
from ..errors import MatagentError

MIN_SITE_SEPARATION = 0.25  # Angstrom; duplicate-site sanity threshold


class StructureError(MatagentError):
    """Structure violates a construction invariant."""


def _frozen_array(values, shape) -> np.ndarray:
    arr = np.array(values, dtype=np.float64).reshape(shape)
    arr.flags.writeable = False
    return arr


def wrap_frac(frac: np.ndarray) -> np.ndarray:
    """Wrap fractional coordinates into [0, 1)."""
    wrapped = np.mod(np.asarray(frac, dtype=np.float64), 1.0)
    # mod can round up to exactly 1.0 for tiny negative inputs
    return np.where(wrapped >= 1.0, 0.0, wrapped)


@dataclass(frozen=True, eq=False)
class Lattice:
    """Row-vector lattice matrix; rows are a1, a2, a3 in Angstrom."""

    matrix: np.ndarray

    def __init__(self, matrix):
        m = _frozen_array(matrix, (3, 3))
        if not np.all(np.isfinite(m)):
            raise StructureError("lattice matrix contains non-finite entries")
        if np.linalg.det(m) <= 0:
            raise StructureError(
                f"lattice must be right-handed with positive volume, det = {np.linalg.det(m):g}"
            )
        object.__setattr__(self, "matrix", m)

    @property
    def volume(self) -> float:
        return float(np.linalg.det(self.matrix))

    def reciprocal(self) -> np.ndarray:
        """Rows b_i with a_i . b_j = delta_ij (crystallographic, no 2*pi)."""
        return np.linalg.inv(self.matrix).T

    def cartesian(self, frac: np.ndarray) -> np.ndarray:
        return np.asarray(frac, dtype=np.float64) @ self.matrix

    def lengths(self) -> np.ndarray:
        return np.linalg.norm(self.matrix, axis=1)

    def __eq__(self, other) -> bool:
        return isinstance(other, Lattice) and np.array_equal(self.matrix, other.matrix)

    def __repr__(self) -> str:
        a, b, c = self.lengths()
        return f"Lattice(a={a:.4f}, b={b:.4f}, c={c:.4f}, V={self.volume:.4f})"


@dataclass(frozen=True, eq=False)
class Site:
    """One atom: element symbol plus fractional coordinates in [0, 1)."""

    element: str
    frac: np.ndarray

    def __init__(self, element: str, frac):
        if not elements.is_element(element):
            raise elements.UnknownElementError(element)
        f = np.asarray(frac, dtype=np.float64).reshape(3)
        if not np.all(np.isfinite(f)):
            raise StructureError(f"site {element} has non-finite coordinates")
        f = _frozen_array(wrap_frac(f), (3,))
        object.__setattr__(self, "element", element)
        object.__setattr__(self, "frac", f)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Site)
            and self.element == other.element
            and np.array_equal(self.frac, other.frac)
        )

    def __repr__(self) -> str:
        x, y, z = self.frac
        return f"Site({self.element}, [{x:.6f}, {y:.6f}, {z:.6f}])"


@dataclass(frozen=True, eq=False)
class CrystalStructure:
    """Lattice plus an ordered, non-empty site list."""

    lattice: Lattice
    sites: tuple[Site, ...]
    comment: str = ""

    def __init__(self, lattice: Lattice, sites, comment: str = "", *, _trusted: bool = False):
        # _trusted skips the pair-separation scan for operations that cannot
        # shrink separations (supercell replication, substitution, deletion)
        sites = tuple(sites)
        if not sites:
            raise StructureError("structure must contain at least one site")
        object.__setattr__(self, "lattice", lattice)
        object.__setattr__(self, "sites", sites)
        object.__setattr__(self, "comment", comment)
        if not _trusted:
            self._check_separation()

    def _check_separation(self) -> None:
        d = kernels.min_pair_distance(self.cart_coords(), self.lattice.matrix)
        if d < MIN_SITE_SEPARATION:
            raise StructureError(
                f"minimum site separation {d:.4f} A is below {MIN_SITE_SEPARATION} A "
                "(duplicated or overlapping sites?)"
            )

    def frac_coords(self) -> np.ndarray:
        return np.array([s.frac for s in self.sites])

    def cart_coords(self) -> np.ndarray:
        return self.lattice.cartesian(self.frac_coords())

    def symbols(self) -> list[str]:
        return [s.element for s in self.sites]

    def composition(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for s in self.sites:
            counts[s.element] = counts.get(s.element, 0) + 1
        return counts

    def formula(self) -> str:
        return "".join(
            f"{el}{n if n > 1 else ''}" for el, n in self.composition().items()
        )

    @property
    def n_sites(self) -> int:
        return len(self.sites)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CrystalStructure)
            and self.lattice == other.lattice
            and self.comment == other.comment
            and len(self.sites) == len(other.sites)
            and all(a == b for a, b in zip(self.sites, other.sites))
        )

    def __repr__(self) -> str:
        return f"CrystalStructure({self.formula()}, {self.n_sites} sites, V={self.lattice.volume:.2f})"
