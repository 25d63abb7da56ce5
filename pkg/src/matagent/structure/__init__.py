"""Crystal-structure data model, POSCAR I/O, and construction operations."""

from .model import MIN_SITE_SEPARATION, CrystalStructure, Lattice, Site, StructureError, wrap_frac
from .ops import (
    SUPERCELL_IMAGE_CAP,
    EmptyStructureError,
    IndexOutOfRangeError,
    LimitExceededError,
    ZeroVectorError,
    create_vacancy,
    d_spacing,
    make_supercell,
    substitute_site,
)
from .poscar import (
    CountMismatchError,
    MalformedInputError,
    NonFiniteNumberError,
    grouped_sites,
    parse_poscar,
    serialize_poscar,
)

__all__ = [
    "MIN_SITE_SEPARATION",
    "SUPERCELL_IMAGE_CAP",
    "CrystalStructure",
    "Lattice",
    "Site",
    "StructureError",
    "CountMismatchError",
    "EmptyStructureError",
    "IndexOutOfRangeError",
    "LimitExceededError",
    "MalformedInputError",
    "NonFiniteNumberError",
    "ZeroVectorError",
    "create_vacancy",
    "d_spacing",
    "grouped_sites",
    "make_supercell",
    "parse_poscar",
    "serialize_poscar",
    "substitute_site",
    "wrap_frac",
]
