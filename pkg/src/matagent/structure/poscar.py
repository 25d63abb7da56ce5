"""VASP-5 POSCAR parsing and serialization.

Dialect choices: the element-symbols line is mandatory (VASP-4 files are
rejected with a diagnostic), selective-dynamics and velocity blocks are
rejected rather than skipped, and fractional coordinates are wrapped into
[0, 1) at parse time. Output is always Direct mode with scale 1.0, LF line
endings, and 16 significant digits per number.
"""

from __future__ import annotations

import numpy as np

from .. import elements
from ..errors import MatagentError
from .model import CrystalStructure, Lattice, Site


class MalformedInputError(MatagentError):
    """POSCAR text does not follow the expected layout."""

    def __init__(self, message: str, line: int | None = None):
        where = f" (line {line})" if line is not None else ""
        super().__init__(
            f"malformed POSCAR{where}: {message}",
            hint="expected: comment, scale, 3 lattice rows, element symbols, "
            "counts, Direct/Cartesian, then one coordinate row per atom",
        )
        self.line = line


class NonFiniteNumberError(MatagentError):
    """A numeric field parsed to nan or inf."""

    def __init__(self, token: str, line: int):
        super().__init__(f"non-finite number {token!r} on line {line}")
        self.line = line


class CountMismatchError(MatagentError):
    """Counts line disagrees with the number of coordinate rows."""


def _floats(tokens: list[str], line_no: int, expect: int) -> list[float]:
    if len(tokens) < expect:
        raise MalformedInputError(
            f"expected {expect} numeric fields, found {len(tokens)}", line_no
        )
    out = []
    for tok in tokens[:expect]:
        try:
            val = float(tok)
        except ValueError:
            raise MalformedInputError(f"cannot parse {tok!r} as a number", line_no) from None
        if not np.isfinite(val):
            raise NonFiniteNumberError(tok, line_no)
        out.append(val)
    return out


def parse_poscar(text: str) -> CrystalStructure:
    """Parse VASP-5 POSCAR text (LF or CRLF) into a CrystalStructure."""
    raw = text.replace("\r\n", "\n").split("\n")
    # trailing blank lines are fine; blank lines elsewhere are structural
    while raw and raw[-1].strip() == "":
        raw.pop()
    if len(raw) < 8:
        raise MalformedInputError(f"only {len(raw)} lines, need at least 8")

    comment = raw[0].strip()
    (scale,) = _floats(raw[1].split(), 2, 1)
    if scale == 0.0:
        raise MalformedInputError("scale factor must be nonzero", 2)

    rows = [_floats(raw[2 + i].split(), 3 + i, 3) for i in range(3)]
    raw_lattice = np.array(rows)

    symbols = raw[5].split()
    if not symbols:
        raise MalformedInputError("element symbols line is empty", 6)
    if all(_is_int(tok) for tok in symbols):
        raise MalformedInputError(
            "line 6 looks like a counts line; VASP-4 files without an element "
            "symbols line are not supported",
            6,
        )
    for sym in symbols:
        if not elements.is_element(sym):
            raise elements.UnknownElementError(sym)

    count_tokens = raw[6].split()
    if len(count_tokens) != len(symbols) or not all(_is_int(t) for t in count_tokens):
        raise MalformedInputError(
            f"counts line must hold {len(symbols)} integers matching the symbols line", 7
        )
    counts = [int(t) for t in count_tokens]
    if any(c <= 0 for c in counts):
        raise MalformedInputError("atom counts must be positive", 7)
    n_atoms = sum(counts)

    mode_line = raw[7].strip()
    if not mode_line:
        raise MalformedInputError("coordinate-mode line is empty", 8)
    mode = mode_line[0].lower()
    if mode == "s":
        raise MalformedInputError(
            "selective dynamics is not supported; remove the 'Selective dynamics' line", 8
        )
    if mode not in ("d", "c"):
        raise MalformedInputError(
            f"coordinate mode must start with D(irect) or C(artesian), got {mode_line!r}", 8
        )
    cartesian = mode == "c"

    coord_rows = raw[8:]
    n_rows = sum(1 for row in coord_rows if row.strip())
    if n_rows != n_atoms:
        if n_rows > n_atoms and all(r.strip() for r in coord_rows[:n_atoms]):
            # a velocity/predictor block would show up as surplus rows
            extra_at = 9 + n_atoms
            raise MalformedInputError(
                f"{n_rows - n_atoms} unexpected extra line(s) after the coordinate block "
                "(velocity/predictor blocks are not supported)",
                extra_at,
            )
        raise CountMismatchError(
            f"counts line declares {n_atoms} atoms but found {n_rows} coordinate rows"
        )
    coords = np.empty((n_atoms, 3))
    for i in range(n_atoms):
        line_no = 9 + i
        row = coord_rows[i]
        if not row.strip():
            raise CountMismatchError(
                f"blank line inside coordinate block at line {line_no}; "
                f"counts line declares {n_atoms} atoms"
            )
        coords[i] = _floats(row.split(), line_no, 3)

    # negative scale is a target cell volume (VASP convention)
    if scale > 0:
        factor = scale
    else:
        det = np.linalg.det(raw_lattice)
        if det == 0:
            raise MalformedInputError("lattice is singular, cannot apply volume scaling", 3)
        factor = (abs(scale) / abs(det)) ** (1.0 / 3.0)
    lattice = Lattice(raw_lattice * factor)

    if cartesian:
        frac = (coords * factor) @ np.linalg.inv(lattice.matrix)
    else:
        frac = coords

    element_per_site = [sym for sym, c in zip(symbols, counts) for _ in range(c)]
    sites = [Site(el, f) for el, f in zip(element_per_site, frac)]
    return CrystalStructure(lattice, sites, comment=comment)


def _is_int(token: str) -> bool:
    try:
        int(token)
        return True
    except ValueError:
        return False


def _fmt(x: float) -> str:
    return f"{x:.16g}"


def serialize_poscar(s: CrystalStructure) -> str:
    """Emit VASP-5 Direct-mode POSCAR, elements grouped in first-appearance order."""
    order: list[str] = []
    for site in s.sites:
        if site.element not in order:
            order.append(site.element)
    groups = {el: [site for site in s.sites if site.element == el] for el in order}

    lines = [s.comment if s.comment else " ", "1.0"]
    for row in s.lattice.matrix:
        lines.append("  " + "  ".join(_fmt(v) for v in row))
    lines.append(" ".join(order))
    lines.append(" ".join(str(len(groups[el])) for el in order))
    lines.append("Direct")
    for el in order:
        for site in groups[el]:
            lines.append("  " + "  ".join(_fmt(v) for v in site.frac))
    return "\n".join(lines) + "\n"


def grouped_sites(s: CrystalStructure) -> list[Site]:
    """Site order produced by a serialize/parse round trip."""
    order: list[str] = []
    for site in s.sites:
        if site.element not in order:
            order.append(site.element)
    return [site for el in order for site in s.sites if site.element == el]
