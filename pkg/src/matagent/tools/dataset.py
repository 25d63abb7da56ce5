"""Bundled materials dataset: 50 synthetic records in a closed world.

The records carry plausible but explicitly synthetic property values; the
space-group labels are stored strings, never computed. Structures are
embedded as POSCAR text and parsed lazily.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from ..errors import MatagentError
from ..structure import CrystalStructure, parse_poscar


class NotFoundError(MatagentError):
    """No record with the requested identifier."""


class EmptyFilterError(MatagentError):
    """Query must constrain at least one property."""


@dataclass(frozen=True)
class MaterialRecord:
    jid: str
    formula: str
    spacegroup: str
    formation_energy: float
    bandgap_opt: float
    bandgap_mbj: float | None
    bulk_modulus: float | None
    poscar: str

    def structure(self) -> CrystalStructure:
        return parse_poscar(self.poscar)

    def elements(self) -> set[str]:
        return set(self.structure().composition())

    def summary(self) -> dict:
        # bandgap_mbj deliberately listed before bandgap_opt: TBmBJ gaps are
        # the preferred numbers and should be seen first
        return {
            "jid": self.jid,
            "formula": self.formula,
            "spacegroup": self.spacegroup,
            "formation_energy": self.formation_energy,
            "bandgap_mbj": self.bandgap_mbj,
            "bandgap_opt": self.bandgap_opt,
            "bulk_modulus": self.bulk_modulus,
        }


def _validate_records(records: list[MaterialRecord]) -> None:
    seen = set()
    for rec in records:
        if rec.jid in seen:
            raise ValueError(f"duplicate jid in dataset: {rec.jid}")
        seen.add(rec.jid)
        if not (rec.formation_energy == rec.formation_energy):  # NaN guard
            raise ValueError(f"{rec.jid}: formation_energy is not finite")
        if rec.bandgap_opt < 0 or (rec.bandgap_mbj is not None and rec.bandgap_mbj < 0):
            raise ValueError(f"{rec.jid}: bandgaps must be non-negative")


@lru_cache(maxsize=1)
def load_materials() -> tuple[MaterialRecord, ...]:
    raw = resources.files("matagent.tools").joinpath("data/materials.json").read_text()
    records = [MaterialRecord(**entry) for entry in json.loads(raw)]
    records.sort(key=lambda r: r.jid)
    _validate_records(records)
    return tuple(records)


@lru_cache(maxsize=1)
def _by_jid() -> dict[str, MaterialRecord]:
    return {rec.jid: rec for rec in load_materials()}


def get_record(jid: str) -> MaterialRecord:
    try:
        return _by_jid()[jid]
    except KeyError:
        raise NotFoundError(
            f"no material with jid {jid!r}",
            hint="query the database first to discover valid identifiers",
        ) from None


@lru_cache(maxsize=None)
def _element_sets() -> dict[str, frozenset[str]]:
    return {rec.jid: frozenset(rec.elements()) for rec in load_materials()}


def query_materials(
    elements: list[str] | None = None,
    formula: str | None = None,
    bandgap_min: float | None = None,
    bandgap_max: float | None = None,
    formation_energy_max: float | None = None,
    spacegroup: str | None = None,
    limit: int = 10,
) -> list[MaterialRecord]:
    """Conjunctive filter over the bundled records, sorted by jid.

    Bandgap bounds apply to ``bandgap_opt``, which every record carries;
    the TBmBJ preference is a presentation rule, not a filter rule.
    """
    filters_given = any(
        v is not None for v in (elements, formula, bandgap_min, bandgap_max,
                                formation_energy_max, spacegroup)
    )
    if not filters_given:
        raise EmptyFilterError(
            "at least one filter is required",
            hint="pass elements, formula, a bandgap bound, formation_energy_max, or spacegroup",
        )
    limit = min(int(limit), 50)
    element_sets = _element_sets()
    out = []
    for rec in load_materials():
        if elements is not None and not set(elements) <= element_sets[rec.jid]:
            continue
        if formula is not None and rec.formula != formula:
            continue
        if bandgap_min is not None and rec.bandgap_opt < bandgap_min:
            continue
        if bandgap_max is not None and rec.bandgap_opt > bandgap_max:
            continue
        if formation_energy_max is not None and rec.formation_energy > formation_energy_max:
            continue
        if spacegroup is not None and rec.spacegroup != spacegroup:
            continue
        out.append(rec)
        if len(out) >= limit:
            break
    return out
