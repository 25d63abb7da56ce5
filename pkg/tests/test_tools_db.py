import json
from importlib import resources

import pytest

from matagent.structure import parse_poscar
from matagent.tools import (
    EmptyFilterError,
    NotFoundError,
    get_record,
    load_materials,
    query_materials,
)


def fixture_file_records():
    raw = resources.files("matagent.tools").joinpath("data/materials.json").read_text()
    return json.loads(raw)


def test_dataset_has_50_unique_records():
    records = load_materials()
    assert len(records) == 50
    assert len({r.jid for r in records}) == 50


def test_dataset_spans_required_prototypes():
    formulas = {r.formula for r in load_materials()}
    assert {"GaN", "Si", "NaCl"} <= formulas
    metals = [r for r in load_materials() if r.bandgap_opt == 0.0 and r.formation_energy == 0.0]
    assert len(metals) >= 10  # elemental metals present


def test_elements_filter_matches_grep_of_fixture_file():
    # independent oracle: parse the raw fixture file and inspect POSCAR symbol lines
    expected = set()
    for entry in fixture_file_records():
        symbols = set(entry["poscar"].splitlines()[5].split())
        if {"Ga", "N"} <= symbols:
            expected.add(entry["jid"])
    got = {r.jid for r in query_materials(elements=["Ga", "N"])}
    assert got == expected
    assert got == {"JVASP-30", "JVASP-8169"}


def test_query_sorted_by_jid_and_deterministic():
    a = [r.jid for r in query_materials(elements=["O"], limit=50)]
    b = [r.jid for r in query_materials(elements=["O"], limit=50)]
    assert a == b == sorted(a)


def test_query_conjunction():
    hits = query_materials(elements=["Ti"], bandgap_min=0.5, limit=50)
    for rec in hits:
        assert "Ti" in rec.elements()
        assert rec.bandgap_opt >= 0.5


def test_query_no_match_is_empty_not_error():
    assert query_materials(bandgap_min=100.0) == []
    assert query_materials(bandgap_min=1.0, bandgap_max=0.0) == []


def test_query_requires_a_filter():
    with pytest.raises(EmptyFilterError):
        query_materials()
    with pytest.raises(EmptyFilterError):
        query_materials(limit=5)


def test_query_limit_default_and_cap():
    assert len(query_materials(formation_energy_max=10.0)) == 10  # default limit
    assert len(query_materials(formation_energy_max=10.0, limit=1000)) == 50


def test_summary_orders_mbj_before_opt():
    rec = get_record("JVASP-30")
    keys = list(rec.summary())
    assert keys.index("bandgap_mbj") < keys.index("bandgap_opt")


def test_get_structure_roundtrip():
    for jid in ("JVASP-30", "JVASP-1002", "JVASP-23862"):
        rec = get_record(jid)
        s = parse_poscar(rec.poscar)
        assert s.n_sites >= 1


def test_get_structure_known_compositions():
    assert parse_poscar(get_record("JVASP-30").poscar).composition() == {"Ga": 2, "N": 2}
    assert parse_poscar(get_record("JVASP-1002").poscar).composition() == {"Si": 8}
    assert parse_poscar(get_record("JVASP-23862").poscar).composition() == {"Na": 4, "Cl": 4}


def test_get_structure_unknown_jid():
    with pytest.raises(NotFoundError):
        get_record("JVASP-0")


def test_record_invariants():
    for rec in load_materials():
        assert rec.formation_energy == rec.formation_energy
        assert rec.bandgap_opt >= 0
        if rec.bandgap_mbj is not None:
            assert rec.bandgap_mbj >= 0
