#!/usr/bin/env python3
"""Generate the bundled materials fixture dataset (50 synthetic records).

Structures come from standard prototype templates; property values are
plausible but synthetic. Re-run after changing templates:

    python3 scripts/build_dataset.py
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from matagent.structure import CrystalStructure, Lattice, Site, serialize_poscar

OUT = Path(__file__).resolve().parent.parent / "src/matagent/tools/data/materials.json"


def cubic(a):
    return Lattice(np.eye(3) * a)


def hexagonal(a, c):
    return Lattice([[a, 0, 0], [-a / 2, a * math.sqrt(3) / 2, 0], [0, 0, c]])


FCC = [(0, 0, 0), (0, 0.5, 0.5), (0.5, 0, 0.5), (0.5, 0.5, 0)]


def sc(el, a):
    return CrystalStructure(cubic(a), [Site(el, (0, 0, 0))])


def fcc(el, a):
    return CrystalStructure(cubic(a), [Site(el, f) for f in FCC])


def bcc(el, a):
    return CrystalStructure(cubic(a), [Site(el, (0, 0, 0)), Site(el, (0.5, 0.5, 0.5))])


def hcp(el, a, c):
    return CrystalStructure(
        hexagonal(a, c),
        [Site(el, (1 / 3, 2 / 3, 0.25)), Site(el, (2 / 3, 1 / 3, 0.75))],
    )


def diamond(el, a):
    sites = [Site(el, np.add(f, b)) for f in FCC for b in [(0, 0, 0), (0.25, 0.25, 0.25)]]
    return CrystalStructure(cubic(a), sites)


def rocksalt(el_a, el_b, a):
    sites = [Site(el_a, f) for f in FCC] + [Site(el_b, np.add(f, (0.5, 0, 0))) for f in FCC]
    return CrystalStructure(cubic(a), sites)


def zincblende(el_a, el_b, a):
    sites = [Site(el_a, f) for f in FCC] + [
        Site(el_b, np.add(f, (0.25, 0.25, 0.25))) for f in FCC
    ]
    return CrystalStructure(cubic(a), sites)


def wurtzite(el_a, el_b, a, c, u=0.375):
    return CrystalStructure(
        hexagonal(a, c),
        [
            Site(el_a, (1 / 3, 2 / 3, 0.0)),
            Site(el_a, (2 / 3, 1 / 3, 0.5)),
            Site(el_b, (1 / 3, 2 / 3, u)),
            Site(el_b, (2 / 3, 1 / 3, 0.5 + u)),
        ],
    )


def cscl(el_a, el_b, a):
    return CrystalStructure(cubic(a), [Site(el_a, (0, 0, 0)), Site(el_b, (0.5, 0.5, 0.5))])


def perovskite(el_a, el_b, a):
    return CrystalStructure(
        cubic(a),
        [
            Site(el_a, (0, 0, 0)),
            Site(el_b, (0.5, 0.5, 0.5)),
            Site("O", (0.5, 0.5, 0)),
            Site("O", (0.5, 0, 0.5)),
            Site("O", (0, 0.5, 0.5)),
        ],
    )


def rutile(el_a, el_b, a, c, u=0.305):
    return CrystalStructure(
        Lattice([[a, 0, 0], [0, a, 0], [0, 0, c]]),
        [
            Site(el_a, (0, 0, 0)),
            Site(el_a, (0.5, 0.5, 0.5)),
            Site(el_b, (u, u, 0)),
            Site(el_b, (1 - u, 1 - u, 0)),
            Site(el_b, (0.5 + u, 0.5 - u, 0.5)),
            Site(el_b, (0.5 - u, 0.5 + u, 0.5)),
        ],
    )


def reduced_formula(s: CrystalStructure) -> str:
    comp = s.composition()
    g = math.gcd(*comp.values()) if len(comp) > 1 else next(iter(comp.values()))
    return "".join(f"{el}{n // g if n // g > 1 else ''}" for el, n in comp.items())


# jid, structure, spacegroup, formation_energy, bandgap_opt, bandgap_mbj, bulk_modulus
ENTRIES = [
    ("JVASP-30", wurtzite("Ga", "N", 3.19, 5.19), "P6_3mc", -1.21, 2.00, 3.30, 188.0),
    ("JVASP-8169", zincblende("Ga", "N", 4.50), "F-43m", -1.18, 1.85, 3.10, 182.0),
    ("JVASP-1002", diamond("Si", 5.43), "Fd-3m", 0.0, 0.65, 1.15, 98.0),
    ("JVASP-890", diamond("Ge", 5.66), "Fd-3m", 0.0, 0.18, 0.68, 75.0),
    ("JVASP-91", diamond("C", 3.567), "Fd-3m", 0.0, 4.35, 5.55, 435.0),
    ("JVASP-816", fcc("Al", 4.05), "Fm-3m", 0.0, 0.0, None, 76.0),
    ("JVASP-1029", fcc("Cu", 3.615), "Fm-3m", 0.0, 0.0, None, 140.0),
    ("JVASP-943", fcc("Ni", 3.52), "Fm-3m", 0.0, 0.0, None, 186.0),
    ("JVASP-813", fcc("Ag", 4.09), "Fm-3m", 0.0, 0.0, None, 101.0),
    ("JVASP-825", fcc("Au", 4.08), "Fm-3m", 0.0, 0.0, None, 173.0),
    ("JVASP-972", fcc("Pt", 3.92), "Fm-3m", 0.0, 0.0, None, 278.0),
    ("JVASP-961", fcc("Pb", 4.95), "Fm-3m", 0.0, 0.0, None, 46.0),
    ("JVASP-963", fcc("Pd", 3.89), "Fm-3m", 0.0, 0.0, None, 169.0),
    ("JVASP-882", bcc("Fe", 2.87), "Im-3m", 0.0, 0.0, None, 168.0),
    ("JVASP-1014", bcc("W", 3.16), "Im-3m", 0.0, 0.0, None, 310.0),
    ("JVASP-21195", bcc("Mo", 3.15), "Im-3m", 0.0, 0.0, None, 260.0),
    ("JVASP-861", bcc("Cr", 2.88), "Im-3m", 0.0, 0.0, None, 160.0),
    ("JVASP-1011", bcc("V", 3.03), "Im-3m", 0.0, 0.0, None, 158.0),
    ("JVASP-934", bcc("Nb", 3.30), "Im-3m", 0.0, 0.0, None, 170.0),
    ("JVASP-1000", bcc("Ta", 3.31), "Im-3m", 0.0, 0.0, None, 194.0),
    ("JVASP-913", bcc("Li", 3.51), "Im-3m", 0.0, 0.0, None, 13.0),
    ("JVASP-931", bcc("Na", 4.29), "Im-3m", 0.0, 0.0, None, 7.5),
    ("JVASP-88", sc("Po", 3.34), "Pm-3m", 0.0, 0.0, None, 40.0),
    ("JVASP-919", hcp("Mg", 3.21, 5.21), "P6_3/mmc", 0.0, 0.0, None, 35.0),
    ("JVASP-1008", hcp("Ti", 2.95, 4.68), "P6_3/mmc", 0.0, 0.0, None, 110.0),
    ("JVASP-1056", hcp("Zn", 2.66, 4.95), "P6_3/mmc", 0.0, 0.0, None, 70.0),
    ("JVASP-858", hcp("Co", 2.51, 4.07), "P6_3/mmc", 0.0, 0.0, None, 190.0),
    ("JVASP-23862", rocksalt("Na", "Cl", 5.64), "Fm-3m", -2.04, 5.10, 7.10, 24.0),
    ("JVASP-116", rocksalt("Mg", "O", 4.21), "Fm-3m", -2.95, 4.60, 6.80, 160.0),
    ("JVASP-1131", rocksalt("K", "Cl", 6.29), "Fm-3m", -2.18, 5.20, 7.40, 17.0),
    ("JVASP-1383", rocksalt("Li", "F", 4.03), "Fm-3m", -3.10, 8.80, 10.90, 70.0),
    ("JVASP-354", rocksalt("Ca", "O", 4.81), "Fm-3m", -3.25, 3.70, 5.30, 110.0),
    ("JVASP-19668", rocksalt("Ti", "C", 4.33), "Fm-3m", -0.82, 0.0, None, 242.0),
    ("JVASP-15086", rocksalt("Ti", "N", 4.24), "Fm-3m", -1.67, 0.0, None, 280.0),
    ("JVASP-1174", zincblende("Ga", "As", 5.65), "F-43m", -0.37, 0.49, 1.33, 62.0),
    ("JVASP-1183", zincblende("In", "P", 5.87), "F-43m", -0.34, 0.61, 1.29, 60.0),
    ("JVASP-1702", zincblende("Zn", "S", 5.41), "F-43m", -0.79, 2.10, 3.50, 77.0),
    ("JVASP-8158", zincblende("Si", "C", 4.36), "F-43m", -0.21, 1.40, 2.30, 211.0),
    ("JVASP-23", zincblende("Cd", "Te", 6.48), "F-43m", -0.47, 0.73, 1.48, 42.0),
    ("JVASP-96", zincblende("Zn", "Se", 5.67), "F-43m", -0.61, 1.20, 2.45, 62.0),
    ("JVASP-1393", zincblende("Ga", "P", 5.45), "F-43m", -0.46, 1.46, 2.26, 88.0),
    ("JVASP-97", zincblende("In", "As", 6.06), "F-43m", -0.28, 0.12, 0.36, 58.0),
    ("JVASP-1327", zincblende("Al", "P", 5.47), "F-43m", -0.83, 1.58, 2.48, 86.0),
    ("JVASP-39", wurtzite("Al", "N", 3.11, 4.98), "P6_3mc", -1.54, 4.10, 6.20, 194.0),
    ("JVASP-1195", wurtzite("Zn", "O", 3.25, 5.21), "P6_3mc", -1.70, 1.50, 3.30, 137.0),
    ("JVASP-95", wurtzite("Cd", "S", 4.14, 6.71), "P6_3mc", -0.70, 1.20, 2.40, 54.0),
    ("JVASP-1145", cscl("Cs", "Cl", 4.12), "Pm-3m", -2.08, 5.30, 7.30, 16.0),
    ("JVASP-8082", perovskite("Sr", "Ti", 3.905), "Pm-3m", -3.55, 1.80, 2.90, 172.0),
    ("JVASP-8029", perovskite("Ba", "Ti", 4.00), "Pm-3m", -3.40, 1.75, 2.80, 162.0),
    ("JVASP-104", rutile("Ti", "O", 4.59, 2.96), "P4_2/mnm", -3.35, 1.90, 3.00, 210.0),
]


def main() -> None:
    records = []
    for jid, structure, spacegroup, fe, eg_opt, eg_mbj, bulk in ENTRIES:
        structure = CrystalStructure(
            structure.lattice, structure.sites, comment=f"{reduced_formula(structure)} {jid}"
        )
        records.append(
            {
                "jid": jid,
                "formula": reduced_formula(structure),
                "spacegroup": spacegroup,
                "formation_energy": fe,
                "bandgap_opt": eg_opt,
                "bandgap_mbj": eg_mbj,
                "bulk_modulus": bulk,
                "poscar": serialize_poscar(structure),
            }
        )
    assert len(records) == 50, f"expected 50 records, built {len(records)}"
    assert len({r["jid"] for r in records}) == 50
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(records, indent=1) + "\n")
    print(f"wrote {len(records)} records to {OUT}")


if __name__ == "__main__":
    main()
