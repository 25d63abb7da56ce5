#!/usr/bin/env python3
"""Build the scripted TPS demo fixture for `bench tps --backend scripted:default`.

Three runs of the default prompt at different synthetic generation speeds.

    python3 scripts/build_bench_fixture.py
"""

from __future__ import annotations

import json
from pathlib import Path

from matagent.agent.backends import tokenize
from matagent.agent.messages import ChatMessage, messages_hash
from matagent.bench.tps import DEFAULT_PROMPT

OUT = Path(__file__).resolve().parent.parent / "src/matagent/bench/data/tps_demo.json"

ANSWER = (
    "Powder X-ray diffraction identifies crystalline phases by measuring the "
    "angles at which a polycrystalline sample scatters monochromatic X-rays "
    "coherently. Bragg's law, two d sin(theta) equal to the wavelength, maps "
    "every family of lattice planes with spacing d onto a sharp peak at a "
    "characteristic scattering angle, so the peak positions alone encode the "
    "lattice geometry of each phase present in the specimen.\n\n"
    "Peak intensities carry the rest of the fingerprint. The structure factor "
    "sums the scattering contributions of every atom in the unit cell with "
    "phase factors set by the fractional coordinates, so intensities reflect "
    "both which elements sit in the cell and where they sit. Centered lattices "
    "force exact cancellations for particular index combinations, and those "
    "systematic absences narrow down the possible space groups before any "
    "refinement begins.\n\n"
    "Phase identification in practice matches the measured list of peak "
    "positions and relative intensities against reference patterns. Because "
    "two different crystal structures essentially never share a full pattern, "
    "a handful of strong reflections usually pins the phase, and mixtures "
    "resolve into superpositions whose weights estimate the phase fractions."
)


def main() -> None:
    messages = [ChatMessage("user", DEFAULT_PROMPT)]
    digest = messages_hash(messages)
    n = len(tokenize(ANSWER))
    fixture = {
        digest: [
            {"text": ANSWER, "gen_seconds": n / 140.0},
            {"text": ANSWER, "gen_seconds": n / 120.0},
            {"text": ANSWER, "gen_seconds": n / 130.0},
        ]
    }
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(fixture, indent=1) + "\n")
    print(f"wrote TPS demo fixture ({n} tokens/run) to {OUT}")


if __name__ == "__main__":
    main()
