"""Canonical demo queries with scripted-backend fixtures.

The fixture file (``data/case_studies.json``) maps SHA-256 hashes of the
canonicalized message arrays to canned responses; it is regenerated by
``scripts/build_agent_fixtures.py`` whenever prompts or tools change.
"""

from __future__ import annotations

import json
from importlib import resources

DEFECT_PIPELINE_QUERY = (
    "Run a complete defect study on GaN: find it in the database, retrieve the "
    "structure, build a 2x2x2 supercell, substitute one Ga atom with Al, relax "
    "the defective structure, simulate its powder XRD pattern, predict its "
    "properties, compute the band structure, then assemble and summarize a "
    "full report."
)

INTERFACE_QUERY = (
    "Build a low-strain interface between aluminum (JVASP-816) and silicon "
    "(JVASP-1002): retrieve both structures, match their basal planes within "
    "2% strain using up to 300 A^2 of search area, and return the stacked "
    "atomic coordinates."
)

PXRD_QUERY = (
    "Simulate the powder X-ray diffraction pattern of silicon with Cu Ka "
    "radiation between 20 and 90 degrees and report the prominent peaks."
)

GREETING_QUERY = "Hello! What can you help me with?"

DEFECT_PIPELINE_PLAN = {
    "steps": [
        {
            "step_id": 1,
            "tool": "jarvis_dft_query",
            "arguments": {"elements": ["Ga", "N"]},
            "depends_on": [],
            "rationale": "database search for GaN entries",
        },
        {
            "step_id": 2,
            "tool": "get_structure",
            "arguments": {"jid": "$step1.records.0.jid"},
            "depends_on": [1],
            "rationale": "structure retrieval for the first match",
        },
        {
            "step_id": 3,
            "tool": "make_supercell",
            "arguments": {"poscar": "$step2.poscar", "n1": 2, "n2": 2, "n3": 2},
            "depends_on": [2],
            "rationale": "supercell construction",
        },
        {
            "step_id": 4,
            "tool": "substitute_atom",
            "arguments": {"poscar": "$step3.poscar", "site_index": 0, "element": "Al"},
            "depends_on": [3],
            "rationale": "atomic substitution of one Ga by Al",
        },
        {
            "step_id": 5,
            "tool": "relax_structure",
            "arguments": {"poscar": "$step4.poscar", "max_steps": 200},
            "depends_on": [4],
            "rationale": "structure optimization of the defect cell",
        },
        {
            "step_id": 6,
            "tool": "simulate_pxrd",
            "arguments": {"poscar": "$step5.final", "two_theta_min": 20, "two_theta_max": 80},
            "depends_on": [5],
            "rationale": "XRD pattern simulation",
        },
        {
            "step_id": 7,
            "tool": "predict_properties",
            "arguments": {"poscar": "$step5.final"},
            "depends_on": [5],
            "rationale": "property predictions for the relaxed defect cell",
        },
        {
            "step_id": 8,
            "tool": "compute_bandstructure",
            "arguments": {"poscar": "$step5.final", "npoints": 50},
            "depends_on": [5],
            "rationale": "band structure calculation",
        },
        {
            "step_id": 9,
            "tool": "synthesize_report",
            "arguments": {
                "title": "GaN:Al defect study",
                "sections": {
                    "search": "$step1",
                    "defect_structure": "$step4",
                    "relaxation": "$step5",
                    "xrd_peaks": "$step6.peaks",
                    "properties": "$step7",
                    "bands": "$step8",
                },
                "format": "json",
            },
            "depends_on": [1, 4, 5, 6, 7, 8],
            "rationale": "result synthesis into one report object",
        },
        {
            "step_id": 10,
            "tool": "synthesize_report",
            "arguments": {
                "title": "GaN:Al defect study summary",
                "sections": {"report": "$step9.report"},
                "format": "text",
            },
            "depends_on": [9],
            "rationale": "summary generation as rendered text",
        },
    ]
}

INTERFACE_PLAN = {
    "steps": [
        {
            "step_id": 1,
            "tool": "get_structure",
            "arguments": {"jid": "JVASP-816"},
            "depends_on": [],
            "rationale": "database retrieval of the aluminum slab",
        },
        {
            "step_id": 2,
            "tool": "get_structure",
            "arguments": {"jid": "JVASP-1002"},
            "depends_on": [],
            "rationale": "database retrieval of the silicon polymorph",
        },
        {
            "step_id": 3,
            "tool": "generate_interface",
            "arguments": {
                "poscar_a": "$step1.poscar",
                "poscar_b": "$step2.poscar",
                "max_area": 300,
                "strain_tol": 0.02,
            },
            "depends_on": [1, 2],
            "rationale": "coincidence matching of the basal planes",
        },
        {
            "step_id": 4,
            "tool": "synthesize_report",
            "arguments": {
                "title": "Al/Si interface",
                "sections": {"interface": "$step3"},
                "format": "json",
            },
            "depends_on": [3],
            "rationale": "return the complete atomic coordinates",
        },
    ]
}

PXRD_PLAN = {
    "steps": [
        {
            "step_id": 1,
            "tool": "jarvis_dft_query",
            "arguments": {"formula": "Si"},
            "depends_on": [],
            "rationale": "identify the stable silicon entry",
        },
        {
            "step_id": 2,
            "tool": "get_structure",
            "arguments": {"jid": "$step1.records.0.jid"},
            "depends_on": [1],
            "rationale": "retrieve atomic coordinates",
        },
        {
            "step_id": 3,
            "tool": "simulate_pxrd",
            "arguments": {
                "poscar": "$step2.poscar",
                "wavelength": 1.5406,
                "two_theta_min": 20,
                "two_theta_max": 90,
            },
            "depends_on": [2],
            "rationale": "simulate the powder pattern with Cu Ka",
        },
        {
            "step_id": 4,
            "tool": "synthesize_report",
            "arguments": {
                "title": "Si powder XRD",
                "sections": {"peaks": "$step3.peaks"},
                "format": "json",
            },
            "depends_on": [3],
            "rationale": "report prominent intensities",
        },
    ]
}


def load_fixtures() -> dict:
    raw = resources.files("matagent.agent").joinpath("data/case_studies.json").read_text()
    return json.loads(raw)
