"""Built-in desk-scale tools and the default registry assembly.

Registration order is part of the contract surface: the prompt block and
the gateway's OpenAPI document both list tools in this order.
"""

from __future__ import annotations

import json

from ..structure import (
    CrystalStructure,
    create_vacancy,
    make_supercell,
    parse_poscar,
    serialize_poscar,
    substitute_site,
)
from ..xrd import RadiationSource, simulate_pxrd
from . import dataset, interface, predict, relax
from .registry import NotEnabledError, ToolDescriptor, ToolRegistry

DEFAULT_MAX_SITES = 500  # gateway-facing cap for structure payloads

_POSCAR_PROP = {"type": "string", "description": "crystal structure as VASP-5 POSCAR text"}


def _obj(properties: dict, required: list[str]) -> dict:
    return {
        "type": "object",
        "properties": properties,
        "required": required,
        "additionalProperties": False,
    }


def _parse_checked(poscar: str, max_sites: int) -> CrystalStructure:
    s = parse_poscar(poscar)
    if s.n_sites > max_sites:
        raise predict.TooManySitesError(
            f"structure has {s.n_sites} sites, the configured cap is {max_sites}"
        )
    return s


def build_registry(max_sites: int = DEFAULT_MAX_SITES) -> ToolRegistry:
    """Registry with the twelve built-in tools."""
    registry = ToolRegistry()

    def handle_query(args: dict) -> dict:
        records = dataset.query_materials(
            elements=args.get("elements"),
            formula=args.get("formula"),
            bandgap_min=args.get("bandgap_min"),
            bandgap_max=args.get("bandgap_max"),
            formation_energy_max=args.get("formation_energy_max"),
            spacegroup=args.get("spacegroup"),
            limit=args.get("limit", 10),
        )
        return {"records": [r.summary() for r in records], "count": len(records)}

    registry.register(
        ToolDescriptor(
            name="jarvis_dft_query",
            description=(
                "Search the bundled materials database with conjunctive filters; "
                "returns property summaries with jids (structures omitted)."
            ),
            param_schema=_obj(
                {
                    "elements": {
                        "type": "array",
                        "items": {"type": "string"},
                        "description": "record must contain every listed element",
                    },
                    "formula": {"type": "string", "description": "exact reduced formula, e.g. GaN"},
                    "bandgap_min": {"type": "number", "description": "lower bound on bandgap_opt (eV)"},
                    "bandgap_max": {"type": "number", "description": "upper bound on bandgap_opt (eV)"},
                    "formation_energy_max": {
                        "type": "number",
                        "description": "upper bound on formation energy (eV/atom)",
                    },
                    "spacegroup": {"type": "string", "description": "exact space-group label"},
                    "limit": {"type": "integer", "description": "max records, default 10, cap 50"},
                },
                [],
            ),
            result_schema=_obj(
                {
                    "records": {"type": "array", "items": {"type": "object"}},
                    "count": {"type": "integer"},
                },
                ["records", "count"],
            ),
        ),
        handle_query,
    )

    def handle_get_structure(args: dict) -> dict:
        rec = dataset.get_record(args["jid"])
        return {"jid": rec.jid, "formula": rec.formula, "poscar": rec.poscar}

    registry.register(
        ToolDescriptor(
            name="get_structure",
            description="Retrieve the POSCAR structure for a database identifier.",
            param_schema=_obj(
                {"jid": {"type": "string", "description": "database identifier, e.g. JVASP-1002"}},
                ["jid"],
            ),
            result_schema=_obj(
                {
                    "jid": {"type": "string"},
                    "formula": {"type": "string"},
                    "poscar": _POSCAR_PROP,
                },
                ["jid", "formula", "poscar"],
            ),
        ),
        handle_get_structure,
    )

    def handle_supercell(args: dict) -> dict:
        s = _parse_checked(args["poscar"], max_sites)
        out = make_supercell(s, args["n1"], args["n2"], args["n3"])
        return {"poscar": serialize_poscar(out), "n_sites": out.n_sites, "formula": out.formula()}

    registry.register(
        ToolDescriptor(
            name="make_supercell",
            description="Replicate a cell n1 x n2 x n3 times along its lattice vectors.",
            param_schema=_obj(
                {
                    "poscar": _POSCAR_PROP,
                    "n1": {"type": "integer", "minimum": 1, "description": "repeats along a1"},
                    "n2": {"type": "integer", "minimum": 1, "description": "repeats along a2"},
                    "n3": {"type": "integer", "minimum": 1, "description": "repeats along a3"},
                },
                ["poscar", "n1", "n2", "n3"],
            ),
            result_schema=_obj(
                {
                    "poscar": _POSCAR_PROP,
                    "n_sites": {"type": "integer"},
                    "formula": {"type": "string"},
                },
                ["poscar", "n_sites", "formula"],
            ),
        ),
        handle_supercell,
    )

    def handle_substitute(args: dict) -> dict:
        s = _parse_checked(args["poscar"], max_sites)
        out = substitute_site(s, args["site_index"], args["element"])
        return {"poscar": serialize_poscar(out), "formula": out.formula()}

    registry.register(
        ToolDescriptor(
            name="substitute_atom",
            description="Replace the element of one site (0-based index); returns the new structure.",
            param_schema=_obj(
                {
                    "poscar": _POSCAR_PROP,
                    "site_index": {"type": "integer", "minimum": 0, "description": "0-based site index"},
                    "element": {"type": "string", "description": "replacement element symbol"},
                },
                ["poscar", "site_index", "element"],
            ),
            result_schema=_obj(
                {"poscar": _POSCAR_PROP, "formula": {"type": "string"}},
                ["poscar", "formula"],
            ),
        ),
        handle_substitute,
    )

    def handle_vacancy(args: dict) -> dict:
        s = _parse_checked(args["poscar"], max_sites)
        out = create_vacancy(s, args["site_index"])
        return {
            "poscar": serialize_poscar(out),
            "formula": out.formula(),
            "n_sites": out.n_sites,
        }

    registry.register(
        ToolDescriptor(
            name="create_vacancy",
            description="Remove one site (0-based index) to create a vacancy.",
            param_schema=_obj(
                {
                    "poscar": _POSCAR_PROP,
                    "site_index": {"type": "integer", "minimum": 0, "description": "0-based site index"},
                },
                ["poscar", "site_index"],
            ),
            result_schema=_obj(
                {
                    "poscar": _POSCAR_PROP,
                    "formula": {"type": "string"},
                    "n_sites": {"type": "integer"},
                },
                ["poscar", "formula", "n_sites"],
            ),
        ),
        handle_vacancy,
    )

    def handle_relax(args: dict) -> dict:
        s = parse_poscar(args["poscar"])
        result = relax.relax(s, max_steps=args.get("max_steps", relax.DEFAULT_MAX_STEPS))
        return {
            "final": serialize_poscar(result.final),
            "initial_energy": round(result.initial_energy, 6),
            "final_energy": round(result.final_energy, 6),
            "steps": result.steps,
            "converged": result.converged,
        }

    registry.register(
        ToolDescriptor(
            name="relax_structure",
            description=(
                "Relax atomic positions with a toy pair potential (fixed cell); "
                "reports energies and convergence."
            ),
            param_schema=_obj(
                {
                    "poscar": _POSCAR_PROP,
                    "max_steps": {"type": "integer", "minimum": 1, "description": "default 200"},
                },
                ["poscar"],
            ),
            result_schema=_obj(
                {
                    "final": _POSCAR_PROP,
                    "initial_energy": {"type": "number"},
                    "final_energy": {"type": "number"},
                    "steps": {"type": "integer"},
                    "converged": {"type": "boolean"},
                },
                ["final", "initial_energy", "final_energy", "steps", "converged"],
            ),
        ),
        handle_relax,
    )

    def handle_pxrd(args: dict) -> dict:
        s = _parse_checked(args["poscar"], max_sites)
        src = RadiationSource("custom", args.get("wavelength", 1.5406))
        pattern = simulate_pxrd(
            s,
            src,
            two_theta_range=(args.get("two_theta_min", 10.0), args.get("two_theta_max", 90.0)),
            step=args.get("step", 0.02),
            fwhm=args.get("fwhm", 0.1),
        )
        return pattern.to_dict()

    registry.register(
        ToolDescriptor(
            name="simulate_pxrd",
            description=(
                "Simulate a powder X-ray diffraction pattern (Cu Ka by default); "
                "returns the profile and the peak list with hkl labels."
            ),
            param_schema=_obj(
                {
                    "poscar": _POSCAR_PROP,
                    "wavelength": {"type": "number", "description": "radiation wavelength in A, default 1.5406"},
                    "two_theta_min": {"type": "number", "description": "scan start in degrees, default 10"},
                    "two_theta_max": {"type": "number", "description": "scan end in degrees, default 90"},
                    "step": {"type": "number", "description": "grid step in degrees, default 0.02"},
                    "fwhm": {"type": "number", "description": "Gaussian peak width in degrees, default 0.1"},
                },
                ["poscar"],
            ),
            result_schema=_obj(
                {
                    "two_theta": {"type": "array", "items": {"type": "number"}},
                    "intensity": {"type": "array", "items": {"type": "number"}},
                    "peaks": {
                        "type": "array",
                        "items": _obj(
                            {
                                "two_theta": {"type": "number"},
                                "intensity": {"type": "number"},
                                "hkl": {"type": "array", "items": {"type": "integer"}},
                            },
                            ["two_theta", "intensity", "hkl"],
                        ),
                    },
                },
                ["two_theta", "intensity", "peaks"],
            ),
        ),
        handle_pxrd,
    )

    def handle_predict(args: dict) -> dict:
        s = parse_poscar(args["poscar"])
        return predict.predict_properties(s, max_sites=max_sites)

    registry.register(
        ToolDescriptor(
            name="predict_properties",
            description=(
                "Predict formation energy, bandgaps (Opt/MBJ), and bulk modulus "
                "from a structure (deterministic heuristic stub)."
            ),
            param_schema=_obj({"poscar": _POSCAR_PROP}, ["poscar"]),
            result_schema=_obj(
                {
                    "formation_energy": {"type": "number"},
                    "bandgap_opt": {"type": "number"},
                    "bandgap_mbj": {"type": "number"},
                    "bulk_modulus": {"type": "number"},
                    "note": {"type": "string"},
                },
                ["formation_energy", "bandgap_opt", "bandgap_mbj", "bulk_modulus", "note"],
            ),
        ),
        handle_predict,
    )

    def handle_bands(args: dict) -> dict:
        s = parse_poscar(args["poscar"])
        return predict.band_structure(
            s, npoints=args.get("npoints", predict.DEFAULT_KPOINTS), max_sites=max_sites
        )

    registry.register(
        ToolDescriptor(
            name="compute_bandstructure",
            description="Two-band model band structure on Gamma->X, gapped by the predicted bandgap.",
            param_schema=_obj(
                {
                    "poscar": _POSCAR_PROP,
                    "npoints": {"type": "integer", "minimum": 2, "description": "k-points, default 50"},
                },
                ["poscar"],
            ),
            result_schema=_obj(
                {
                    "kpath_labels": {"type": "array", "items": {"type": "string"}},
                    "energies": {
                        "type": "array",
                        "items": {"type": "array", "items": {"type": "number"}},
                    },
                },
                ["kpath_labels", "energies"],
            ),
        ),
        handle_bands,
    )

    def handle_interface(args: dict) -> dict:
        a = _parse_checked(args["poscar_a"], max_sites)
        b = _parse_checked(args["poscar_b"], max_sites)
        match = interface.generate_interface(
            a,
            b,
            max_area=args.get("max_area", interface.DEFAULT_MAX_AREA),
            strain_tol=args.get("strain_tol", interface.DEFAULT_STRAIN_TOL),
        )
        return {
            "interface": serialize_poscar(match.structure),
            "strain": round(match.strain, 6),
            "matched_cells": list(match.matched_cells),
        }

    registry.register(
        ToolDescriptor(
            name="generate_interface",
            description=(
                "Build a low-strain stacked interface of two slabs via basal-plane "
                "coincidence matching of diagonal supercells."
            ),
            param_schema=_obj(
                {
                    "poscar_a": _POSCAR_PROP,
                    "poscar_b": _POSCAR_PROP,
                    "max_area": {"type": "number", "description": "basal area budget in A^2, default 200, cap 400"},
                    "strain_tol": {"type": "number", "description": "mean absolute strain tolerance, default 0.05"},
                },
                ["poscar_a", "poscar_b"],
            ),
            result_schema=_obj(
                {
                    "interface": _POSCAR_PROP,
                    "strain": {"type": "number"},
                    "matched_cells": {"type": "array", "items": {"type": "integer"}},
                },
                ["interface", "strain", "matched_cells"],
            ),
        ),
        handle_interface,
    )

    def handle_report(args: dict) -> dict:
        sections = args["sections"]
        title = args.get("title", "workflow report")
        if args.get("format", "json") == "text":
            lines = [f"=== {title} ==="]
            for name in sections:
                lines.append(f"## {name}")
                lines.append(json.dumps(sections[name], indent=2, sort_keys=True))
            report: object = "\n".join(lines)
        else:
            report = {"title": title, "sections": sections}
        return {"report": report, "n_sections": len(sections)}

    registry.register(
        ToolDescriptor(
            name="synthesize_report",
            description=(
                "Aggregate named result payloads into a single report, as a JSON "
                "object or rendered text."
            ),
            param_schema=_obj(
                {
                    "title": {"type": "string", "description": "report heading"},
                    "sections": {"type": "object", "description": "named payloads to merge"},
                    "format": {
                        "type": "string",
                        "enum": ["json", "text"],
                        "description": "output form, default json",
                    },
                },
                ["sections"],
            ),
            result_schema=_obj(
                {
                    "report": {"type": ["object", "string"]},
                    "n_sections": {"type": "integer"},
                },
                ["report", "n_sections"],
            ),
        ),
        handle_report,
    )

    def handle_literature(args: dict) -> dict:
        raise NotEnabledError(
            "literature search is not enabled in this deployment",
            hint="use the database query tools instead",
        )

    registry.register(
        ToolDescriptor(
            name="literature_search",
            description="Search the literature (disabled placeholder in this deployment).",
            param_schema=_obj(
                {"query": {"type": "string", "description": "free-text query"}},
                ["query"],
            ),
            result_schema=_obj({"results": {"type": "array"}}, ["results"]),
        ),
        handle_literature,
    )

    return registry
