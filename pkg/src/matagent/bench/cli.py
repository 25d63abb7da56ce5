"""The bench CLI: tps, load, and parity subcommands.

Each subcommand prints a JSON report to stdout; ``--table`` appends an
aligned-column text table.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from importlib import resources
from pathlib import Path

from ..agent.backends import HttpBackend, ScriptedBackend
from ..agent.messages import LlmParams
from .load import HttpTarget, StubTarget, load_sim
from .stats import parity_stats
from .tps import DEFAULT_PROMPT, measure_tps


def _render_table(rows: list[dict]) -> str:
    if not rows:
        return ""
    headers = list(rows[0])
    cells = [[_fmt_cell(r.get(h)) for h in headers] for r in rows]
    widths = [max(len(h), *(len(c[i]) for c in cells)) for i, h in enumerate(headers)]
    lines = [
        "  ".join(h.ljust(w) for h, w in zip(headers, widths)),
        "  ".join("-" * w for w in widths),
    ]
    for row in cells:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)))
    return "\n".join(lines)


def _fmt_cell(value) -> str:
    if isinstance(value, float):
        return f"{value:.3f}"
    return str(value)


def _make_backend(spec: str):
    if spec.startswith("scripted:"):
        path = spec[len("scripted:") :]
        if path == "default":
            fixture = json.loads(
                resources.files("matagent.bench").joinpath("data/tps_demo.json").read_text()
            )
            return ScriptedBackend(fixture)
        return ScriptedBackend(Path(path))
    return HttpBackend(spec)


def _make_target(spec: str, api_key: str | None):
    if spec.startswith("stub:"):
        parts = spec.split(":")
        kind = parts[1]
        if kind == "constant":
            return StubTarget.constant(float(parts[2]))
        if kind == "uniform":
            seed = int(parts[4]) if len(parts) > 4 else 0
            return StubTarget.uniform(float(parts[2]), float(parts[3]), seed=seed)
        if kind == "file":
            return StubTarget(json.loads(Path(":".join(parts[2:])).read_text()))
        raise SystemExit(f"unknown stub profile {spec!r}; use constant/uniform/file")
    return HttpTarget(spec, api_key=api_key)


def _read_csv_column(path: str) -> list[float]:
    values: list[float] = []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row:
                continue
            try:
                values.append(float(row[0]))
            except ValueError:
                continue  # header line
    return values


def cmd_tps(args) -> int:
    backend = _make_backend(args.backend)
    params = LlmParams(model=args.model, temperature=0.0)
    result = measure_tps(backend, params, prompt=args.prompt, n_runs=args.runs)
    print(json.dumps(result.to_dict(), indent=2))
    if args.table:
        rows = [
            {"run": i + 1, "tokens": r.completion_tokens, "seconds": r.elapsed, "tps": r.tps}
            for i, r in enumerate(result.runs)
        ]
        print(_render_table(rows))
    return 0


def cmd_load(args) -> int:
    target = _make_target(args.target, args.api_key)
    report = load_sim(target, n_users=args.users, ramp=args.ramp, requests_per_user=args.requests)
    print(json.dumps(report.to_dict(), indent=2))
    if args.table:
        print(_render_table([report.to_dict()]))
    return 0


def cmd_parity(args) -> int:
    predicted = _read_csv_column(args.predicted)
    reference = _read_csv_column(args.reference)
    stats = parity_stats(predicted, reference)
    print(json.dumps(stats.to_dict(), indent=2))
    if args.table:
        print(_render_table([stats.to_dict()]))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="bench", description="matagent benchmark harness")
    sub = parser.add_subparsers(dest="command", required=True)

    p_tps = sub.add_parser("tps", help="measure token generation throughput")
    p_tps.add_argument("--backend", required=True, help="base URL or scripted:<fixture.json|default>")
    p_tps.add_argument("--model", required=True, help="pinned model version string")
    p_tps.add_argument("--runs", type=int, default=3)
    p_tps.add_argument("--prompt", default=DEFAULT_PROMPT)
    p_tps.add_argument("--table", action="store_true")
    p_tps.set_defaults(func=cmd_tps)

    p_load = sub.add_parser("load", help="simulate concurrent users")
    p_load.add_argument("--target", required=True,
                        help="URL or stub:constant:<s> | stub:uniform:<lo>:<hi>[:seed] | stub:file:<json>")
    p_load.add_argument("--users", type=int, required=True)
    p_load.add_argument("--ramp", type=float, default=1.0, help="stagger window in seconds")
    p_load.add_argument("--requests", type=int, default=1, help="requests per user")
    p_load.add_argument("--api-key", default=None)
    p_load.add_argument("--table", action="store_true")
    p_load.set_defaults(func=cmd_load)

    p_par = sub.add_parser("parity", help="MAE and R^2 between two CSV columns")
    p_par.add_argument("--predicted", required=True, help="CSV file, first column")
    p_par.add_argument("--reference", required=True, help="CSV file, first column")
    p_par.add_argument("--table", action="store_true")
    p_par.set_defaults(func=cmd_parity)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
