"""Command-line front end: deterministic CSV/JSONL emission of sweeps.

Exit codes: 0 success, 2 config error, 3 resource-cap error, 4 numeric
failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .chain import ChainSpec
from .errors import DomainError, NumericError, ResourceCapError
from .sweep import (
    GridAxis,
    channel_curve,
    concurrence_curve,
    design_report,
    phase_scan,
    table1_rows,
)

_FLOAT_FMT = "%.17g"


def _fmt(value) -> str:
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return _FLOAT_FMT % value
    return str(value)


def _emit(header: list[str], rows, out, fmt: str) -> None:
    if fmt == "csv":
        out.write(",".join(header) + "\n")
        for row in rows:
            out.write(",".join(_fmt(v) for v in row) + "\n")
    else:
        for row in rows:
            obj = {k: v for k, v in zip(header, row)}
            out.write(json.dumps(obj) + "\n")


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise DomainError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DomainError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise DomainError("config must be a JSON object")
    return obj


def _require(config: dict, key: str):
    if key not in config:
        raise DomainError(f"config is missing required key {key!r}")
    return config[key]


def _axis(config: dict, name: str) -> GridAxis:
    grid = _require(config, "grid")
    if not isinstance(grid, dict) or name not in grid:
        raise DomainError(f"config grid is missing axis {name!r}")
    return GridAxis.from_config(grid[name])


def _cmd_phase_scan(config: dict):
    template = ChainSpec.from_dict(_require(config, "spec"))
    points = phase_scan(template, _axis(config, "delta"), _axis(config, "B"))
    header = [
        "delta",
        "B",
        "n_up",
        "sector_rank",
        "ground_energy",
        "degeneracy",
        "boundary_concurrence",
    ]
    rows = (
        (p.delta, p.field, p.n_up, p.sector_rank, p.ground_energy, p.degeneracy,
         p.boundary_concurrence)
        for p in points
    )
    return header, rows


def _cmd_curve(config: dict):
    template = ChainSpec.from_dict(_require(config, "spec"))
    pair = _require(config, "pair")
    if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
        raise DomainError("config 'pair' must be a two-element list [i, j]")
    deltas = tuple(float(d) for d in config.get("delta_values", [template.delta]))
    rows = concurrence_curve(
        template, (int(pair[0]), int(pair[1])), _axis(config, "B"), deltas
    )
    return ["delta", "B", "concurrence"], rows


def _cmd_channel(config: dict):
    n_values = tuple(int(n) for n in _require(config, "n_sites_values"))
    coupling = float(config.get("coupling", 1.0))
    rows = channel_curve(n_values, _axis(config, "beta"), coupling)
    return (
        ["n_sites", "beta", "c1n_numeric", "c1n_closed_form", "max_ratio_deviation"],
        rows,
    )


def _cmd_design(config: dict):
    report = design_report(
        int(_require(config, "n_sites")),
        float(_require(config, "target")),
        float(config.get("coupling", 1.0)),
    )
    header = ["n_sites", "target", "status", "beta", "bulk_field", "achieved"]
    return header, [tuple(report[k] for k in header)]


def _cmd_table1(config: dict):
    deltas = tuple(float(d) for d in config.get("delta_values", (0.0, 0.5, 1.0, 2.0)))
    header = [
        "delta",
        "regime",
        "n_up",
        "b_lo_numeric",
        "b_hi_numeric",
        "b_lo_reference",
        "b_hi_reference",
        "b_lo_abs_delta",
        "b_hi_abs_delta",
        "c14_max_numeric",
        "c14_max_reference",
        "c14_max_abs_delta",
        "two_up_energy_numeric",
        "two_up_energy_reference",
    ]
    return header, table1_rows(deltas)


_COMMANDS = {
    "phase-scan": _cmd_phase_scan,
    "curve": _cmd_curve,
    "channel": _cmd_channel,
    "design": _cmd_design,
    "table1": _cmd_table1,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xxzchain",
        description="Spin-chain sweeps: phase diagrams, concurrence curves, "
        "and boundary-entanglement channel sizing.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        cmd = sub.add_parser(name)
        cmd.add_argument("--config", help="JSON config path")
        cmd.add_argument("--out", help="output path (default: stdout)")
        cmd.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = _load_config(args.config)
        header, rows = _COMMANDS[args.command](config)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                _emit(header, rows, fh, args.format)
        else:
            _emit(header, rows, sys.stdout, args.format)
    except DomainError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ResourceCapError as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        return 3
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
