"""Command-line front end for the gate lab.

Four subcommands: ``truth-table`` and ``error-budget`` report on the
post-selected gate, ``scan`` sweeps the beam-splitter reflectivity,
and ``verify`` runs the named invariant checks.  Reports go to stdout
or ``--out`` as an aligned table, CSV, or JSON; ``--plot`` additionally
renders the matching figure to a PNG next to the delimited output.

A ``--config`` file supplies defaults as flat ``key=value`` lines;
explicit flags win over file values.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from math import sqrt
from pathlib import Path

from . import __version__
from .fock import PureState
from .gate import (
    BALANCED_REFLECTIVITY,
    POLARIZATION_LABELS,
    QUBIT_REGISTRY,
    error_budget,
    polarization_basis_state,
    reflectivity_scan,
    truth_table,
)
from .reports import (
    budget_json,
    budget_rows,
    budget_text,
    json_document,
    render_csv,
    scan_json,
    scan_rows,
    scan_text,
    truth_table_json,
    truth_table_rows,
    truth_table_text,
)
from .selfcheck import run_all_checks

DEFAULT_SCAN_GRID = "0:0.5:0.025"
NORMALIZATION_WARNING = 1e-9
_PLOT_REQUESTED = ""  # sentinel: --plot given without a path

CONFIG_KEYS = (
    "encoding",
    "reflectivity",
    "grid",
    "input",
    "rule",
    "format",
    "out",
    "seed",
    "plot",
)


@dataclass
class ScenarioConfig:
    """Resolved parameters for one command invocation."""

    command: str
    encoding: str = "phase"
    reflectivity: float = BALANCED_REFLECTIVITY
    grid_spec: str = DEFAULT_SCAN_GRID
    input_spec: str | None = None
    rule: str = "full"
    format: str = "table"
    out: str | None = None
    seed: int | None = None
    plot: str | None = None


def parse_config_file(path: str) -> dict[str, str]:
    """Flat key=value file; blank lines and #-comments are skipped."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in CONFIG_KEYS:
            raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
        values[key] = value
    return values


def parse_grid(spec: str) -> tuple[float, ...]:
    """Inclusive ``start:stop:step`` grid of reflectivities."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid must be start:stop:step, got {spec!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise ValueError(f"grid has non-numeric parts: {spec!r}") from None
    if step <= 0.0:
        raise ValueError(f"grid step must be positive, got {step}")
    if stop < start:
        raise ValueError(f"grid stop {stop} lies before start {start}")
    count = int(round((stop - start) / step))
    points = [start + k * step for k in range(count + 1)]
    # keep the endpoint exact when rounding drifted past it
    points = [p for p in points if p <= stop + step * 1e-9]
    if points and abs(points[-1] - stop) < step * 1e-9:
        points[-1] = stop
    for p in points:
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"grid value {p} outside [0, 1]")
    if not points:
        raise ValueError(f"grid {spec!r} contains no points")
    return tuple(points)


def parse_input_spec(spec: str):
    """Basis label (``VH``) or four comma-separated complex amplitudes
    on the (VV, VH, HV, HH) coincidence basis, e.g.
    ``0.7071,0,0,0.7071j``.  Amplitude lists are normalized on load,
    with a warning when the correction is more than cosmetic."""
    text = spec.strip()
    if text.upper() in POLARIZATION_LABELS:
        return text.upper()
    parts = text.split(",")
    if len(parts) != 4:
        raise ValueError(
            f"input must be one of {POLARIZATION_LABELS} or 4 comma-separated "
            f"amplitudes, got {spec!r}"
        )
    try:
        amplitudes = [complex(p.strip()) for p in parts]
    except ValueError:
        raise ValueError(f"could not parse amplitudes from {spec!r}") from None
    norm = sqrt(sum(abs(a) ** 2 for a in amplitudes))
    if norm == 0.0:
        raise ValueError("input amplitudes are all zero")
    if abs(norm - 1.0) > NORMALIZATION_WARNING:
        print(
            f"warning: input renormalized (norm was {norm:.12g})", file=sys.stderr
        )
    terms = {}
    for amplitude, label in zip(amplitudes, POLARIZATION_LABELS):
        if amplitude == 0:
            continue
        (occ,) = polarization_basis_state(label).terms
        terms[occ] = amplitude / norm
    return PureState(QUBIT_REGISTRY, terms)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fockgate",
        description="Post-selected photonic phase-gate lab.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, with_format=True):
        p.add_argument("--config", help="flat key=value config file")
        p.add_argument("--out", help="write the report to this file")
        p.add_argument(
            "--seed", type=int, help="seed for randomized checks, recorded in JSON"
        )
        if with_format:
            p.add_argument(
                "--format",
                choices=("table", "csv", "json"),
                help="output format (default: table; scan defaults to csv)",
            )
            p.add_argument(
                "--plot",
                nargs="?",
                const=_PLOT_REQUESTED,
                metavar="PNG",
                help="also render the figure (default path derives from --out)",
            )

    p_truth = sub.add_parser(
        "truth-table", help="post-selected 4x4 amplitude table"
    )
    p_truth.add_argument("--encoding", choices=("phase", "cnot"))
    p_truth.add_argument("--reflectivity", type=float)
    p_truth.add_argument("--rule", choices=("full", "practical"))
    add_common(p_truth)

    p_budget = sub.add_parser(
        "error-budget", help="success / loss / bunching probabilities"
    )
    p_budget.add_argument(
        "--input",
        dest="input_spec",
        help="basis label (VV, VH, HV, HH) or 4 comma-separated amplitudes",
    )
    p_budget.add_argument("--reflectivity", type=float)
    add_common(p_budget)

    p_scan = sub.add_parser(
        "scan", help="beam-splitter amplitudes across a reflectivity grid"
    )
    p_scan.add_argument("--grid", help="start:stop:step, inclusive endpoint")
    add_common(p_scan)

    p_verify = sub.add_parser("verify", help="run the invariant check suite")
    p_verify.add_argument("--reflectivity", type=float)
    add_common(p_verify, with_format=False)

    return parser


def _resolve(args: argparse.Namespace) -> ScenarioConfig:
    file_values = parse_config_file(args.config) if args.config else {}

    def pick(attr: str, key: str | None = None):
        value = getattr(args, attr, None)
        if value is None:
            value = file_values.get(key or attr)
        return value

    cfg = ScenarioConfig(command=args.command)
    if (value := pick("encoding")) is not None:
        cfg.encoding = value
    if (value := pick("reflectivity")) is not None:
        cfg.reflectivity = float(value)
        if not 0.0 <= cfg.reflectivity <= 1.0:
            raise ValueError(f"reflectivity {cfg.reflectivity} outside [0, 1]")
    if (value := pick("grid")) is not None:
        cfg.grid_spec = value
    if (value := pick("input_spec", "input")) is not None:
        cfg.input_spec = value
    if (value := pick("rule")) is not None:
        cfg.rule = value
    if (value := pick("format")) is not None:
        if value not in ("table", "csv", "json"):
            raise ValueError(f"unknown format {value!r}")
        cfg.format = value
    elif args.command == "scan":
        cfg.format = "csv"
    if (value := pick("out")) is not None:
        cfg.out = value
    if (value := pick("seed")) is not None:
        cfg.seed = int(value)
    if (value := pick("plot")) is not None:
        cfg.plot = _derive_plot_path(str(value), cfg.out, args.command)
    return cfg


def _derive_plot_path(requested: str, out: str | None, command: str) -> str:
    if requested not in (_PLOT_REQUESTED, "true"):
        return requested
    if out:
        return str(Path(out).with_suffix(".png"))
    return f"{command}.png"


def _meta(cfg: ScenarioConfig) -> dict:
    shown = {
        "command": cfg.command,
        "encoding": cfg.encoding,
        "reflectivity": cfg.reflectivity,
        "rule": cfg.rule,
        "format": cfg.format,
    }
    if cfg.command == "scan":
        shown["grid"] = cfg.grid_spec
    if cfg.input_spec is not None:
        shown["input"] = cfg.input_spec
    return {"version": __version__, "seed": cfg.seed, "config": shown}


def _emit(cfg: ScenarioConfig, text: str) -> None:
    if cfg.out:
        Path(cfg.out).write_text(text)
        print(f"report written to {cfg.out}", file=sys.stderr)
    else:
        sys.stdout.write(text)


def _note_figure(path: str) -> None:
    print(f"figure written to {path}", file=sys.stderr)


def cmd_truth_table(cfg: ScenarioConfig) -> int:
    report = truth_table(cfg.encoding, cfg.reflectivity, cfg.rule)
    if cfg.format == "table":
        text = truth_table_text(report)
    elif cfg.format == "csv":
        header, rows = truth_table_rows(report)
        text = render_csv(header, rows)
    else:
        data, annotations = truth_table_json(report)
        text = json_document(_meta(cfg), data, annotations)
    _emit(cfg, text)
    if cfg.plot:
        from .plots import plot_truth_table

        _note_figure(plot_truth_table(report, cfg.plot))
    return 0


def cmd_error_budget(cfg: ScenarioConfig) -> int:
    if cfg.input_spec is None:
        budgets = {
            label: error_budget(label, cfg.reflectivity)
            for label in POLARIZATION_LABELS
        }
    else:
        parsed = parse_input_spec(cfg.input_spec)
        label = parsed if isinstance(parsed, str) else "custom"
        budgets = {label: error_budget(parsed, cfg.reflectivity)}
    if cfg.format == "table":
        text = budget_text(budgets, cfg.reflectivity)
    elif cfg.format == "csv":
        header, rows = budget_rows(budgets)
        text = render_csv(header, rows)
    else:
        data, annotations = budget_json(budgets, cfg.reflectivity)
        text = json_document(_meta(cfg), data, annotations)
    _emit(cfg, text)
    if cfg.plot:
        from .plots import plot_budget

        _note_figure(plot_budget(budgets, cfg.plot, cfg.reflectivity))
    return 0


def cmd_scan(cfg: ScenarioConfig) -> int:
    rows = reflectivity_scan(parse_grid(cfg.grid_spec))
    if cfg.format == "table":
        text = scan_text(rows)
    elif cfg.format == "csv":
        header, table = scan_rows(rows)
        text = render_csv(header, table)
    else:
        data, annotations = scan_json(rows)
        text = json_document(_meta(cfg), data, annotations)
    _emit(cfg, text)
    if cfg.plot:
        from .plots import plot_scan

        _note_figure(plot_scan(rows, cfg.plot))
    return 0


def cmd_verify(cfg: ScenarioConfig) -> int:
    seed = 0 if cfg.seed is None else cfg.seed
    results = run_all_checks(cfg.reflectivity, seed)
    lines = []
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        lines.append(f"{status}  {result.name:<28}  {result.detail}")
    failed = sum(not r.passed for r in results)
    lines.append(
        f"{len(results) - failed}/{len(results)} checks passed"
        + (f", {failed} FAILED" if failed else "")
    )
    _emit(cfg, "\n".join(lines) + "\n")
    return 1 if failed else 0


COMMANDS = {
    "truth-table": cmd_truth_table,
    "error-budget": cmd_error_budget,
    "scan": cmd_scan,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _resolve(args)
        return COMMANDS[args.command](cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
