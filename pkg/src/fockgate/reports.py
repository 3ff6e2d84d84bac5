"""Render gate-lab results as aligned text tables, CSV, or JSON.

All three formats are generated from the same (header, rows) data, so
their numbers always agree.  Rendering is deterministic: 12
significant digits, no timestamps, fixed row order, and "\n" line
endings, so identical inputs produce byte-identical output.

Many of the quantities are exact small rationals (1/3, 1/9, 8/9, ...);
where a value matches one within tolerance, the text table appends the
fraction inline and the JSON carries a side map of annotations.  CSV
stays purely numeric so it parses cleanly.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from .fock import TOLERANCE
from .gate import ErrorBudget, GateReport, ScanRow

MAX_DENOMINATOR = 16


def format_number(value: float) -> str:
    """12-significant-digit decimal, canonical for all outputs."""
    text = f"{float(value):.12g}"
    return "0" if text == "-0" else text


def format_complex(value: complex) -> str:
    """Compact complex rendering: plain real when the imaginary part
    rounds to zero, else ``a+bi`` / ``a-bi``."""
    z = complex(value)
    re, im = format_number(z.real), format_number(z.imag)
    if im == "0":
        return re
    sign, mag = ("-", format_number(abs(z.imag))) if z.imag < 0 else ("+", im)
    return f"{re}{sign}{mag}i"


def rational_note(value: float, max_denominator: int = MAX_DENOMINATOR) -> str | None:
    """Fraction string like ``"1/9"`` when the value sits within the
    global tolerance of a small rational; None otherwise.

    Integers (denominator 1) return no note — the decimal already says
    it all.
    """
    if isinstance(value, complex):
        if abs(value.imag) > TOLERANCE:
            return None
        value = value.real
    frac = Fraction(value).limit_denominator(max_denominator)
    if abs(value - float(frac)) > TOLERANCE or frac.denominator == 1:
        return None
    return f"{frac.numerator}/{frac.denominator}"


def _annotated(value) -> str:
    base = format_complex(value) if isinstance(value, complex) else format_number(value)
    note = rational_note(value)
    return f"{base} (= {note})" if note else base


def _cell_text(value, with_notes: bool) -> str:
    if isinstance(value, str):
        return value
    if with_notes:
        return _annotated(value)
    if isinstance(value, complex):
        return format_complex(value)
    return format_number(value)


def render_table(title_lines, header, rows) -> str:
    """Aligned plain-text table with rational notes, preceded by
    title lines."""
    text_rows = [list(header)]
    text_rows += [[_cell_text(cell, True) for cell in row] for row in rows]
    widths = [max(len(r[i]) for r in text_rows) for i in range(len(header))]
    lines = list(title_lines)
    for k, row in enumerate(text_rows):
        padded = [
            cell.ljust(w) if i == 0 else cell.rjust(w)
            for i, (cell, w) in enumerate(zip(row, widths))
        ]
        lines.append("  ".join(padded).rstrip())
        if k == 0:
            lines.append("-" * len(lines[-1]))
    return "\n".join(lines) + "\n"


def render_csv(header, rows) -> str:
    """Comma-separated output; complex cells must already be split
    into _re/_im columns by the row builders."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell_text(cell, False) for cell in row])
    return buffer.getvalue()


def json_document(meta: dict, data: dict, annotations: dict) -> str:
    """Single JSON object with meta / data / annotations sections."""
    payload = {"meta": meta, "data": data, "annotations": annotations}
    return json.dumps(payload, indent=2) + "\n"


def _json_number(value: float) -> float:
    return float(format_number(value))


def _json_complex(value: complex) -> dict:
    z = complex(value)
    return {"re": _json_number(z.real), "im": _json_number(z.imag)}


def _matrix_json(matrix) -> list:
    return [[_json_complex(z) for z in row] for row in matrix]


def _note_matrix(prefix: str, matrix, annotations: dict) -> None:
    for j, row in enumerate(matrix):
        for i, z in enumerate(row):
            note = rational_note(complex(z))
            if note is not None:
                annotations[f"{prefix}[{j}][{i}]"] = note


# ---------------------------------------------------------------- truth table

def truth_table_rows(report: GateReport):
    """One row per encoded input: output amplitudes (re/im split) and
    the success probability."""
    header = ["input"]
    for label in report.labels:
        header += [f"amp_{label}_re", f"amp_{label}_im"]
    header.append("success")
    rows = []
    for i, label in enumerate(report.labels):
        row: list = [label]
        for j in range(len(report.labels)):
            z = complex(report.truth_table[j, i])
            row += [z.real, z.imag]
        row.append(float(report.success_probabilities[i]))
        rows.append(tuple(row))
    return tuple(header), tuple(rows)


def truth_table_titles(report: GateReport) -> list[str]:
    return [
        f"truth table — encoding {report.encoding}, "
        f"reflectivity {_annotated(report.reflectivity)}, rule {report.rule}",
        f"columns: amplitude toward each output basis state; "
        f"fidelity vs ideal {_annotated(report.fidelity)}",
        "",
    ]


def truth_table_text(report: GateReport) -> str:
    header = ["input"] + [f"-> {label}" for label in report.labels] + ["success"]
    rows = []
    for i, label in enumerate(report.labels):
        row: list = [label]
        row += [complex(report.truth_table[j, i]) for j in range(len(report.labels))]
        row.append(float(report.success_probabilities[i]))
        rows.append(tuple(row))
    return render_table(truth_table_titles(report), header, rows)


def truth_table_json(report: GateReport):
    table = [
        [report.truth_table[j, i] for i in range(4)] for j in range(4)
    ]
    conditional = [
        [report.conditional_table[j, i] for i in range(4)] for j in range(4)
    ]
    data = {
        "encoding": report.encoding,
        "reflectivity": _json_number(report.reflectivity),
        "rule": report.rule,
        "labels": list(report.labels),
        "truth_table": _matrix_json(table),
        "conditional_table": _matrix_json(conditional),
        "success_probabilities": [
            _json_number(p) for p in report.success_probabilities
        ],
        "fidelity": _json_number(report.fidelity),
    }
    annotations: dict = {}
    _note_matrix("truth_table", table, annotations)
    for i, p in enumerate(report.success_probabilities):
        note = rational_note(float(p))
        if note:
            annotations[f"success_probabilities[{i}]"] = note
    note = rational_note(report.fidelity)
    if note:
        annotations["fidelity"] = note
    return data, annotations


# --------------------------------------------------------------- error budget

BUDGET_HEADER = ("input", "success", "loss", "bunching", "total")


def budget_rows(budgets: dict[str, ErrorBudget]):
    rows = tuple(
        (label, b.success, b.loss, b.bunching, b.total)
        for label, b in budgets.items()
    )
    return BUDGET_HEADER, rows


def budget_titles(reflectivity: float) -> list[str]:
    return [
        f"error budget — reflectivity {_annotated(reflectivity)}",
        "success: one photon per output port; loss: any loss mode occupied; "
        "bunching: both photons in one port",
        "",
    ]


def budget_text(budgets: dict[str, ErrorBudget], reflectivity: float) -> str:
    header, rows = budget_rows(budgets)
    return render_table(budget_titles(reflectivity), header, rows)


def budget_json(budgets: dict[str, ErrorBudget], reflectivity: float):
    data = {
        "reflectivity": _json_number(reflectivity),
        "rows": [
            {
                "input": label,
                "success": _json_number(b.success),
                "loss": _json_number(b.loss),
                "bunching": _json_number(b.bunching),
                "total": _json_number(b.total),
            }
            for label, b in budgets.items()
        ],
    }
    annotations: dict = {}
    for label, b in budgets.items():
        for field in ("success", "loss", "bunching"):
            note = rational_note(getattr(b, field))
            if note:
                annotations[f"{label}.{field}"] = note
    return data, annotations


# ----------------------------------------------------------------------- scan

SCAN_HEADER = (
    "reflectivity",
    "amp_00",
    "amp_01",
    "amp_10",
    "amp_11",
    "imbalance",
)


def scan_rows(rows: list[ScanRow]):
    table = tuple(
        (r.reflectivity, r.amp_00, r.amp_01, r.amp_10, r.amp_11, r.imbalance)
        for r in rows
    )
    return SCAN_HEADER, table


def scan_titles() -> list[str]:
    return [
        "reflectivity scan — stay-put amplitudes of one beam splitter",
        "imbalance = |amp_11| - amp_01*amp_10; zero at the balanced reflectivity",
        "",
    ]


def scan_text(rows: list[ScanRow]) -> str:
    header, table = scan_rows(rows)
    return render_table(scan_titles(), header, table)


def scan_json(rows: list[ScanRow]):
    data = {
        "columns": list(SCAN_HEADER),
        "rows": [
            [
                _json_number(r.reflectivity),
                _json_number(r.amp_00),
                _json_number(r.amp_01),
                _json_number(r.amp_10),
                _json_number(r.amp_11),
                _json_number(r.imbalance),
            ]
            for r in rows
        ],
    }
    annotations: dict = {}
    for k, r in enumerate(rows):
        note = rational_note(r.reflectivity)
        if note:
            annotations[f"rows[{k}].reflectivity"] = note
    return data, annotations
