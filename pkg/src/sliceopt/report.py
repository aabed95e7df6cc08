"""
Result tables and plot data in the layout of the published comparison.

Every emitted value comes from ``MetricsRow`` objects through
``table_values``, so tables and figure files cannot disagree.
"""

from __future__ import annotations

import csv
import io
import json
import os

import numpy as np

from .algorithms import ALGORITHM_NAMES
from .slice_model import SliceType

__all__ = [
    "TABLE_COLUMNS",
    "FIGURES",
    "PUBLISHED_TABLES",
    "table_values",
    "emit_tables",
    "emit_plot_data",
    "parse_csv_table",
    "write_report",
]

TABLE_COLUMNS = {
    "table2": ("Algorithm", "Packet Loss Reduction (%)"),
    "table3": ("Algorithm", "Delay Reduction (ms)"),
    "table4": (
        "Algorithm",
        "eMBB Packet Loss Reduction (%)",
        "URLLC Delay Reduction (ms)",
        "mMTC Efficiency (%)",
    ),
}

FIGURES = {
    "fig1": ("table2", "Packet Loss Reduction (%)"),
    "fig2": ("table3", "Delay Reduction (ms)"),
    "fig3": ("table4", None),
}

# Published values, kept for side-by-side comparison only (the
# original table labels "GO" and "WOW" are read as GWO and WOA).
PUBLISHED_TABLES = {
    "table2": {"GA": 25, "PSO": 30, "GWO": 28, "ACO": 27, "SA": 24, "ABC": 29,
               "BWO": 26, "WOA": 31, "Firefly": 27},
    "table3": {"GA": 5.2, "PSO": 6.1, "GWO": 5.9, "ACO": 5.4, "SA": 4.8, "ABC": 6.0,
               "BWO": 5.5, "WOA": 6.3, "Firefly": 5.6},
    "table4": {
        "GA": (23, 4.8, 60), "PSO": (29, 5.9, 65), "GWO": (27, 5.7, 63),
        "ACO": (26, 5.2, 61), "SA": (22, 4.5, 59), "ABC": (28, 5.8, 64),
        "BWO": (25, 5.4, 62), "WOA": (30, 6.1, 66), "Firefly": (26, 5.5, 63),
    },
}


def _round(value):
    if value is None:
        return None
    out = round(float(value), 1)
    return 0.0 if out == 0.0 else out


def _mean(values):
    values = [v for v in values if v is not None]
    return float(np.mean(values)) if values else None


def table_values(rows):
    """
    Pivot metric rows into the three tables, one data row per algorithm.

    Tables 2 and 3 average each algorithm's reductions over the slices
    present; table 4 takes eMBB loss reduction, URLLC delay reduction and
    mMTC efficiency from their own slices. Values are rounded to 1 decimal
    and missing cells are None.
    """
    by_cell = {(r.algorithm, r.slice_type): r for r in rows}
    present = [a for a in ALGORITHM_NAMES if any(r.algorithm == a for r in rows)]

    tables = {"table2": [], "table3": [], "table4": []}
    for name in present:
        mine = [r for r in rows if r.algorithm == name]
        tables["table2"].append((name, _round(_mean([r.packet_loss_reduction for r in mine]))))
        tables["table3"].append((name, _round(_mean([r.delay_reduction for r in mine]))))

        embb = by_cell.get((name, SliceType.EMBB))
        urllc = by_cell.get((name, SliceType.URLLC))
        mmtc = by_cell.get((name, SliceType.MMTC))
        tables["table4"].append((
            name,
            _round(embb.packet_loss_reduction) if embb else None,
            _round(urllc.delay_reduction) if urllc else None,
            _round(mmtc.efficiency) if mmtc else None,
        ))
    return tables


def _cell(value):
    return "" if value is None else "%.1f" % value


def _csv(columns, data):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in data:
        writer.writerow([row[0]] + [_cell(v) for v in row[1:]])
    return buf.getvalue()


def _markdown(columns, data):
    lines = ["| " + " | ".join(columns) + " |", "|" + "|".join("---" for _ in columns) + "|"]
    for row in data:
        lines.append("| " + " | ".join([row[0]] + [_cell(v) for v in row[1:]]) + " |")
    return "\n".join(lines) + "\n"


def _json(columns, data):
    records = [dict(zip(columns, row)) for row in data]
    return json.dumps(records, indent=2) + "\n"


def emit_tables(rows, format="csv"):
    """Render tables 2 to 4 as ``{"table2": text, ...}`` in one format."""
    render = {"csv": _csv, "json": _json, "markdown": _markdown, "md": _markdown}
    try:
        fn = render[format]
    except KeyError:
        raise ValueError("unknown table format %r" % format) from None
    values = table_values(rows)
    return {name: fn(TABLE_COLUMNS[name], data) for name, data in values.items()}


def emit_plot_data(rows, figure):
    """
    CSV series behind one figure.

    ``fig1`` and ``fig2`` are bar-chart data, one (algorithm, value) pair per
    line; ``fig3`` holds the three slice series aligned by algorithm.
    """
    if figure not in FIGURES:
        raise ValueError("unknown figure %r, expected one of %s" % (figure, ", ".join(FIGURES)))
    table, _ = FIGURES[figure]
    return _csv(TABLE_COLUMNS[table], table_values(rows)[table])


def parse_csv_table(text):
    """Inverse of the CSV emitters: list of dicts with floats or None."""
    reader = csv.DictReader(io.StringIO(text))
    out = []
    for rec in reader:
        parsed = {}
        for key, value in rec.items():
            if key == "Algorithm":
                parsed[key] = value
            else:
                parsed[key] = float(value) if value != "" else None
        out.append(parsed)
    return out


def ranking(rows):
    """Algorithms ordered best-first for each table-4 column."""
    table4 = table_values(rows)["table4"]
    columns = TABLE_COLUMNS["table4"][1:]
    out = {}
    for k, column in enumerate(columns, start=1):
        scored = [(row[0], row[k]) for row in table4 if row[k] is not None]
        out[column] = [name for name, _ in sorted(scored, key=lambda s: -s[1])]
    return out


def comparison_markdown(rows):
    """Our tables next to the published ones, plus per-slice rankings."""
    ours = table_values(rows)
    lines = ["# Comparison with published tables", "",
             "Informational only: the published network data and simulator are not",
             "available, so no numeric agreement is expected.", ""]
    for name in ("table2", "table3"):
        column = TABLE_COLUMNS[name][1]
        lines += ["## %s: %s" % (name, column), "",
                  "| Algorithm | This run | Published |", "|---|---|---|"]
        for algo, value in ours[name]:
            lines.append("| %s | %s | %s |" % (algo, _cell(value), _cell(PUBLISHED_TABLES[name][algo])))
        lines.append("")
    lines += ["## table4", "", "| Algorithm | " + " | ".join(
        "%s (run / published)" % c for c in TABLE_COLUMNS["table4"][1:]) + " |",
        "|---|---|---|---|"]
    for row in ours["table4"]:
        pub = PUBLISHED_TABLES["table4"][row[0]]
        cells = ["%s / %s" % (_cell(v), _cell(p)) for v, p in zip(row[1:], pub)]
        lines.append("| %s | %s |" % (row[0], " | ".join(cells)))
    lines += ["", "## Ranking per slice metric (best first)", ""]
    for column, order in ranking(rows).items():
        pub = sorted(PUBLISHED_TABLES["table4"], key=lambda a: -PUBLISHED_TABLES["table4"][a][
            TABLE_COLUMNS["table4"].index(column) - 1])
        lines.append("- %s: run %s; published %s" % (column, ", ".join(order), ", ".join(pub)))
    return "\n".join(lines) + "\n"


def _write(path, text):
    with open(path, "w", newline="") as fh:
        fh.write(text)


def write_report(rows, out_dir):
    """
    Write tables in csv, json and markdown, figure data and the comparison
    note under ``out_dir``. Returns the list of written paths.
    """
    os.makedirs(out_dir, exist_ok=True)
    written = []
    for fmt, ext in (("csv", "csv"), ("json", "json"), ("markdown", "md")):
        for name, text in emit_tables(rows, fmt).items():
            path = os.path.join(out_dir, "%s.%s" % (name, ext))
            _write(path, text)
            written.append(path)
    for fig in FIGURES:
        path = os.path.join(out_dir, "%s.csv" % fig)
        _write(path, emit_plot_data(rows, fig))
        written.append(path)
    path = os.path.join(out_dir, "published_comparison.md")
    _write(path, comparison_markdown(rows))
    written.append(path)
    path = os.path.join(out_dir, "metrics.json")
    _write(path, json.dumps([r.to_dict() for r in rows], indent=2) + "\n")
    written.append(path)
    return written
