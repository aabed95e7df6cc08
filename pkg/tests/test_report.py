import json

import pytest

from sliceopt.bench import MetricsRow
from sliceopt.report import (
    FIGURES, PUBLISHED_TABLES, TABLE_COLUMNS, comparison_markdown, emit_plot_data, emit_tables,
    parse_csv_table, ranking, table_values, write_report,
)
from sliceopt.algorithms import ALGORITHM_NAMES
from sliceopt.slice_model import SliceType


def row(name, slice_type, plr=10.0, dr=1.0, eff=None):
    return MetricsRow(name, SliceType.parse(slice_type), plr, dr, eff, 5.0, 1,
                      {"delay_reduction": 0.0})


def full_rows():
    rows = []
    for s in SliceType:
        for i, name in enumerate(ALGORITHM_NAMES):
            rows.append(row(name, s, plr=10.0 + i + 0.04, dr=0.5 * i - 1.26,
                            eff=60.0 + i if s is SliceType.MMTC else None))
    return rows


def test_table_columns_exact():
    tables = emit_tables(full_rows(), "csv")
    for name, columns in TABLE_COLUMNS.items():
        assert tables[name].splitlines()[0] == ",".join(columns)


def test_partial_table4():
    data = parse_csv_table(emit_tables([row("WOA", "eMBB", plr=31.04)], "csv")["table4"])
    assert data == [{"Algorithm": "WOA", "eMBB Packet Loss Reduction (%)": 31.0,
                     "URLLC Delay Reduction (ms)": None, "mMTC Efficiency (%)": None}]


def test_full_matrix_pivot():
    tables = table_values(full_rows())
    assert [r[0] for r in tables["table4"]] == list(ALGORITHM_NAMES)
    assert len(tables["table2"]) == len(tables["table3"]) == 9


def test_csv_round_trip():
    rows = full_rows()
    values = table_values(rows)
    for name in TABLE_COLUMNS:
        parsed = parse_csv_table(emit_tables(rows, "csv")[name])
        for rec, expected in zip(parsed, values[name]):
            assert [rec[c] for c in TABLE_COLUMNS[name]] == list(expected)


def test_formats_agree():
    rows = full_rows()
    js = json.loads(emit_tables(rows, "json")["table3"])
    csv_ = parse_csv_table(emit_tables(rows, "csv")["table3"])
    assert js == csv_
    md = emit_tables(rows, "markdown")["table2"].splitlines()
    assert md[0] == "| Algorithm | Packet Loss Reduction (%) |"
    assert len(md) == 2 + 9
    with pytest.raises(ValueError):
        emit_tables(rows, "xlsx")


def test_rounding_and_negative_zero():
    rows = [row("GA", "URLLC", plr=None, dr=-0.04)]
    assert table_values(rows)["table3"] == [("GA", 0.0)]
    assert emit_tables(rows, "csv")["table2"].splitlines()[1] == "GA,"


def test_fig_equals_tables():
    rows = full_rows()
    tables = emit_tables(rows, "csv")
    assert emit_plot_data(rows, "fig1") == tables["table2"]
    assert emit_plot_data(rows, "fig2") == tables["table3"]
    assert emit_plot_data(rows, "fig3") == tables["table4"]
    assert len(emit_plot_data(rows, "fig1").splitlines()) == 1 + 9


def test_fig3_partial():
    rows = [row(a, "eMBB") for a in ALGORITHM_NAMES]
    for rec in parse_csv_table(emit_plot_data(rows, "fig3")):
        assert rec["eMBB Packet Loss Reduction (%)"] == 10.0
        assert rec["URLLC Delay Reduction (ms)"] is None and rec["mMTC Efficiency (%)"] is None


def test_unknown_figure():
    with pytest.raises(ValueError):
        emit_plot_data(full_rows(), "fig4")


def test_write_report(tmp_path):
    rows = full_rows()
    paths = write_report(rows, tmp_path)
    names = sorted(p.rsplit("/", 1)[-1] for p in paths)
    for t in ("table2", "table3", "table4"):
        for ext in ("csv", "json", "md"):
            assert "%s.%s" % (t, ext) in names
    for fig in FIGURES:
        assert fig + ".csv" in names
    assert "published_comparison.md" in names
    first = {p: open(p).read() for p in paths}
    write_report(rows, tmp_path)
    assert first == {p: open(p).read() for p in paths}


def test_ranking_and_comparison():
    rows = full_rows()
    order = ranking(rows)["mMTC Efficiency (%)"]
    assert order[0] == "Firefly" and order[-1] == "GA"
    text = comparison_markdown(rows)
    assert "Published" in text and "WOA" in text
    assert set(PUBLISHED_TABLES["table2"]) == set(ALGORITHM_NAMES)
