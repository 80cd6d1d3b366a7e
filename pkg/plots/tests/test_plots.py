"""Renderer and CLI tests, driven by handcrafted schema-exact CSV files."""

import matplotlib.pyplot as plt
import pytest

from plots import PlotError, build_spec, render
from plots.cli import main

FIG1_CSV = (
    "delta_nominal,delta_realized,seed,exact_log10,comb_lb_log10,"
    "basic_lb_log10,refined_lb_log10,sidorenko_lb_log10\n"
    "0.25,0.2519,11,7.1,6.0,6.5,6.8,5.2\n"
    "0.5,0.5002,12,9.7,7.7,9.5,9.6,8.3\n"
    "1,1,13,12.3,8.6,12.3,12.3,11.1\n"
)

FIG2_CSV = (
    "n,delta_nominal,delta_realized,seed,exact_log10,comb_lb_log10,"
    "basic_lb_log10,refined_lb_log10,sidorenko_lb_log10\n"
    "100,0.25,0.25,21,,5.0,4.0,5.5,3.0\n"
    "100,0.5,0.5,22,,6.0,5.5,6.5,4.5\n"
    "1000,0.25,0.25,23,,15.0,14.0,15.5,13.0\n"
    "1000,0.5,0.5,24,,16.0,15.5,16.5,14.5\n"
)

FIG3_CSV = (
    "n,delta,mean_exact_log10,mean_general_lb_log10,mean_ub_log10,instances\n"
    "10,0.25,2.9,2.7,3.5,100\n"
    "10,0.75,5.6,5.2,5.9,100\n"
    "20,0.25,,4.1,5.0,100\n"
    "20,0.75,8.8,8.1,9.2,100\n"
)

FIG4_CSV = (
    "n,delta,mean_general_lb_log10,mean_ub_log10,instances\n"
    "10,0.25,9.5,9.9,50\n"
    "10,0.75,4.2,4.9,50\n"
    "20,0.25,17.8,18.6,50\n"
    "20,0.75,8.0,9.1,50\n"
)


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


def test_fig1_five_series(tmp_path):
    csv = write(tmp_path, "fig1.csv", FIG1_CSV)
    out = tmp_path / "fig1.png"
    fig = render(build_spec("fig1", csv, out))
    try:
        (ax,) = fig.axes
        assert len(ax.lines) == 5
        assert [t.get_text() for t in ax.get_legend().get_texts()] == [
            "exact",
            "combinatorial LB",
            "entropy LB",
            "refined entropy LB",
            "Sidorenko LB",
        ]
        assert list(ax.lines[0].get_xdata()) == [0.25, 0.5, 1.0]
    finally:
        plt.close(fig)
    assert out.exists() and out.stat().st_size > 0


def test_fig2_grouped_by_size(tmp_path):
    csv = write(tmp_path, "fig2.csv", FIG2_CSV)
    out = tmp_path / "fig2.png"
    fig = render(build_spec("fig2", csv, out))
    try:
        (ax,) = fig.axes
        assert len(ax.lines) == 8  # four bounds, two part sizes
        labels = [t.get_text() for t in ax.get_legend().get_texts()]
        assert "combinatorial LB (n=100)" in labels
        assert "Sidorenko LB (n=1000)" in labels
    finally:
        plt.close(fig)
    assert out.exists()


def test_fig3_styles_and_null_cells(tmp_path):
    csv = write(tmp_path, "fig3.csv", FIG3_CSV)
    out = tmp_path / "fig3.png"
    fig = render(build_spec("fig3", csv, out))
    try:
        (ax,) = fig.axes
        assert len(ax.lines) == 6  # three series, two densities
        by_label = {ln.get_label(): ln for ln in ax.lines}
        # group line styles alternate: solid for the first density, dashed next
        assert by_label["exact (mean) (delta=0.25)"].get_linestyle() == "-"
        assert by_label["exact (mean) (delta=0.75)"].get_linestyle() == "--"
        # the empty mean_exact cell at (n=20, delta=0.25) is skipped
        assert list(by_label["exact (mean) (delta=0.25)"].get_xdata()) == [10.0]
        assert list(by_label["general LB (mean) (delta=0.25)"].get_xdata()) == [10.0, 20.0]
    finally:
        plt.close(fig)
    assert out.exists()


def test_fig4_renders(tmp_path):
    csv = write(tmp_path, "fig4.csv", FIG4_CSV)
    out = tmp_path / "fig4.png"
    fig = render(build_spec("fig4", csv, out))
    try:
        assert len(fig.axes[0].lines) == 4
    finally:
        plt.close(fig)
    assert out.exists()


def test_schema_mismatch_names_offending_column(tmp_path):
    broken = FIG1_CSV.replace("refined_lb_log10", "refined")
    csv = write(tmp_path, "fig1.csv", broken)
    out = tmp_path / "fig1.png"
    with pytest.raises(PlotError, match="refined_lb_log10"):
        render(build_spec("fig1", csv, out))
    assert not out.exists()


def test_empty_csv_writes_nothing(tmp_path):
    out = tmp_path / "fig1.png"
    header_only = FIG1_CSV.split("\n")[0] + "\n"
    with pytest.raises(PlotError, match="empty CSV"):
        render(build_spec("fig1", write(tmp_path, "a.csv", header_only), out))
    with pytest.raises(PlotError, match="empty CSV"):
        render(build_spec("fig1", write(tmp_path, "b.csv", ""), out))
    assert not out.exists()


def test_unknown_figure_id(tmp_path):
    with pytest.raises(PlotError, match="fig9"):
        build_spec("fig9", tmp_path / "x.csv", tmp_path / "x.png")


def test_cli_renders_and_reports_path(tmp_path, capsys, monkeypatch):
    csv = write(tmp_path, "fig1.csv", FIG1_CSV)
    out = tmp_path / "custom.png"
    assert main(["fig1", str(csv), "-o", str(out)]) == 0
    assert capsys.readouterr().out.strip() == str(out)
    assert out.exists()
    # default output name lands in the working directory
    monkeypatch.chdir(tmp_path)
    assert main(["fig1", str(csv)]) == 0
    assert (tmp_path / "fig1.png").exists()


def test_cli_exit_codes(tmp_path, capsys):
    assert main(["fig1", str(tmp_path / "missing.csv")]) == 3
    assert "no such file" in capsys.readouterr().err
    broken = write(tmp_path, "broken.csv", FIG1_CSV.replace("exact_log10", "exact"))
    assert main(["fig1", str(broken)]) == 2
    assert "exact_log10" in capsys.readouterr().err
    with pytest.raises(SystemExit) as exc:
        main(["fig9", "whatever.csv"])
    assert exc.value.code == 2
