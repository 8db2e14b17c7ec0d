"""Tests for CSV validation and figure rendering."""

from pathlib import Path

import pytest

from plotviz import CsvError, FIGURES, load_csv, render
from plotviz.cli import REFERENCE_DATA, main
from plotviz.figures import BARRIER_COLUMNS, FREE_COLUMNS


class TestLoadCsv:
    def test_loads_reference_file(self):
        table = load_csv(REFERENCE_DATA / "free_arrival_caseI.csv", FREE_COLUMNS)
        assert table.columns == FREE_COLUMNS
        assert len(table.col("tau")) > 100
        assert table.meta  # conventions line preserved

    def test_missing_file(self, tmp_path):
        with pytest.raises(CsvError, match="no such file"):
            load_csv(tmp_path / "nope.csv")

    def test_rejects_foreign_csv(self, tmp_path):
        f = tmp_path / "other.csv"
        f.write_text("a,b\n1,2\n")
        with pytest.raises(CsvError, match="provenance"):
            load_csv(f)

    def test_rejects_column_mismatch(self):
        with pytest.raises(CsvError, match="column mismatch"):
            load_csv(REFERENCE_DATA / "free_arrival_caseI.csv", BARRIER_COLUMNS)

    def test_rejects_empty_table(self, tmp_path):
        f = tmp_path / "empty.csv"
        f.write_text("# pairflight 0.1.0\n# meta\n# columns: a,b\na,b\n")
        with pytest.raises(CsvError, match="no data rows"):
            load_csv(f)

    def test_text_columns_separated(self):
        table = load_csv(REFERENCE_DATA / "gamma_scan_fit.csv")
        assert "statistics" in table.text and "channel" in table.text
        assert len(table.col("intercept_c")) == 6


class TestRender:
    @pytest.mark.parametrize("figure_id", sorted(FIGURES))
    def test_renders_nonempty_png(self, figure_id, tmp_path):
        target = render(figure_id, REFERENCE_DATA, tmp_path)
        assert target == tmp_path / f"{figure_id}.png"
        assert target.stat().st_size > 10_000
        assert target.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"

    def test_unknown_figure(self, tmp_path):
        with pytest.raises(ValueError, match="unknown figure"):
            render("fig9", REFERENCE_DATA, tmp_path)

    def test_no_partial_output_on_bad_input(self, tmp_path):
        in_dir = tmp_path / "in"
        in_dir.mkdir()
        # only one of fig1's two inputs present
        (in_dir / "free_arrival_caseI.csv").write_bytes(
            (Path(REFERENCE_DATA) / "free_arrival_caseI.csv").read_bytes()
        )
        out = tmp_path / "out"
        with pytest.raises(CsvError):
            render("fig1", in_dir, out)
        assert not (out / "fig1.png").exists()


class TestCli:
    def test_single_figure(self, tmp_path, capsys):
        assert main(["fig4", "--out", str(tmp_path)]) == 0
        assert "fig4.png" in capsys.readouterr().out
        assert (tmp_path / "fig4.png").exists()

    def test_all_figures(self, tmp_path):
        assert main(["all", "--out", str(tmp_path)]) == 0
        for figure_id in FIGURES:
            assert (tmp_path / f"{figure_id}.png").exists()

    def test_bad_input_dir_fails_cleanly(self, tmp_path, capsys):
        rc = main(["fig1", "--in", str(tmp_path), "--out", str(tmp_path)])
        assert rc == 1
        assert "plotviz:" in capsys.readouterr().err
        assert not (tmp_path / "fig1.png").exists()
