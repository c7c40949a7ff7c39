import warnings

import pytest

from tracefig.render import (
    GAP_FLOOR,
    PlotSpec,
    TRACE_HEADER,
    TraceFormatError,
    build_series,
    read_series,
    render_convergence,
)


def write_trace(path, rows):
    """rows: (method, stage, iter, calls, axis, objective) tuples."""
    lines = [",".join(TRACE_HEADER)]
    for method, stage, it, calls, axis, obj in rows:
        lines.append(f"{method},{stage},{it},{calls},{axis},{obj!r},,0.0")
    path.write_text("\n".join(lines) + "\n")


@pytest.fixture
def three_method_csv(tmp_path):
    path = tmp_path / "merged.csv"
    rows = []
    for m, slope in (("amsvrg-r1", 0.5), ("svrg", 0.7), ("saga", 0.8)):
        for t in range(6):
            rows.append((m, 0, t, (t + 1) * 100, (t + 1) * 100, 1.0 * slope**t))
    write_trace(path, rows)
    return path


class TestReadSeries:
    def test_groups_by_method(self, three_method_csv):
        series = read_series([str(three_method_csv)], "paper_axis")
        assert sorted(series) == ["amsvrg-r1", "saga", "svrg"]
        assert len(series["svrg"]) == 6

    def test_rejects_empty_csv(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text(",".join(TRACE_HEADER) + "\n")
        with pytest.raises(TraceFormatError, match="no data rows"):
            read_series([str(path)], "paper_axis")

    def test_rejects_truly_empty_file(self, tmp_path):
        path = tmp_path / "none.csv"
        path.write_text("")
        with pytest.raises(TraceFormatError, match="empty file"):
            read_series([str(path)], "paper_axis")

    def test_rejects_foreign_header(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b\n1,2\n")
        with pytest.raises(TraceFormatError, match="header"):
            read_series([str(path)], "paper_axis")

    def test_rejects_out_of_order_rows(self, tmp_path):
        path = tmp_path / "ooo.csv"
        write_trace(path, [("m", 0, 0, 100, 100, 1.0), ("m", 0, 1, 90, 90, 0.9)])
        with pytest.raises(TraceFormatError, match="strictly increasing"):
            read_series([str(path)], "paper_axis")

    def test_rejects_unknown_x_column(self, three_method_csv):
        with pytest.raises(TraceFormatError, match="x column"):
            read_series([str(three_method_csv)], "wall_seconds")

    def test_merges_multiple_files(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        write_trace(a, [("one", 0, 0, 10, 10, 1.0)])
        write_trace(b, [("two", 0, 0, 10, 10, 2.0)])
        series = read_series([str(a), str(b)], "paper_axis")
        assert sorted(series) == ["one", "two"]

    def test_rejects_method_split_across_files(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        write_trace(a, [("m", 0, 0, 10, 10, 1.0)])
        write_trace(b, [("m", 0, 1, 20, 20, 0.5)])
        with pytest.raises(TraceFormatError, match="ambiguous"):
            read_series([str(a), str(b)], "paper_axis")


class TestBuildSeries:
    def test_gap_against_given_baseline(self, three_method_csv, tmp_path):
        spec = PlotSpec(inputs=[str(three_method_csv)],
                        output=str(tmp_path / "f.png"), f_star=0.0)
        series = build_series(spec)
        best = [s for s in series if s.method == "amsvrg-r1"][0]
        assert best.gap[0] == 1.0
        assert best.gap[-1] == pytest.approx(0.5**5)

    def test_auto_baseline_warns_and_clips(self, three_method_csv, tmp_path):
        spec = PlotSpec(inputs=[str(three_method_csv)],
                        output=str(tmp_path / "f.png"), f_star=None)
        with pytest.warns(UserWarning, match="baseline"):
            series = build_series(spec)
        lowest = min(g for s in series for g in s.gap)
        assert lowest >= GAP_FLOOR

    def test_clipping_floor(self, tmp_path):
        path = tmp_path / "t.csv"
        write_trace(path, [("m", 0, 0, 10, 10, 0.3), ("m", 0, 1, 20, 20, 0.1)])
        spec = PlotSpec(inputs=[str(path)], output=str(tmp_path / "f.png"),
                        f_star=0.1)
        series = build_series(spec)
        assert series[0].gap == [pytest.approx(0.2), GAP_FLOOR]

    def test_deterministic_for_fixed_input(self, three_method_csv, tmp_path):
        spec = PlotSpec(inputs=[str(three_method_csv)],
                        output=str(tmp_path / "f.png"), f_star=0.0)
        a = build_series(spec)
        b = build_series(spec)
        assert [(s.method, s.x, s.gap) for s in a] == [
            (s.method, s.x, s.gap) for s in b]


class TestRenderConvergence:
    def test_three_labeled_log_series(self, three_method_csv, tmp_path):
        out = tmp_path / "fig.png"
        spec = PlotSpec(inputs=[str(three_method_csv)], output=str(out),
                        f_star=0.0, title="comparison")
        fig = render_convergence(spec)
        ax = fig.axes[0]
        assert ax.get_yscale() == "log"
        labels = [line.get_label() for line in ax.get_lines()]
        assert sorted(labels) == ["amsvrg-r1", "saga", "svrg"]
        legend_texts = [t.get_text() for t in ax.get_legend().get_texts()]
        assert sorted(legend_texts) == ["amsvrg-r1", "saga", "svrg"]
        assert out.exists() and out.stat().st_size > 0

    def test_single_method(self, tmp_path):
        path = tmp_path / "one.csv"
        write_trace(path, [("solo", 0, 0, 5, 5, 1.0), ("solo", 0, 1, 10, 10, 0.5)])
        out = tmp_path / "one.png"
        fig = render_convergence(PlotSpec(inputs=[str(path)], output=str(out),
                                          f_star=0.0))
        assert len(fig.axes[0].get_lines()) == 1
        assert out.exists()

    def test_empty_csv_fails_before_writing(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text(",".join(TRACE_HEADER) + "\n")
        out = tmp_path / "nope.png"
        with pytest.raises(TraceFormatError):
            render_convergence(PlotSpec(inputs=[str(path)], output=str(out),
                                        f_star=0.0))
        assert not out.exists()
