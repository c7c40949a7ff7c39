import pytest

from finitesum.tracing import (
    CSV_HEADER,
    EvalCounter,
    Trace,
    TraceRecord,
    read_csv,
    write_csv,
)


class TestEvalCounter:
    def test_zero_charge_is_noop(self):
        c = EvalCounter()
        c.charge(0, 0)
        assert (c.component_calls, c.paper_axis) == (0, 0)

    def test_full_gradient_convention(self):
        c = EvalCounter()
        c.charge(500, 500)
        assert (c.component_calls, c.paper_axis) == (500, 500)

    def test_inner_iteration_convention(self):
        # an accelerated inner iteration with b=20: both gradients count as
        # raw calls, only the fresh batch counts on the paper axis
        c = EvalCounter()
        c.charge(20, 20)
        c.charge(20, 0)
        assert (c.component_calls, c.paper_axis) == (40, 20)

    def test_rejects_bad_charges(self):
        c = EvalCounter()
        with pytest.raises(ValueError):
            c.charge(-1, 0)
        with pytest.raises(ValueError):
            c.charge(1, 2)  # axis can never exceed raw calls


class TestTrace:
    def test_records_require_progress(self):
        t = Trace("m", timing=False)
        t.counter.charge(10, 10)
        assert t.record(0, 0, 1.0)
        assert not t.record(0, 1, 0.9)  # no new work since the last row
        t.counter.charge(5, 5)
        assert t.record(0, 1, 0.9)

    def test_cadence_filter(self):
        t = Trace("m", record_every=100, timing=False)
        t.counter.charge(10, 10)
        assert t.record(0, 0, 1.0)
        t.counter.charge(50, 50)
        assert not t.due()
        assert not t.record(0, 1, 0.9)
        t.counter.charge(50, 50)
        assert t.due()
        assert t.record(0, 2, 0.8)

    def test_force_overrides_cadence_not_monotonicity(self):
        t = Trace("m", record_every=100, timing=False)
        t.counter.charge(1, 1)
        assert t.record(0, 0, 1.0)
        t.counter.charge(1, 1)
        assert t.record(0, 1, 0.9, force=True)
        assert not t.record(0, 2, 0.8, force=True)

    def test_non_finite_objective_aborts(self):
        t = Trace("m", timing=False)
        t.counter.charge(1, 1)
        with pytest.raises(FloatingPointError):
            t.record(0, 0, float("nan"))
        with pytest.raises(FloatingPointError):
            t.record(0, 0, float("inf"))


class TestCsv:
    def _trace(self, method, rows):
        t = Trace(method, timing=False)
        for i, obj in enumerate(rows):
            t.counter.charge(7, 5)
            t.record(0, i, obj, grad_norm=None if i % 2 else 0.5 * i)
        return t

    def test_empty_trace_writes_header_only(self, tmp_path):
        path = tmp_path / "t.csv"
        write_csv(path, Trace("m", timing=False))
        assert path.read_text() == ",".join(CSV_HEADER) + "\n"
        assert read_csv(path) == []

    def test_round_trip(self, tmp_path):
        t = self._trace("m", [1.0, 0.5, 0.25, 1e-17])
        path = tmp_path / "t.csv"
        write_csv(path, t)
        assert read_csv(path) == t.records

    def test_merged_methods_distinguishable(self, tmp_path):
        a = self._trace("alpha", [3.0, 2.0])
        b = self._trace("beta", [4.0, 1.0])
        path = tmp_path / "t.csv"
        write_csv(path, [a, b])
        back = read_csv(path)
        assert sorted({r.method for r in back}) == ["alpha", "beta"]
        assert [r for r in back if r.method == "alpha"] == a.records

    def test_rejects_foreign_header(self, tmp_path):
        path = tmp_path / "t.csv"
        path.write_text("a,b,c\n1,2,3\n")
        with pytest.raises(ValueError):
            read_csv(path)

    def test_full_precision_round_trip(self, tmp_path):
        t = Trace("m", timing=False)
        t.counter.charge(1, 1)
        value = 0.1 + 0.2  # 0.30000000000000004
        t.record(0, 0, value)
        path = tmp_path / "t.csv"
        write_csv(path, t)
        assert read_csv(path)[0].objective == value
