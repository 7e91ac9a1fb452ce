"""Sweep harness, comparison table, QPU estimator, and result files."""
import math

import numpy as np
import pytest

from qkmeans.bench import (
    GateTimeModel,
    LAUNCH_POWER_PRESETS,
    SweepSpec,
    aggregate_compare,
    compare_table,
    estimate_qpu_time,
    load_sweep_spec,
    noise_grid,
    read_sweep_csv,
    replay_row,
    run_sweep,
    summarize,
    write_summary_csv,
    write_sweep_csv,
)
from qkmeans.signals import ChannelParams


def tiny_spec(**overrides) -> SweepSpec:
    base = dict(
        axis="shots",
        values=(8, 32),
        order=16,
        per_symbol=5,
        channel=ChannelParams(sigma_phi=0.05, sigma_n=0.05),
        repetitions=2,
        seed=123,
    )
    base.update(overrides)
    return SweepSpec(**base)


class TestEstimateQpuTime:
    def test_reference_workload(self):
        min_s, avg_s, max_s = estimate_qpu_time(16, 5000, 50)
        assert round(min_s, 3) == 26.84
        assert round(avg_s, 3) == 38.984
        assert round(max_s, 3) == 66.88

    def test_average_per_shot_latency(self):
        model = GateTimeModel()
        assert model.circuit_depth * model.avg_gate_ns == 9746.0

    def test_unit_workload(self):
        model = GateTimeModel(min_gate_ns=1, avg_gate_ns=1, max_gate_ns=1, circuit_depth=1)
        assert estimate_qpu_time(1, 1, 1, model) == (1e-9, 1e-9, 1e-9)

    @pytest.mark.parametrize("args", [(0, 1, 1), (1, 0, 1), (1, 1, 0), (-2, 5, 5)])
    def test_non_positive_rejected(self, args):
        with pytest.raises(ValueError):
            estimate_qpu_time(*args)

    def test_gate_time_ordering_enforced(self):
        with pytest.raises(ValueError, match="gate times"):
            GateTimeModel(min_gate_ns=500, avg_gate_ns=400, max_gate_ns=760)


class TestSweep:
    def test_row_schema_and_counts(self):
        spec = tiny_spec()
        rows = run_sweep(spec)
        assert len(rows) == 2 * 2  # axis values x repetitions, one metric
        for row in rows:
            assert row.metric_variant == "quantum_sampled"
            assert 0.0 <= row.accuracy <= 1.0
            assert 1 <= row.iterations <= spec.max_iterations
            assert row.wall_ms >= 0.0

    def test_zero_noise_cell_is_perfect(self):
        spec = SweepSpec(
            axis="noise",
            values=((0.0, 0.0),),
            order=16,
            per_symbol=2,
            shots=None,  # analytic metric
            repetitions=1,
            seed=1,
        )
        rows = run_sweep(spec)
        assert len(rows) == 1
        assert rows[0].metric_variant == "quantum_analytic"
        assert rows[0].accuracy == 1.0

    def test_both_metrics_share_dataset_seed(self):
        spec = tiny_spec(metrics=("quantum", "classical"))
        rows = run_sweep(spec)
        quantum = [r for r in rows if r.metric_variant == "quantum_sampled"]
        classical = [r for r in rows if r.metric_variant == "euclidean"]
        assert len(quantum) == len(classical) == 4
        for q, c in zip(quantum, classical):
            assert q.seed == c.seed
            assert q.axis_value == c.axis_value

    def test_worker_count_does_not_change_rows(self):
        spec = tiny_spec()
        baseline = run_sweep(spec, workers=1)
        for workers in (2, 4):
            assert _rows_equal(baseline, run_sweep(spec, workers=workers))

    def test_replay_row_is_bit_identical(self):
        spec = tiny_spec()
        rows = run_sweep(spec)
        for row in rows:
            again = replay_row(spec, row)
            assert again.accuracy == row.accuracy
            assert again.iterations == row.iterations
            assert again.seed == row.seed

    def test_phase_axis(self):
        spec = tiny_spec(
            axis="phase",
            values=(-math.pi / 8, 0.0, math.pi / 8),
            shots=64,
            repetitions=1,
        )
        rows = run_sweep(spec)
        assert len(rows) == 3

    def test_noise_grid_builder(self):
        spec = noise_grid([0.1, 0.2], [0.05], per_symbol=2, repetitions=1)
        assert spec.axis == "noise"
        assert spec.values == ((0.1, 0.05), (0.2, 0.05))

    def test_summarize_means(self):
        spec = tiny_spec()
        rows = run_sweep(spec)
        summary = summarize(rows)
        cells = {(s["axis_value"], s["metric_variant"]): s for s in summary}
        for (axis_value, variant), cell in cells.items():
            member_accs = [
                r.accuracy for r in rows
                if r.axis_value == axis_value and r.metric_variant == variant
            ]
            assert cell["repetitions"] == len(member_accs)
            assert cell["mean_accuracy"] == pytest.approx(np.mean(member_accs))
            assert cell["std_accuracy"] == pytest.approx(np.std(member_accs))

    def test_csv_roundtrip(self, tmp_path):
        spec = tiny_spec()
        rows = run_sweep(spec)
        path = tmp_path / "rows.csv"
        write_sweep_csv(rows, path)
        back = read_sweep_csv(path)
        assert len(back) == len(rows)
        for a, b in zip(rows, back):
            assert a.axis_value == b.axis_value
            assert a.seed == b.seed
            assert a.accuracy == b.accuracy  # repr-roundtrip exact
        write_summary_csv(summarize(rows), tmp_path / "summary.csv")
        assert (tmp_path / "summary.csv").read_text().startswith("axis_value,")

    def test_invalid_axis_rejected(self):
        with pytest.raises(ValueError, match="axis"):
            SweepSpec(axis="frequency", values=(1,))

    def test_empty_values_rejected(self):
        with pytest.raises(ValueError, match="non-empty"):
            SweepSpec(axis="shots", values=())


def _rows_equal(a, b):
    return all(
        ra.axis_value == rb.axis_value
        and ra.repetition == rb.repetition
        and ra.seed == rb.seed
        and ra.metric_variant == rb.metric_variant
        and ra.accuracy == rb.accuracy
        and ra.iterations == rb.iterations
        for ra, rb in zip(a, b)
    ) and len(a) == len(b)


class TestLoadSweepSpec:
    def test_yaml_parsing(self, tmp_path):
        doc = """
axis: shots
values: [8, 16]
order: 16
per_symbol: 10
sigma_phi: 0.1
sigma_n: 0.1
repetitions: 3
metrics: [quantum, classical]
scoring: hungarian
seed: 7
"""
        path = tmp_path / "spec.yaml"
        path.write_text(doc)
        spec = load_sweep_spec(path)
        assert spec.axis == "shots"
        assert spec.values == (8, 16)
        assert spec.repetitions == 3
        assert spec.seed == 7
        assert spec.metrics == ("quantum", "classical")

    def test_noise_grid_from_yaml(self, tmp_path):
        doc = """
axis: noise
sigma_phi_values: [0.1, 0.2]
sigma_n_values: [0.1]
per_symbol: 5
"""
        path = tmp_path / "spec.yaml"
        path.write_text(doc)
        spec = load_sweep_spec(path)
        assert spec.values == ((0.1, 0.1), (0.2, 0.1))

    def test_seed_override(self, tmp_path):
        path = tmp_path / "spec.yaml"
        path.write_text("axis: shots\nvalues: [8]\nseed: 3\n")
        assert load_sweep_spec(path).seed == 3
        assert load_sweep_spec(path, seed=11).seed == 11

    def test_missing_values_rejected(self, tmp_path):
        path = tmp_path / "spec.yaml"
        path.write_text("axis: shots\n")
        with pytest.raises(ValueError, match="values"):
            load_sweep_spec(path)


class TestCompareTable:
    def test_noiseless_both_perfect(self):
        # shots must resolve the smallest centroid gap, else zero-count ties
        # fall to the lowest index; 2e4 shots >> 1/gap for this geometry
        rows = compare_table(
            sizes=[64, 128],
            channel=ChannelParams(),
            shots=20_000,
            max_iterations=3,
            order=64,
            repetitions=1,
            seed=5,
        )
        assert len(rows) == 2
        for row in rows:
            assert row.accuracy_classical == 1.0
            assert row.accuracy_quantum == 1.0

    def test_size_zero_rejected(self):
        with pytest.raises(ValueError, match="size"):
            compare_table([0], ChannelParams(), shots=10)

    def test_non_multiple_size_rejected(self):
        with pytest.raises(ValueError, match="multiple"):
            compare_table([100], ChannelParams(), shots=10, order=64)

    def test_aggregate_preserves_size_order(self):
        rows = compare_table(
            sizes=[128, 64],
            channel=ChannelParams(sigma_n=0.02),
            shots=16,
            max_iterations=2,
            order=16,
            spacing=2.0,
            repetitions=2,
            seed=6,
        )
        records = aggregate_compare(rows)
        assert [r["points"] for r in records] == [128, 64]
        assert records[0]["repetitions"] == 2

    def test_presets_available(self):
        assert set(LAUNCH_POWER_PRESETS) == {2.7, 6.6, 8.6, 10.7}
        for sphi, sn in LAUNCH_POWER_PRESETS.values():
            assert sphi > 0 and sn > 0
