"""Experiment drivers: rate fitting, landscape sweep, reports, CSV format."""

import numpy as np
import pytest

from ritzmesh.experiments import (
    PRESETS,
    fit_rate,
    parametric_error_report,
    report_rows,
    run_convergence,
    run_landscape,
    write_csv,
)
from ritzmesh.loads import reference_ritz
from ritzmesh.problems import arctan1d, power1d


class TestFitRate:
    def test_recovers_synthetic_power_law(self):
        n = np.array([8, 16, 32, 64, 128])
        for r in (0.2, 0.5, 0.98, 2.0):
            err = 3.7 * n ** (-r)
            assert abs(fit_rate(n, err) + r) < 1e-6

    def test_insensitive_to_constant(self):
        n = np.array([10, 20, 40])
        assert abs(fit_rate(n, 5.0 * n ** (-1.0)) - fit_rate(n, 0.1 * n ** (-1.0))) < 1e-12


class TestRunConvergence:
    def test_uniform_errors_decrease(self, tmp_path):
        rows, r_u, r_a = run_convergence(
            arctan1d(10.0, 0.5), [8, 16, 32], iterations=50,
            schedule=[(0, 1e-2)], seed=0, out=str(tmp_path))
        e_h = [r[1] for r in rows]
        assert e_h[0] > e_h[1] > e_h[2]
        assert (tmp_path / "convergence.csv").exists()
        header = (tmp_path / "convergence.csv").read_text().splitlines()[0]
        assert header == "N,e_h,e_theta"

    def test_adapted_beats_uniform(self, tmp_path):
        rows, _, _ = run_convergence(arctan1d(10.0, 0.5), [16], iterations=300,
                                     schedule=[(0, 1e-2)], seed=0)
        assert rows[0][2] < rows[0][1]


@pytest.fixture(scope="module")
def sweep():
    offsets = np.linspace(-0.05, 0.05, 41)
    return run_landscape(alpha=50.0, s=0.5, n_elements=10, movable_index=5,
                         offsets=offsets, quad_orders=(2,))


class TestRunLandscape:

    def test_exact_landscape_above_true_minimum(self, sweep):
        rows, _, j_true = sweep
        assert all(r[1] >= j_true - 1e-10 for r in rows)

    def test_quadrature_landscape_dives_below(self, sweep):
        rows, _, j_true = sweep
        assert min(r[2] for r in rows) < j_true

    def test_exact_landscape_symmetric(self, sweep):
        rows, _, _ = sweep
        js = np.array([r[1] for r in rows])
        np.testing.assert_allclose(js, js[::-1], rtol=1e-9)

    def test_columns(self, sweep):
        _, columns, _ = sweep
        assert columns == ("theta", "J_exact_min", "J_quad_min")

    def test_multiple_orders_add_columns(self):
        rows, columns, _ = run_landscape(offsets=np.array([0.0, 0.01]),
                                         quad_orders=(2, 8))
        assert columns == ("theta", "J_exact_min", "J_quad_min_q2", "J_quad_min_q8")
        assert len(rows[0]) == 4


class TestReports:
    def test_aggregates_over_datasets(self):
        from ritzmesh.sampling import default_axes, split_train_test
        from ritzmesh.training import train_parametric
        grid = split_train_test(default_axes("arctan1d", counts=(5, 5)), seed=0)
        run = train_parametric("arctan1d", grid, 8, epochs=1, batch=5, seed=0)
        reports = parametric_error_report(run)
        rows = report_rows(reports)
        assert [r[0] for r in rows] == ["train", "test"]
        for row in rows:
            assert all(np.isfinite(v) and v >= 0 for v in row[1:])
            assert row[1] <= row[2]  # mean <= max
            assert row[3] <= row[4]


class TestCsvFormat:
    def test_seventeen_significant_digits(self, tmp_path):
        path = tmp_path / "out.csv"
        value = 1.0 / 3.0
        write_csv(str(path), ("a", "b"), [(1, value)])
        text = path.read_text().splitlines()
        assert text[0] == "a,b"
        assert text[1] == "1," + "%.17g" % value
        assert float(text[1].split(",")[1]) == value

    def test_deterministic_bytes(self, tmp_path):
        rows = [(i, np.sin(i)) for i in range(5)]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        write_csv(str(a), ("i", "x"), rows)
        write_csv(str(b), ("i", "x"), rows)
        assert a.read_bytes() == b.read_bytes()


class TestPresets:
    def test_named_schedules_present(self):
        assert PRESETS["arctan1d-parametric"]["schedule"] == ((0, 1e-2), (20, 1e-3))
        assert PRESETS["twomaterial1d-parametric"]["schedule"] == ((0, 1e-2), (30, 1e-3))
        assert PRESETS["twomaterial1d-parametric"]["epochs"] == 150
        assert PRESETS["lshape-adapt"]["iterations"] == 100000
