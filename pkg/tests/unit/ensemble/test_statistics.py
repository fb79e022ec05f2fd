import numpy as np
import pytest

from binary_slab.ensemble import EnsembleStats, RunningStats, reporting_grid


class TestRunningStats:
    def test_matches_two_pass(self):
        rng = np.random.default_rng(7)
        samples = rng.normal(3.0, 0.5, size=(500, 4))
        stats = RunningStats(4)
        for row in samples:
            stats.update(row)

        assert stats.n == 500
        np.testing.assert_allclose(stats.mean, samples.mean(axis=0), rtol=1e-12)
        np.testing.assert_allclose(
            stats.variance, samples.var(axis=0, ddof=1), rtol=1e-10
        )
        np.testing.assert_allclose(
            stats.std_error, samples.std(axis=0, ddof=1) / np.sqrt(500), rtol=1e-10
        )

    def test_variance_zero_until_two_samples(self):
        stats = RunningStats(2)
        assert np.all(stats.std_error == 0.0)
        stats.update([1.0, 2.0])
        assert np.all(stats.variance == 0.0)

    def test_constant_samples(self):
        stats = RunningStats(3)
        for _ in range(10):
            stats.update([0.1, 0.2, 0.3])
        np.testing.assert_allclose(stats.mean, [0.1, 0.2, 0.3])
        np.testing.assert_allclose(stats.variance, 0.0, atol=1e-30)

    def test_wrong_length(self):
        with pytest.raises(ValueError):
            RunningStats(3).update([1.0, 2.0])


class TestEnsembleStats:
    @pytest.fixture
    def stats(self):
        stats = EnsembleStats.empty(reporting_grid(1.0, 4))
        stats.add(np.array([1.0, 2.0, 2.0, 1.0]), 2.0)
        stats.add(np.array([3.0, 4.0, 4.0, 3.0]), 4.0)
        return stats

    def test_accumulates(self, stats):
        assert stats.n_realizations == 2
        np.testing.assert_allclose(stats.mean, [2.0, 3.0, 3.0, 2.0])
        assert stats.origin_mean == 3.0
        assert stats.origin_std_error == pytest.approx(1.0)
        np.testing.assert_allclose(stats.centers, [-0.75, -0.25, 0.25, 0.75])

    def test_flux_field(self, stats):
        field = stats.to_flux_field()
        assert field.model_tag == "benchmark-ensemble"
        assert field.value_at_origin() == pytest.approx(3.0)
        assert field.metadata["n_realizations"] == 2

    def test_csv(self, tmp_path, stats):
        path = stats.to_csv(tmp_path / "benchmark.csv")
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "# model_tag=benchmark-ensemble"
        assert lines[1] == "x,mean_flux,std_error,n"
        assert len(lines) == 6
        assert lines[2].endswith(",2")

    def test_summary_line(self, stats):
        line = stats.summary_line()
        assert "n_realizations=2" in line
        assert "phi0=3" in line
