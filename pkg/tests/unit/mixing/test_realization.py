import math

import numpy as np
import pytest

from binary_slab.mixing import (
    MaterialSpec,
    MixingStats,
    Realization,
    empirical_fractions,
    realization_rng,
    sample_realization,
)
from binary_slab.utils.exceptions import InvalidInputError


SAMPLE_SIZE = 10_000


@pytest.fixture
def materials():
    return (MaterialSpec(sigma_t=1.0, sigma_s=0.5, q=0.2), MaterialSpec.void())


@pytest.fixture(scope="module")
def equal_widths_sample():
    materials = (MaterialSpec(sigma_t=1.0, sigma_s=0.5, q=0.2), MaterialSpec.void())
    stats = MixingStats(1.0, 1.0)
    return [
        sample_realization(materials, stats, 40.0, seed=2024, index=k)
        for k in range(SAMPLE_SIZE)
    ]


class TestRealization:
    def test_alternation_enforced(self):
        with pytest.raises(InvalidInputError):
            Realization(segments=((1, 0.5), (1, 0.5)), total_width=1.0)

    def test_positive_widths_enforced(self):
        with pytest.raises(InvalidInputError):
            Realization(segments=((1, 0.5), (2, 0.0)), total_width=0.5)

    def test_material_index_enforced(self):
        with pytest.raises(InvalidInputError):
            Realization(segments=((3, 1.0),), total_width=1.0)

    def test_interfaces_end_exactly_at_right_boundary(self):
        realization = Realization(
            segments=((1, 0.1), (2, 0.2), (1, 0.7)), total_width=1.0
        )
        edges = realization.interfaces(-0.5)
        assert edges[0] == -0.5
        assert edges[-1] == 0.5
        np.testing.assert_allclose(edges, [-0.5, -0.4, -0.2, 0.5])

    def test_material_fraction(self):
        realization = Realization(segments=((1, 1.5), (2, 0.5)), total_width=2.0)
        assert realization.material_fraction(1) == pytest.approx(0.75)
        assert realization.material_fraction(2) == pytest.approx(0.25)

    def test_text_form(self):
        realization = Realization(segments=((2, 0.1), (1, 1.9)), total_width=2.0)
        assert realization.to_text() == "2 0.10000000000000001\n1 1.8999999999999999\n"
        assert Realization.from_text(realization.to_text()) == realization

    def test_widths_must_fill_total_width(self):
        with pytest.raises(InvalidInputError):
            Realization(segments=((1, 0.5), (2, 0.4)), total_width=1.0)

    def test_width_sum_tolerance(self):
        Realization(segments=((1, 0.5), (2, 0.5)), total_width=1.0 + 5e-13)
        with pytest.raises(InvalidInputError):
            Realization(segments=((1, 0.5), (2, 0.5)), total_width=1.0 + 5e-12)

    def test_text_checked_against_expected_width(self):
        text = "1 0.5\n2 0.25\n"
        assert Realization.from_text(text, total_width=0.75).total_width == 0.75
        with pytest.raises(InvalidInputError):
            Realization.from_text(text, total_width=1.0)

    def test_malformed_text_rejected(self):
        with pytest.raises(InvalidInputError):
            Realization.from_text("1 0.5 extra\n")


class TestSampleRealization:
    def test_same_seed_same_realization(self, materials):
        stats = MixingStats(1.0, 1.0)
        first = sample_realization(materials, stats, 40.0, seed=7, index=3)
        second = sample_realization(materials, stats, 40.0, seed=7, index=3)
        assert first == second

    def test_streams_differ_by_index(self, materials):
        stats = MixingStats(1.0, 1.0)
        first = sample_realization(materials, stats, 40.0, seed=7, index=0)
        second = sample_realization(materials, stats, 40.0, seed=7, index=1)
        assert first != second

    def test_rng_stream_is_reproducible(self):
        a = realization_rng(12345, 9).random(4)
        b = realization_rng(12345, 9).random(4)
        np.testing.assert_array_equal(a, b)

    def test_segments_alternate_and_fill_the_slab(self, materials):
        stats = MixingStats(1.0, 0.5)
        for index in range(50):
            realization = sample_realization(
                materials, stats, 30.0, seed=1, index=index
            )
            labels = realization.materials
            assert np.all(labels[1:] != labels[:-1])
            assert math.fsum(realization.widths) == pytest.approx(30.0, rel=1e-14)
            assert np.all(realization.widths > 0)

    def test_segment_count(self, equal_widths_sample):
        # Layer boundaries form a Poisson process of rate 1 on [0, 40].
        counts = np.array([len(r.segments) for r in equal_widths_sample])
        halfwidth = 3 * counts.std(ddof=1) / math.sqrt(len(counts))
        assert abs(counts.mean() - 41.0) <= halfwidth

    def test_mean_layer_width(self, equal_widths_sample):
        # Censored estimate: material-1 length over completed material-1 layers.
        length = np.array(
            [r.material_fraction(1) * r.total_width for r in equal_widths_sample]
        )
        completed = np.array(
            [sum(1 for m, _ in r.segments[:-1] if m == 1) for r in equal_widths_sample]
        )
        ratio = length.sum() / completed.sum()
        residual = length - ratio * completed
        halfwidth = (
            3 * residual.std(ddof=1) / (completed.mean() * math.sqrt(len(length)))
        )
        assert abs(ratio - 1.0) <= halfwidth
        assert halfwidth < 0.01

    def test_empirical_fraction_matches_set_a(self, materials):
        stats = MixingStats(1.0, 0.5)
        sample = [
            sample_realization(materials, stats, 30.0, seed=99, index=k)
            for k in range(SAMPLE_SIZE)
        ]
        fractions = np.array([r.material_fraction(1) for r in sample])
        halfwidth = 3 * fractions.std(ddof=1) / math.sqrt(len(fractions))
        p1, p2 = empirical_fractions(sample)
        assert p1 == pytest.approx(fractions.mean())
        assert abs(p1 - 2 / 3) <= halfwidth
        assert p1 + p2 == pytest.approx(1.0)

    def test_needs_two_materials(self, materials):
        with pytest.raises(InvalidInputError):
            sample_realization(materials[:1], MixingStats(1.0, 1.0), 10.0, seed=1)
