from typing import Protocol

import numpy as np
from scipy.stats import norm

from binary_slab.ensemble.statistics import EnsembleStats
from binary_slab.utils.exceptions import InvalidInputError


class StoppingRule(Protocol):
    """Decides when an ensemble has enough realizations."""

    n_max: int

    def relative_halfwidth(self, stats: EnsembleStats) -> float:
        """The confidence half-width relative to the mean being controlled."""
        ...

    def should_stop(self, stats: EnsembleStats) -> bool:
        """True once the ensemble meets the rule."""
        ...


class CLTStoppingRule:
    """
    Central-limit stopping: stop when z s / (sqrt(n) mean) <= target at x = 0,
    or at every grid point with a positive mean when `everywhere` is set,
    after at least n_min realizations.
    """

    def __init__(
        self,
        target: float = 0.01,
        confidence: float = 0.95,
        n_min: int = 100,
        n_max: int = 200_000,
        everywhere: bool = False,
    ):
        if not target > 0:
            raise InvalidInputError("Target half-width must be positive")
        if not 0 < confidence < 1:
            raise InvalidInputError("Confidence must lie in (0, 1)")
        if n_min < 2 or n_max < n_min:
            raise InvalidInputError(f"Need 2 <= n_min <= n_max, got {n_min}, {n_max}")

        self.target = target
        self.confidence = confidence
        self.z = float(norm.ppf(0.5 + confidence / 2.0))
        self.n_min = n_min
        self.n_max = n_max
        self.everywhere = everywhere

    def relative_halfwidth(self, stats: EnsembleStats) -> float:
        if stats.n_realizations < 2:
            return float("inf")
        width = _relative(self.z, stats.origin_mean, stats.origin_std_error)
        if self.everywhere:
            mean = stats.mean
            positive = mean > 0
            if np.any(positive):
                grid_width = float(
                    np.max(self.z * stats.std_error[positive] / mean[positive])
                )
                width = max(width, grid_width)
        return width

    def should_stop(self, stats: EnsembleStats) -> bool:
        if stats.n_realizations < self.n_min:
            return False
        return self.relative_halfwidth(stats) <= self.target


def _relative(z: float, mean: float, std_error: float) -> float:
    if not mean > 0:
        return float("inf")
    return z * std_error / mean
