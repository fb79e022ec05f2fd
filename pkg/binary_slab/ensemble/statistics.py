from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

import numpy as np
import pandas as pd

from binary_slab.transport.flux import FluxField, write_tagged_csv


class RunningStats:
    """
    One-pass mean and variance of a fixed-length vector (Welford's update),
    so an ensemble of any size never has to be held in memory.
    """

    def __init__(self, size: int):
        self.n = 0
        self.mean = np.zeros(size)
        self._m2 = np.zeros(size)

    def update(self, values) -> None:
        values = np.asarray(values, dtype=float)
        if values.shape != self.mean.shape:
            raise ValueError(
                f"Expected {self.mean.shape[0]} values, got shape {values.shape}"
            )
        self.n += 1
        delta = values - self.mean
        self.mean = self.mean + delta / self.n
        self._m2 = self._m2 + delta * (values - self.mean)

    @property
    def variance(self) -> np.ndarray:
        """Unbiased sample variance; zero until two samples are in."""
        if self.n < 2:
            return np.zeros_like(self.mean)
        return np.maximum(self._m2, 0.0) / (self.n - 1)

    @property
    def std_error(self) -> np.ndarray:
        if self.n == 0:
            return np.zeros_like(self.mean)
        return np.sqrt(self.variance / self.n)


@dataclass(eq=False)
class EnsembleStats:
    """
    Ensemble-averaged scalar flux on the reporting grid plus a dedicated
    accumulator for the value at x = 0.
    """

    edges: np.ndarray
    grid: RunningStats
    origin: RunningStats = field(default_factory=lambda: RunningStats(1))
    converged: bool = False
    ci_relative_halfwidth: float = float("inf")
    z: float = 1.959963984540054
    wall_time: float = 0.0
    model_tag: str = "benchmark-ensemble"

    @classmethod
    def empty(cls, edges: np.ndarray, z: float = 1.959963984540054) -> "EnsembleStats":
        return cls(edges=edges, grid=RunningStats(edges.shape[0] - 1), z=z)

    @property
    def n_realizations(self) -> int:
        return self.grid.n

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.edges[:-1] + self.edges[1:])

    @property
    def mean(self) -> np.ndarray:
        return self.grid.mean

    @property
    def variance(self) -> np.ndarray:
        return self.grid.variance

    @property
    def std_error(self) -> np.ndarray:
        return self.grid.std_error

    @property
    def origin_mean(self) -> float:
        return float(self.origin.mean[0])

    @property
    def origin_std_error(self) -> float:
        return float(self.origin.std_error[0])

    def add(self, grid_values: np.ndarray, origin_value: float) -> None:
        self.grid.update(grid_values)
        self.origin.update([origin_value])

    def to_flux_field(self) -> FluxField:
        return FluxField(
            x=self.centers,
            scalar_flux=self.mean.copy(),
            model_tag=self.model_tag,
            edges=self.edges,
            metadata={
                "n_realizations": self.n_realizations,
                "converged": self.converged,
                "ci_relative_halfwidth": self.ci_relative_halfwidth,
            },
        )

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "x": self.centers,
                "mean_flux": self.mean,
                "std_error": self.std_error,
                "n": np.full(self.centers.shape[0], self.n_realizations),
            }
        )

    def to_csv(self, path: Union[str, Path]) -> Path:
        """Write `x, mean_flux, std_error, n` rows."""
        return write_tagged_csv(path, self.to_frame(), {"model_tag": self.model_tag})

    def summary_line(self) -> str:
        return (
            f"n_realizations={self.n_realizations} "
            f"phi0={self.origin_mean:.6g} "
            f"ci_relative_halfwidth={self.ci_relative_halfwidth:.4g} "
            f"converged={self.converged} "
            f"wall_time={self.wall_time:.2f}s"
        )
