from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np
import pandas as pd

from binary_slab.utils.exceptions import InvalidInputError

MODEL_TAGS = frozenset(
    {
        "benchmark-realization",
        "benchmark-ensemble",
        "atomic-mix",
        "LP",
        "ALP",
        "diffusion-AM",
        "diffusion-LP",
        "diffusion-ALP",
    }
)

FLOAT_FORMAT = "%.17g"


@dataclass
class SolveDiagnostics:
    """How an iterative solve went."""

    iterations: int = 0
    residual: float = 0.0
    residual_history: List[float] = field(default_factory=list)
    negative_flux_count: int = 0
    leakage_left: float = 0.0
    leakage_right: float = 0.0

    @property
    def leakage(self) -> float:
        return self.leakage_left + self.leakage_right


@dataclass(eq=False)
class FluxField:
    """
    Scalar flux tabulated in space, tagged with the model that produced it.

    Cell fields carry `edges` and hold cell-averaged values at the centers `x`;
    point fields (diffusion solutions) hold point values at `x`.
    """

    x: np.ndarray
    scalar_flux: np.ndarray
    model_tag: str
    edges: Optional[np.ndarray] = None
    angular_flux: Optional[np.ndarray] = None
    diagnostics: SolveDiagnostics = field(default_factory=SolveDiagnostics)
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.model_tag not in MODEL_TAGS:
            raise InvalidInputError(f"Unknown model tag: {self.model_tag}")
        if self.x.shape != self.scalar_flux.shape:
            raise InvalidInputError("Positions and flux values differ in length")

    @property
    def is_cell_field(self) -> bool:
        return self.edges is not None

    def value_at_origin(self) -> float:
        """
        Scalar flux at x = 0: the mean of the two cells sharing the edge at 0
        for cell fields, linear interpolation for point fields.
        """
        if self.edges is not None:
            at_origin = np.flatnonzero(self.edges == 0.0)
            if at_origin.size:
                k = int(at_origin[0])
                return float(0.5 * (self.scalar_flux[k - 1] + self.scalar_flux[k]))
        return float(np.interp(0.0, self.x, self.scalar_flux))

    def minimum(self) -> float:
        return float(np.min(self.scalar_flux))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"x": self.x, "scalar_flux": self.scalar_flux})

    def to_csv(self, path: Union[str, Path]) -> Path:
        """Write `x, scalar_flux` rows preceded by a `# model_tag=...` line."""
        return write_tagged_csv(path, self.to_frame(), {"model_tag": self.model_tag})


def write_tagged_csv(
    path: Union[str, Path], frame: pd.DataFrame, tags: Dict[str, Any]
) -> Path:
    """
    Write a CSV with a leading comment line of key=value tags, `,` delimiter,
    LF line endings, UTF-8 and 17 significant digits.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    header = "# " + " ".join(f"{key}={value}" for key, value in tags.items()) + "\n"
    with path.open("w", encoding="utf-8", newline="") as handle:
        handle.write(header)
        frame.to_csv(
            handle, index=False, float_format=FLOAT_FORMAT, lineterminator="\n"
        )
    return path
