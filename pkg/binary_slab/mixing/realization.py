from dataclasses import dataclass
import math
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from numpy.random import PCG64, Generator, SeedSequence

from binary_slab.mixing.materials import MaterialSpec, MixingStats
from binary_slab.utils.exceptions import InvalidInputError

Segment = Tuple[int, float]

# Relative tolerance on sum(widths) == total_width.
WIDTH_SUM_RTOL = 1e-12


@dataclass(frozen=True)
class Realization:
    """
    One sampled configuration of the slab: alternating layers of materials 1
    and 2 covering a total width, listed from the left boundary.
    """

    segments: Tuple[Segment, ...]
    total_width: float

    def __post_init__(self) -> None:
        if not self.segments:
            raise InvalidInputError("A realization needs at least one segment")
        for position, (material, width) in enumerate(self.segments):
            if material not in (1, 2):
                raise InvalidInputError(f"Segment {position} has material {material}")
            if not width > 0:
                raise InvalidInputError(f"Segment {position} has width {width}")
            if position and material == self.segments[position - 1][0]:
                raise InvalidInputError(
                    f"Segments {position - 1} and {position} share material {material}"
                )
        covered = math.fsum(width for _, width in self.segments)
        if abs(covered - self.total_width) > WIDTH_SUM_RTOL * abs(self.total_width):
            raise InvalidInputError(
                f"Segment widths sum to {covered!r}, not the total width "
                f"{self.total_width!r}"
            )

    @property
    def widths(self) -> np.ndarray:
        return np.array([width for _, width in self.segments])

    @property
    def materials(self) -> np.ndarray:
        return np.array([material for material, _ in self.segments], dtype=np.int64)

    def interfaces(self, x_left: float) -> np.ndarray:
        """Layer boundaries, from x_left to x_left + total_width inclusive."""
        edges = x_left + np.concatenate(([0.0], np.cumsum(self.widths)))
        edges[-1] = x_left + self.total_width
        return edges

    def material_fraction(self, material: int) -> float:
        """Fraction of the slab occupied by one material."""
        occupied = math.fsum(w for m, w in self.segments if m == material)
        return occupied / self.total_width

    def to_text(self) -> str:
        """One `material_index width` line per segment, 17 significant digits."""
        return "".join(f"{m} {w:.17g}\n" for m, w in self.segments)

    @classmethod
    def from_text(
        cls, text: str, total_width: Optional[float] = None
    ) -> "Realization":
        """
        Parse `to_text` output. When total_width is given the layers must add
        up to it; otherwise their sum is taken as the width.
        """
        segments: List[Segment] = []
        for number, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                material, width = line.split()
                segments.append((int(material), float(width)))
            except ValueError:
                raise InvalidInputError(f"Malformed segment line {number}: {line!r}")
        if total_width is None:
            total_width = math.fsum(w for _, w in segments)
        return cls(
            segments=tuple(segments),
            total_width=total_width,
        )


def realization_rng(base_seed: int, index: int) -> Generator:
    """
    Random stream for realization `index` of an ensemble.

    The stream is PCG64 seeded from SeedSequence(base_seed, spawn_key=(index,)),
    so every realization can be regenerated on its own, in any order, on any
    worker.
    """
    return Generator(PCG64(SeedSequence(base_seed, spawn_key=(index,))))


def sample_realization(
    materials: Sequence[MaterialSpec],
    stats: MixingStats,
    total_width: float,
    seed: int,
    index: int = 0,
) -> Realization:
    """
    Sample alternating layers with exponentially distributed widths.

    The first material is drawn with probability p_i; each layer width is drawn
    with mean lambda of its material; the last layer is clipped at the right
    boundary.

    Args:
        materials: The two materials; only their count is checked here.
        stats: Mean layer widths.
        total_width: Width 2X of the slab.
        seed: Base seed of the ensemble.
        index: Realization index within the ensemble.
    """
    if len(materials) != 2:
        raise InvalidInputError(f"Expected two materials, got {len(materials)}")
    if not total_width > 0:
        raise InvalidInputError(f"Slab width must be positive, got {total_width}")

    rng = realization_rng(seed, index)
    material = 1 if rng.random() < stats.p1 else 2
    return _alternate(rng, stats, material, total_width)


def _alternate(
    rng: Generator, stats: MixingStats, material: int, total_width: float
) -> Realization:
    widths: List[float] = []
    labels: List[int] = []
    covered = 0.0
    while True:
        width = rng.exponential(stats.mean_width(material))
        if width <= 0.0:
            continue
        if covered + width >= total_width:
            last = total_width - math.fsum(widths)
            if last > 0:
                widths.append(last)
                labels.append(material)
            break
        widths.append(width)
        labels.append(material)
        covered += width
        material = 3 - material
    return Realization(segments=tuple(zip(labels, widths)), total_width=total_width)


def empirical_fractions(realizations: Iterable[Realization]) -> Tuple[float, float]:
    """Fraction of slab volume occupied by each material over a set of samples."""
    occupied = np.zeros(2)
    total = 0.0
    for realization in realizations:
        occupied[0] += realization.material_fraction(1) * realization.total_width
        occupied[1] += realization.material_fraction(2) * realization.total_width
        total += realization.total_width
    return occupied[0] / total, occupied[1] / total
