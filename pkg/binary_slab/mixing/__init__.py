from binary_slab.mixing.materials import (
    AveragedSpec,
    MaterialSpec,
    MixingStats,
    default_dx_max,
    eta_factor,
    volume_average,
    volume_fractions,
)
from binary_slab.mixing.realization import (
    Realization,
    empirical_fractions,
    realization_rng,
    sample_realization,
)

__all__ = [
    "AveragedSpec",
    "MaterialSpec",
    "MixingStats",
    "Realization",
    "default_dx_max",
    "empirical_fractions",
    "eta_factor",
    "realization_rng",
    "sample_realization",
    "volume_average",
    "volume_fractions",
]
