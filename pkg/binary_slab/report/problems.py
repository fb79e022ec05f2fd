from dataclasses import dataclass, field, replace
from typing import Any, ClassVar, Dict, Mapping, Optional, Tuple

from binary_slab.ensemble.coordinator import EnsembleConfig
from binary_slab.ensemble.stopping import CLTStoppingRule
from binary_slab.mixing.materials import (
    AveragedSpec,
    MaterialSpec,
    MixingStats,
    default_dx_max,
    eta_factor,
    volume_average,
)
from binary_slab.utils.exceptions import InvalidInputError, UnsupportedTypeError
from binary_slab.utils.logger import logger


@dataclass(frozen=True)
class Numerics:
    """Numerical knobs shared by every model run on a problem."""

    quad_order: int = 16
    dx_max: Optional[float] = None
    tol: float = 1e-8
    max_iters: int = 100_000
    base_seed: int = 12345
    grid_cells: int = 200
    ci: float = 0.01
    confidence: float = 0.95
    min_n: int = 100
    max_n: int = 200_000
    ci_everywhere: bool = False

    # Settings keys (CLI flag / JSON names) for each field.
    SETTINGS_KEYS: ClassVar[Dict[str, str]] = {
        "quad": "quad_order",
        "dx_max": "dx_max",
        "tol": "tol",
        "max_iters": "max_iters",
        "seed": "base_seed",
        "grid_cells": "grid_cells",
        "ci": "ci",
        "confidence": "confidence",
        "min_n": "min_n",
        "max_n": "max_n",
        "ci_everywhere": "ci_everywhere",
    }

    @classmethod
    def from_settings(cls, settings: Mapping[str, Any]) -> "Numerics":
        values = {
            name: settings[key]
            for key, name in cls.SETTINGS_KEYS.items()
            if settings.get(key) is not None
        }
        return cls(**values)

    def stopping_rule(self) -> CLTStoppingRule:
        return CLTStoppingRule(
            target=self.ci,
            confidence=self.confidence,
            n_min=self.min_n,
            n_max=self.max_n,
            everywhere=self.ci_everywhere,
        )


# Mean layer widths of the diffusive sets. Every set shares the material
# data below, with material 2 a void.
DIFFUSIVE_SETS: Dict[str, Tuple[float, float]] = {
    "A": (1.0, 0.5),
    "B": (1.0, 1.0),
    "C": (0.5, 1.0),
}
DIFFUSIVE_SIGMA_T1 = 1.0
DIFFUSIVE_ABSORPTION1 = 0.1
DIFFUSIVE_SOURCE1 = 0.2

# Scattering cross section of material 1 per choice.
NON_DIFFUSIVE_SETS: Dict[str, Tuple[float, float, float]] = {
    "D": (0.99, 0.95, 0.9),
    "E": (0.7, 0.5, 0.3),
    "F": (0.1, 0.05, 0.0),
}
NON_DIFFUSIVE_HALF_WIDTH = 20.0
NON_DIFFUSIVE_SIGMA_T1 = 1.0
NON_DIFFUSIVE_SOURCE1 = 0.2

SET_IDS = tuple(DIFFUSIVE_SETS) + tuple(NON_DIFFUSIVE_SETS) + ("custom",)


@dataclass(frozen=True)
class ProblemConfig:
    """A fully resolved problem: materials after scaling, statistics and knobs."""

    set_id: str
    m1: MaterialSpec
    m2: MaterialSpec
    stats: MixingStats
    X: float
    numerics: Numerics = field(default_factory=Numerics)
    M: Optional[int] = None
    choice: Optional[int] = None

    @property
    def diffusive(self) -> bool:
        return self.set_id in DIFFUSIVE_SETS

    @property
    def materials(self) -> Tuple[MaterialSpec, MaterialSpec]:
        return (self.m1, self.m2)

    @property
    def average(self) -> AveragedSpec:
        return volume_average(self.m1, self.m2, self.stats)

    @property
    def eta(self) -> float:
        return eta_factor(self.average)

    @property
    def dx_max(self) -> float:
        if self.numerics.dx_max is not None:
            return self.numerics.dx_max
        return default_dx_max(self.materials, self.stats)

    @property
    def parameter(self) -> str:
        """The table's second column: M, or sigma_s1 for the non-diffusive sets."""
        if self.M is not None:
            return str(self.M)
        if self.choice is not None:
            return f"{self.m1.sigma_s:g}"
        return "custom"

    @property
    def label(self) -> str:
        if self.M is not None:
            return f"{self.set_id}_M{self.M}"
        if self.choice is not None:
            return f"{self.set_id}_s{self.m1.sigma_s:g}"
        return self.set_id

    def with_numerics(self, numerics: Numerics) -> "ProblemConfig":
        return replace(self, numerics=numerics)

    def ensemble_config(self) -> EnsembleConfig:
        n = self.numerics
        return EnsembleConfig(
            m1=self.m1,
            m2=self.m2,
            mixing=self.stats,
            X=self.X,
            quad_order=n.quad_order,
            dx_max=self.dx_max,
            tol=n.tol,
            max_iters=n.max_iters,
            base_seed=n.base_seed,
            grid_cells=n.grid_cells,
        )

    def knobs(self) -> Dict[str, Any]:
        return {
            "quad_order": self.numerics.quad_order,
            "dx_max": self.dx_max,
            "tol": self.numerics.tol,
            "max_iters": self.numerics.max_iters,
            "base_seed": self.numerics.base_seed,
            "grid_cells": self.numerics.grid_cells,
        }


def resolve_problem(
    set_id: str, M_or_choice: int, numerics: Optional[Numerics] = None
) -> ProblemConfig:
    """
    Build one of the reference problems.

    Diffusive sets take M: sigma_a and q of material 1 are divided by M^2 and
    X = (lambda1 + lambda2) M / 2. Non-diffusive sets take the sigma_s1 choice
    1, 2 or 3 with X = 20.

    Raises:
        UnsupportedTypeError: For an unknown set.
        InvalidInputError: For M <= 0 or a choice outside {1, 2, 3}.
    """
    numerics = numerics or Numerics()
    normalized = set_id.upper()

    if normalized in DIFFUSIVE_SETS:
        M = int(M_or_choice)
        if M <= 0 or M != M_or_choice:
            raise InvalidInputError(f"M must be a positive integer, got {M_or_choice}")
        lambda1, lambda2 = DIFFUSIVE_SETS[normalized]
        absorption = DIFFUSIVE_ABSORPTION1 / M**2
        m1 = MaterialSpec(
            sigma_t=DIFFUSIVE_SIGMA_T1,
            sigma_s=DIFFUSIVE_SIGMA_T1 - absorption,
            q=DIFFUSIVE_SOURCE1 / M**2,
        )
        problem = ProblemConfig(
            set_id=normalized,
            m1=m1,
            m2=MaterialSpec.void(),
            stats=MixingStats(lambda1, lambda2),
            X=(lambda1 + lambda2) * M / 2.0,
            numerics=numerics,
            M=M,
        )
    elif normalized in NON_DIFFUSIVE_SETS:
        if M_or_choice not in (1, 2, 3):
            raise InvalidInputError(f"Choice must be 1, 2 or 3, got {M_or_choice}")
        choice = int(M_or_choice)
        m1 = MaterialSpec(
            sigma_t=NON_DIFFUSIVE_SIGMA_T1,
            sigma_s=NON_DIFFUSIVE_SETS[normalized][choice - 1],
            q=NON_DIFFUSIVE_SOURCE1,
        )
        problem = ProblemConfig(
            set_id=normalized,
            m1=m1,
            m2=MaterialSpec.void(),
            stats=MixingStats(1.0, 1.0),
            X=NON_DIFFUSIVE_HALF_WIDTH,
            numerics=numerics,
            choice=choice,
        )
    else:
        logger.error(f"Unsupported problem set: {set_id}. Supported sets: {SET_IDS}")
        raise UnsupportedTypeError(
            f"Unsupported problem set: {set_id}. Supported sets: {list(SET_IDS)}"
        )

    logger.debug(f"Resolved problem {problem.label}: X={problem.X}, m1={problem.m1}")
    return problem


def custom_problem(
    materials: Any, lambdas: Any, X: float, numerics: Optional[Numerics] = None
) -> ProblemConfig:
    """
    Problem from explicit data: `materials` as two [sigma_t, sigma_s, q]
    triples and `lambdas` as the two mean layer widths.
    """
    try:
        (t1, s1, q1), (t2, s2, q2) = materials
        lambda1, lambda2 = lambdas
    except (TypeError, ValueError):
        raise InvalidInputError(
            "Custom problems need two [sigma_t, sigma_s, q] triples and two lambdas"
        ) from None
    return ProblemConfig(
        set_id="custom",
        m1=MaterialSpec(float(t1), float(s1), float(q1)),
        m2=MaterialSpec(float(t2), float(s2), float(q2)),
        stats=MixingStats(float(lambda1), float(lambda2)),
        X=float(X),
        numerics=numerics or Numerics(),
    )
