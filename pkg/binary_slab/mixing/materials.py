from dataclasses import dataclass
import math
from typing import Sequence, Tuple

from binary_slab.utils.exceptions import InvalidInputError, ZeroAbsorptionError


@dataclass(frozen=True)
class MaterialSpec:
    """
    Macroscopic data of one material: total and scattering cross sections
    [1/length] and isotropic source density.
    """

    sigma_t: float
    sigma_s: float
    q: float

    def __post_init__(self) -> None:
        if self.sigma_t < 0 or self.sigma_s < 0 or self.q < 0:
            raise InvalidInputError(
                f"Material data must be nonnegative: sigma_t={self.sigma_t}, "
                f"sigma_s={self.sigma_s}, q={self.q}"
            )
        if self.sigma_s > self.sigma_t:
            raise InvalidInputError(
                f"Scattering cross section {self.sigma_s} exceeds total "
                f"cross section {self.sigma_t}"
            )

    @property
    def sigma_a(self) -> float:
        return self.sigma_t - self.sigma_s

    @property
    def is_void(self) -> bool:
        return self.sigma_t == 0.0 and self.q == 0.0

    @classmethod
    def void(cls) -> "MaterialSpec":
        return cls(sigma_t=0.0, sigma_s=0.0, q=0.0)


@dataclass(frozen=True)
class MixingStats:
    """Mean layer widths of a binary Markovian mixture."""

    lambda1: float
    lambda2: float

    def __post_init__(self) -> None:
        if not (self.lambda1 > 0 and self.lambda2 > 0):
            raise InvalidInputError(
                f"Mean layer widths must be positive: lambda1={self.lambda1}, "
                f"lambda2={self.lambda2}"
            )

    @property
    def p1(self) -> float:
        return self.lambda1 / (self.lambda1 + self.lambda2)

    @property
    def p2(self) -> float:
        return self.lambda2 / (self.lambda1 + self.lambda2)

    def mean_width(self, material: int) -> float:
        """Mean layer width of material 1 or 2."""
        if material == 1:
            return self.lambda1
        if material == 2:
            return self.lambda2
        raise InvalidInputError(f"Material index must be 1 or 2, got {material}")

    def fraction(self, material: int) -> float:
        return self.mean_width(material) / (self.lambda1 + self.lambda2)

    def transition_length(self, material: int, mu: float, eta: float = 1.0) -> float:
        """Markov transition function lambda_i / (eta |mu|)."""
        if mu == 0 or eta <= 0:
            return math.inf
        return self.mean_width(material) / (eta * abs(mu))


@dataclass(frozen=True)
class AveragedSpec:
    """Volume-averaged cross sections and source of a binary mixture."""

    sigma_t: float
    sigma_s: float
    sigma_a: float
    q: float

    def as_material(self) -> MaterialSpec:
        """The atomic-mix material built from these averages."""
        return MaterialSpec(sigma_t=self.sigma_t, sigma_s=self.sigma_s, q=self.q)


def volume_fractions(stats: MixingStats) -> Tuple[float, float]:
    """Volume fractions p_i = lambda_i / (lambda_1 + lambda_2)."""
    return stats.p1, stats.p2


def volume_average(
    m1: MaterialSpec, m2: MaterialSpec, stats: MixingStats
) -> AveragedSpec:
    """
    Weight the data of both materials by their volume fractions.

    The absorption average is taken as <sigma_t> - <sigma_s> so the averaged
    spec is internally consistent.
    """
    p1, p2 = volume_fractions(stats)
    sigma_t = p1 * m1.sigma_t + p2 * m2.sigma_t
    sigma_s = p1 * m1.sigma_s + p2 * m2.sigma_s
    return AveragedSpec(
        sigma_t=sigma_t,
        sigma_s=sigma_s,
        sigma_a=sigma_t - sigma_s,
        q=p1 * m1.q + p2 * m2.q,
    )


def eta_factor(avg: AveragedSpec) -> float:
    """
    Rescaling factor of the Markov transition functions,
    eta = (<sigma_t> / <sigma_a>)^(1/2).

    Raises:
        ZeroAbsorptionError: If <sigma_a> is zero; eta must then be chosen
            explicitly by the caller.
    """
    if avg.sigma_a <= 0.0:
        raise ZeroAbsorptionError(
            "eta is only defined for nonzero mean absorption; pass eta explicitly"
        )
    return math.sqrt(avg.sigma_t / avg.sigma_a)


def default_dx_max(materials: Sequence[MaterialSpec], stats: MixingStats) -> float:
    """
    Default mesh size: cells at most 0.1 mean free paths thick in the densest
    material and at most a tenth of the thinnest mean layer width.
    """
    densest = max(m.sigma_t for m in materials)
    limits = [0.1 * stats.lambda1, 0.1 * stats.lambda2]
    if densest > 0:
        limits.append(0.1 / densest)
    return min(limits)
