from abc import ABC, abstractmethod
from typing import TYPE_CHECKING, ClassVar

from binary_slab.transport.flux import FluxField

if TYPE_CHECKING:
    from binary_slab.report.problems import ProblemConfig


class Model(ABC):
    """
    Base abstract class for every model of the ensemble-averaged flux.

    A model turns a resolved problem into a scalar flux field tagged with the
    model that produced it.
    """

    name: ClassVar[str] = ""
    model_tag: ClassVar[str] = ""

    @abstractmethod
    def solve(self, problem: "ProblemConfig") -> FluxField:
        """
        Solve the problem.

        Raises:
            BinarySlabError: Any domain failure of the underlying solver.
        """
        pass
