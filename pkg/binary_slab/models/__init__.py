from binary_slab.models.base import Model
from binary_slab.models.diffusion import (
    DiffusionALPModel,
    DiffusionAMModel,
    DiffusionLPModel,
)
from binary_slab.models.factory import ModelFactory
from binary_slab.models.transport import (
    ALPModel,
    AtomicMixModel,
    BenchmarkModel,
    LPModel,
)

ModelFactory.register_model("benchmark", BenchmarkModel)
ModelFactory.register_model("lp", LPModel)
ModelFactory.register_model("alp", ALPModel)
ModelFactory.register_model("am", AtomicMixModel)
ModelFactory.register_model("diff-am", DiffusionAMModel)
ModelFactory.register_model("diff-lp", DiffusionLPModel)
ModelFactory.register_model("diff-alp", DiffusionALPModel)

__all__ = [
    "ALPModel",
    "AtomicMixModel",
    "BenchmarkModel",
    "DiffusionALPModel",
    "DiffusionAMModel",
    "DiffusionLPModel",
    "LPModel",
    "Model",
    "ModelFactory",
]
