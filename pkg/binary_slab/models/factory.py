from typing import ClassVar, Dict, List, Type

from binary_slab.models.base import Model
from binary_slab.utils.exceptions import UnsupportedTypeError
from binary_slab.utils.logger import logger


class ModelFactory:
    """
    Registry-based factory for Model implementations, keyed by the names the
    CLI accepts (benchmark, lp, alp, am, diff-am, diff-lp, diff-alp).
    """

    REGISTRY: ClassVar[Dict[str, Type[Model]]] = {}

    @classmethod
    def register_model(cls, name: str, model_class: Type[Model]) -> None:
        cls.REGISTRY[name.lower()] = model_class

    @classmethod
    def names(cls) -> List[str]:
        return list(cls.REGISTRY.keys())

    @classmethod
    def create(cls, model_type: str, **kwargs) -> Model:
        """
        Create a Model implementation based on requested type.

        Args:
            model_type (str): Registered model name, case insensitive.
            **kwargs: Passed to the model's constructor.

        Raises:
            UnsupportedTypeError: If the requested model is not registered.
        """
        normalized_type = model_type.lower()
        logger.debug(f"Creating model of type: {normalized_type}")

        if normalized_type not in cls.REGISTRY:
            supported = cls.names()
            logger.error(
                f"Unsupported model type: {model_type}. Supported types: {supported}"
            )
            raise UnsupportedTypeError(
                f"Unsupported model type: {model_type}. Supported types: {supported}"
            )

        return cls.REGISTRY[normalized_type](**kwargs)
