from dataclasses import asdict, is_dataclass
from typing import Any
import json

import numpy as np

from binary_slab.utils.exceptions import SerializationError
from binary_slab.utils.logger import logger


class Serializer:
    """
    Converts run metadata (dataclasses, numpy scalars and arrays, paths) into
    JSON-compatible structures for the sidecar files written next to every
    table and flux CSV.
    """

    def serialize(self, data: Any) -> Any:
        """
        Serialize data to a JSON-compatible structure.

        Args:
            data (Any): The data to serialize.

        Returns:
            Any: Nested dicts, lists and plain scalars.
        """
        try:
            return json.loads(json.dumps(data, default=self._default))
        except (TypeError, ValueError) as e:
            logger.debug(f"Serialization exception: {e}")
            raise SerializationError(f"Cannot serialize metadata: {e}")

    def dumps(self, data: Any) -> str:
        """Serialize to a stable, indented JSON string (sorted keys)."""
        return json.dumps(self.serialize(data), indent=2, sort_keys=True) + "\n"

    @staticmethod
    def _default(obj: Any) -> Any:
        if is_dataclass(obj) and not isinstance(obj, type):
            return asdict(obj)
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        if isinstance(obj, np.generic):
            return obj.item()
        return str(obj)
