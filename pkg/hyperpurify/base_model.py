import json
from typing import Any

import numpy as np
from pydantic import BaseModel as pyBaseModel
from pydantic import ConfigDict


def custom_json_serializer(obj: object, indent: int | None = 2) -> str:
    """Deterministic JSON text: sorted keys, numpy values converted."""
    return json.dumps(serialize_values(obj), ensure_ascii=False, allow_nan=False, indent=indent, sort_keys=True)


class BaseModel(pyBaseModel):
    model_config = ConfigDict(
        populate_by_name=True,
        validate_assignment=True,
        arbitrary_types_allowed=True,
    )


class FrozenModel(BaseModel):
    """Immutable value type; operations return new instances."""

    model_config = ConfigDict(
        populate_by_name=True,
        arbitrary_types_allowed=True,
        frozen=True,
    )


def json_encoder(value: Any) -> Any:
    if isinstance(value, (np.bool_,)):
        return bool(value)
    elif isinstance(value, np.integer):
        return int(value)
    elif isinstance(value, np.floating):
        return float(value)
    elif isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    elif isinstance(value, np.ndarray):
        return serialize_values(value.tolist())
    elif isinstance(value, (set, frozenset)):
        return serialize_values(sorted(value))
    elif isinstance(value, pyBaseModel):
        return serialize_values(value.model_dump(exclude_none=True))
    return value


def serialize_values(value: Any) -> Any:
    if isinstance(value, dict):
        serializedDict = {}
        for dictKey, dictValue in value.items():
            serializedKey = json_encoder(dictKey)
            if not isinstance(serializedKey, (str, int, float, bool)) or serializedKey is None:
                serializedKey = str(serializedKey)
            serializedDict[serializedKey] = serialize_values(dictValue)
        return serializedDict
    elif isinstance(value, (list, tuple)):
        return [serialize_values(listValue) for listValue in value]
    return json_encoder(value)
