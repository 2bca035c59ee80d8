# app/models/base.py
from typing import Any, Annotated

import numpy as np
from pydantic import BaseModel, ConfigDict, GetCoreSchemaHandler, GetJsonSchemaHandler
from pydantic.json_schema import JsonSchemaValue
from pydantic_core import core_schema


def _freeze(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


class _ComplexMatrixPydanticAnnotation:
    """
    Custom Pydantic annotation for dense complex matrices.
    Accepts numpy arrays or nested lists (of numbers or [re, im] pairs),
    stores a read-only complex128 array and serializes to nested [re, im] pairs.
    """

    @classmethod
    def __get_pydantic_core_schema__(
        cls,
        _source_type: Any,
        _handler: GetCoreSchemaHandler,
    ) -> core_schema.CoreSchema:
        def validate_matrix(value: Any) -> np.ndarray:
            array = np.asarray(value)
            # [[ [re, im], ... ], ...] as produced by serialization
            if array.ndim == 3 and array.shape[-1] == 2 and not np.iscomplexobj(array):
                array = array[..., 0] + 1j * array[..., 1]
            array = np.array(array, dtype=np.complex128)
            if array.ndim != 2 or array.shape[0] != array.shape[1]:
                raise ValueError(f"Expected a square matrix, got shape {array.shape}")
            if not np.all(np.isfinite(array)):
                raise ValueError("Matrix contains NaN or Inf entries")
            return _freeze(array)

        def serialize_matrix(array: np.ndarray) -> list:
            return [[[float(z.real), float(z.imag)] for z in row] for row in array]

        return core_schema.no_info_plain_validator_function(
            validate_matrix,
            serialization=core_schema.plain_serializer_function_ser_schema(serialize_matrix),
        )

    @classmethod
    def __get_pydantic_json_schema__(
        cls,
        _core_schema: core_schema.CoreSchema,
        handler: GetJsonSchemaHandler,
    ) -> JsonSchemaValue:
        return {
            'type': 'array',
            'items': {'type': 'array', 'items': {'type': 'array', 'items': {'type': 'number'}}},
        }


class _RealVectorPydanticAnnotation:
    """Read-only float64 vector, serialized as a plain list."""

    @classmethod
    def __get_pydantic_core_schema__(
        cls,
        _source_type: Any,
        _handler: GetCoreSchemaHandler,
    ) -> core_schema.CoreSchema:
        def validate_vector(value: Any) -> np.ndarray:
            array = np.array(value, dtype=np.float64)
            if array.ndim != 1:
                raise ValueError(f"Expected a vector, got shape {array.shape}")
            if not np.all(np.isfinite(array)):
                raise ValueError("Vector contains NaN or Inf entries")
            return _freeze(array)

        return core_schema.no_info_plain_validator_function(
            validate_vector,
            serialization=core_schema.plain_serializer_function_ser_schema(
                lambda array: [float(x) for x in array]
            ),
        )

    @classmethod
    def __get_pydantic_json_schema__(
        cls,
        _core_schema: core_schema.CoreSchema,
        handler: GetJsonSchemaHandler,
    ) -> JsonSchemaValue:
        return {'type': 'array', 'items': {'type': 'number'}}


# These are the type aliases to use throughout the codebase
ComplexMatrix = Annotated[np.ndarray, _ComplexMatrixPydanticAnnotation]
RealVector = Annotated[np.ndarray, _RealVectorPydanticAnnotation]


class FrozenModel(BaseModel):
    """
    Base model for immutable value records. Instances are safe to share
    across threads: fields cannot be reassigned and arrays are read-only.
    """
    model_config = ConfigDict(
        frozen=True,
        arbitrary_types_allowed=True,
        populate_by_name=True,
    )
