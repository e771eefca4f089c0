from pydantic import BaseModel, ConfigDict


class ReductionModel(BaseModel):
    """
    Base model for engine values: frozen, and allowed to hold the exact types of
    :mod:`torus_reduction.exactmath`.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)
