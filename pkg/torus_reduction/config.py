from pydantic import BaseModel, ConfigDict, Field

DEFAULT_MAX_XI_CANDIDATES = 64


class PolarizationConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    max_candidates: int = Field(DEFAULT_MAX_XI_CANDIDATES, gt=0)
    """How many vectors of the sequence ``(1, N, N^2, ...)`` to try before giving up."""


class ChamberConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    held_out_nodes: int = Field(4, ge=1)
    max_retries: int = Field(8, ge=0)


class OracleConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    grid_tolerance: float = Field(1e-2, gt=0)
    monte_carlo_samples: int = Field(20000, gt=0)
    seed: int = 0
    max_fiber_dim: int = Field(8, ge=0)


class EngineConfig(BaseModel):
    """
    Settings shared by the engine entry points. An input document may carry a
    ``config`` object with the same shape.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    polarization: PolarizationConfig = PolarizationConfig()
    chamber: ChamberConfig = ChamberConfig()
    oracle: OracleConfig = OracleConfig()
    debug: bool = False
    """Keep discarded partial-fraction pieces and verify every decomposition."""


DEFAULT_CONFIG = EngineConfig()
