from torus_reduction.config import EngineConfig
from torus_reduction.model import (
    EquivariantClass,
    PairingResult,
    SpaceModel,
    product_class,
    product_space,
    validate_space,
)
from torus_reduction.pairing import (
    dh_polynomial,
    nonabelian_pair,
    pair,
    pair_via_convolution,
    regularity_check,
)
from torus_reduction.types import Workspace

__all__ = [
    "EngineConfig",
    "EquivariantClass",
    "PairingResult",
    "SpaceModel",
    "Workspace",
    "dh_polynomial",
    "nonabelian_pair",
    "pair",
    "pair_via_convolution",
    "product_class",
    "product_space",
    "regularity_check",
    "validate_space",
]
