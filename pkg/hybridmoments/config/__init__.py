from .models import (
    HamiltonianSpec,
    InitialData,
    OutputConfig,
    RunConfig,
    SignatureConfig,
    default_kind,
    integrator_from_dict,
    integrator_to_dict,
)

__all__ = [
    "default_kind",
    "HamiltonianSpec",
    "InitialData",
    "integrator_from_dict",
    "integrator_to_dict",
    "OutputConfig",
    "RunConfig",
    "SignatureConfig",
]
