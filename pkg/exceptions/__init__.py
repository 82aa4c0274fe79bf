"""
Exceptions package for the Weyl module toolkit.
"""
from exceptions.algebra_exceptions import (
    WeylToolkitError,
    ScalarError,
    RootDataError,
    StructureConstantError,
    TruncationError,
    XiFunctionError,
    ModuleConstructionError,
    DepthNotStabilizedError,
    VerificationError,
    JobSpecError,
)

__all__ = [
    "WeylToolkitError",
    "ScalarError",
    "RootDataError",
    "StructureConstantError",
    "TruncationError",
    "XiFunctionError",
    "ModuleConstructionError",
    "DepthNotStabilizedError",
    "VerificationError",
    "JobSpecError",
]
