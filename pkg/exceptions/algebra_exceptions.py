"""
Exceptions raised by the algebra, module and CLI layers.
"""


class WeylToolkitError(Exception):
    """Base exception for every error raised by the toolkit."""

    def __init__(self, message, details=None):
        self.details = details or {}
        super().__init__(message)


class ScalarError(WeylToolkitError):
    """Exception raised for invalid cyclotomic arithmetic or scalar parsing."""

    pass


class RootDataError(WeylToolkitError):
    """Exception raised for invalid Cartan types, ranks or diagram automorphisms."""

    pass


class StructureConstantError(WeylToolkitError):
    """Exception raised when structure constants or the lifted automorphism are inconsistent."""

    pass


class TruncationError(WeylToolkitError):
    """Exception raised for invalid truncation ideals or truncations that are too shallow."""

    pass


class XiFunctionError(WeylToolkitError):
    """Exception raised for invalid finitely supported functions or multisets."""

    pass


class ModuleConstructionError(WeylToolkitError):
    """Exception raised when a cyclic quotient cannot be built."""

    pass


class DepthNotStabilizedError(ModuleConstructionError):
    """Exception raised when iterative deepening hits the depth cap without stabilizing."""

    def __init__(self, message, history=None):
        self.history = list(history or [])
        super().__init__(message, details={"history": self.history})


class VerificationError(WeylToolkitError):
    """Exception raised when a verification check fails; carries the witness."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message, details={"witness": witness})


class JobSpecError(WeylToolkitError):
    """Exception raised for malformed command-line input (usage or parse errors)."""

    pass
