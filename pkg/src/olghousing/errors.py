"""Exception types shared across the library."""


class ModelError(Exception):
    """Base class for every domain or numerical error raised by this package."""


class DomainError(ModelError, ValueError):
    """Inputs outside the mathematical domain of an operation."""


class BranchError(ModelError, ValueError):
    """Operation undefined on this curvature branch of the housing utility."""


class RegimeError(ModelError, ValueError):
    """Requested equilibrium object does not exist in the economy's regime."""


class LoanError(ModelError, ValueError):
    """Infeasible loan-to-income ratio."""


class SolverError(ModelError, RuntimeError):
    """Root bracketing or convergence failure in the equilibrium solver."""


class HorizonError(ModelError, ValueError):
    """Horizon or terminal condition cannot produce a valid equilibrium path."""


class ApplicabilityError(ModelError, ValueError):
    """Diagnostic is not applicable to the given path or window."""


class ConfigError(ModelError, ValueError):
    """Invalid run configuration, carrying the offending field path."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
        self.message = message
