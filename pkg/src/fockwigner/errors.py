"""Exception types shared across the package.

Everything raised on a contract violation derives from FockwignerError so
callers can catch the package's failures with a single except clause while
still being able to distinguish the individual conditions.
"""


class FockwignerError(Exception):
    """Base class for all package-specific failures."""


class DimensionError(FockwignerError):
    """Invalid or mismatched dimensions (operators, layouts, grids)."""


class ValidationError(FockwignerError):
    """A matrix failed density-matrix validation."""


class HermiticityError(ValidationError):
    """Asymmetry ||M - M^dag||_max above the hermiticity tolerance."""


class TraceError(ValidationError):
    """|trace - 1| above the trace tolerance."""


class PositivityError(ValidationError):
    """Smallest eigenvalue below the negative positivity tolerance."""

    def __init__(self, message, min_eigenvalue=None):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue


class TruncationError(FockwignerError):
    """Requested dimension cannot hold the state to the required tail weight."""

    def __init__(self, message, suggested_dim=None):
        super().__init__(message)
        self.suggested_dim = suggested_dim


class PadTooSmallError(TruncationError):
    """Working dimension of a padded unitary too small for the requested state."""


class NonHermitianInputError(FockwignerError):
    """Series evaluation found an imaginary residue above threshold."""


class ExtentError(FockwignerError):
    """Grid does not cover the support of the field it should integrate."""


class CostGuardError(FockwignerError):
    """Brute-force oracle invoked beyond its intended order range."""


class SteadyStateError(FockwignerError):
    """Steady-state solve failed (degenerate or ill-conditioned generator)."""


class ReconstructionError(FockwignerError):
    """Base class for reconstruction failures."""


class InfeasibleTargetError(ReconstructionError):
    """Observed occupation exceeds the target occupation."""


class DegenerateVacuumError(ReconstructionError):
    """Vacuum weight so close to one that stripping is numerically void."""


class NonphysicalStateError(ReconstructionError):
    """Reconstructed state has a negative eigenvalue beyond tolerance."""

    def __init__(self, message, min_eigenvalue=None):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue


class FitError(ReconstructionError):
    """No feasible superposition fit found."""

    def __init__(self, message, best_residual=None):
        super().__init__(message)
        self.best_residual = best_residual
