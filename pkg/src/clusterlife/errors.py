"""Exception hierarchy shared by all clusterlife modules.

Exit-code mapping used by the CLI: ValidationError -> 2, GuardError -> 3,
everything else derived from ClusterLifeError -> 4.
"""


class ClusterLifeError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(ClusterLifeError):
    """Bad user input: malformed scenario files, inconsistent node specs."""


class GuardError(ClusterLifeError):
    """A combinatorial guard was hit (instance too large for an exact mode)."""


class ModelDegeneracyError(ClusterLifeError):
    """Correlation model is degenerate (singular covariance, non-positive loads)."""


class InfeasibleEnergyError(ClusterLifeError):
    """Requested per-slot energy is at or below the large-time asymptote h*ln2."""


class NumericError(ClusterLifeError):
    """A numeric routine failed to converge or produced an inconsistent result."""
