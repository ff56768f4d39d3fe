"""
Exception hierarchy

Every error raised by the toolkit derives from OrdinaryPlanesError and carries
the process exit code the command-line surface reports for it.
"""

from typing import Optional, Sequence, Tuple


EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_VERIFICATION = 3


class OrdinaryPlanesError(Exception):
    """Base class for all toolkit errors"""
    exit_code = EXIT_USAGE


# Usage errors

class UnsupportedDimensionError(OrdinaryPlanesError):
    """Raised when an operation is not defined in the given dimension"""
    pass


class UnsupportedSizeError(OrdinaryPlanesError):
    """Raised when a family or bound is asked for an unsupported point count"""
    pass


class UnsupportedBackendError(OrdinaryPlanesError):
    """Raised when a family has no constructor for the requested backend"""
    pass


class NotOddError(OrdinaryPlanesError):
    """Raised when the odd-dimension construction gets an even dimension"""
    pass


class AlphasNotDistinctError(OrdinaryPlanesError):
    """Raised when the construction parameters are repeated or zero"""
    pass


class SearchTooLargeError(OrdinaryPlanesError):
    """Raised when the exhaustive secant-vector search exceeds its guard"""
    pass


class IndexOutOfRangeError(OrdinaryPlanesError):
    """Raised when a point index does not exist in the configuration"""
    pass


# Parse and validation errors

class ConfigurationParseError(OrdinaryPlanesError):
    """Raised when a configuration file cannot be read or parsed"""
    exit_code = EXIT_VALIDATION


class DuplicatePointError(ConfigurationParseError):
    """Raised when two points coincide after canonicalization"""
    pass


class DimensionMismatchError(OrdinaryPlanesError):
    """Raised when vectors of different lengths are combined"""
    exit_code = EXIT_VALIDATION


class ZeroVectorError(OrdinaryPlanesError):
    """Raised when the zero vector is used as a projective object"""
    exit_code = EXIT_VALIDATION


class RankDeficientError(OrdinaryPlanesError):
    """Raised when a matrix has smaller rank than its row count requires"""
    exit_code = EXIT_VALIDATION


class DegenerateError(OrdinaryPlanesError):
    """Raised when d points do not span a hyperplane"""
    exit_code = EXIT_VALIDATION


class SingularMapError(OrdinaryPlanesError):
    """Raised when a projective map has zero determinant"""
    exit_code = EXIT_VALIDATION


class _WitnessError(OrdinaryPlanesError):
    """Error carrying the point indices that triggered it"""
    exit_code = EXIT_VALIDATION

    def __init__(self, message: str, witness: Optional[Sequence[int]] = None):
        super().__init__(message)
        self.witness: Optional[Tuple[int, ...]] = tuple(witness) if witness is not None else None


class DegenerateSubsetError(_WitnessError):
    """Raised when a d-subset of a configuration does not span a hyperplane"""
    pass


class DegenerateConfigurationError(_WitnessError):
    """Raised when a configuration is not in general position"""
    pass


class DuplicateProjectionError(_WitnessError):
    """Raised when two points project onto the same point"""
    pass


class IllConditionedError(_WitnessError):
    """Raised when the numeric backend meets a numerically degenerate subset"""
    pass


# Verification errors

class VerificationMismatchError(OrdinaryPlanesError):
    """Raised when a closed form disagrees with the incidence engine"""
    exit_code = EXIT_VERIFICATION
