"""Exception taxonomy shared across the package.

Each class carries the process exit code the CLI maps it to, so command
wrappers translate failures uniformly.
"""


class FucikError(Exception):
    exit_code = 1


class InvalidInputError(FucikError):
    """Malformed input: bad matrix, window, vector, or unknown fixture."""

    exit_code = 2


class SpectralError(FucikError):
    """A spectral precondition does not hold (not an eigenvalue, vector not
    in the kernel, zero components where nonzero ones are required, ...)."""

    exit_code = 3


class RangeError(SpectralError):
    """Right-hand side is not in the range of A - lambda*I."""


class DefectiveDirectionError(SpectralError):
    """Q u0 = 0: the direction belongs to the degenerate one-sided analysis."""


class WrongClassError(SpectralError):
    """Operation invoked for a direction of the wrong degeneracy class."""


class CapacityError(FucikError):
    """Problem size exceeds the hard cap of the brute-force enumeration."""

    exit_code = 4


class VerificationError(FucikError):
    """A fixture verification run found mismatches."""

    exit_code = 5
