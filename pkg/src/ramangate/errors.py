"""Exception types raised by the simulator."""


class RamangateError(Exception):
    """Base class for all simulator errors."""


class DriveOutOfRange(RamangateError):
    """Drive frequency outside the window where the level nesting holds."""


class DeltaOmegaTooLarge(RamangateError):
    """Requested bin spacing exceeds what the dispersive shift supports."""


class NoSolution(RamangateError):
    """No real drive amplitude exists for the requested constraint."""


class BinMismatch(RamangateError):
    """Photon bin spacing does not match the Raman shift of the spectrum."""


class NonBracketed(RamangateError):
    """Root search found no sign change on the scanned branch."""


class NoConvergence(RamangateError):
    """Root search did not reach the requested residual."""


class GridTooCoarse(RamangateError):
    """Numerical grid too coarse: conservation or convergence check failed."""


class GridTooNarrow(RamangateError):
    """Spectral grid does not capture enough of the pulse norm."""


class ConfigMismatch(RamangateError):
    """Network node configuration differs from the required pattern."""


class DimensionMismatch(RamangateError):
    """Operator or state dimensions are inconsistent."""
