"""Exception hierarchy for the impostoron package.

Every error the library raises derives from ImpostoronError so callers (and
the CLI) can distinguish model/domain failures from programming bugs.
"""


class ImpostoronError(Exception):
    """Base class for all library errors."""


class DomainError(ImpostoronError, ValueError):
    """Input outside the mathematical or physical domain of an operation."""


class RangeError(DomainError):
    """Frequency outside the validity range of a tabulated model."""


class ParseError(ImpostoronError):
    """Malformed model or data file."""


class DataFileError(ImpostoronError):
    """A referenced data file could not be located."""


class SingularityError(ImpostoronError):
    """Clausius-Mossotti divergence or a singular line shape."""


class NoResonanceError(ImpostoronError):
    """The real permittivity has no rising zero crossing in the bracket."""


class NoConsistentLossError(ImpostoronError):
    """No real loss value is consistent with the neat liquid at this frequency."""


class UnreachableFrequencyError(ImpostoronError):
    """No non-negative concentration places the resonance at the target frequency."""


class NoProfileMatchError(ImpostoronError):
    """The line-shape matching condition has no root in the bracket."""


class DegenerateLineshapeError(ImpostoronError):
    """Line shape collapses to a delta (zero loss), so no finite profile exists."""


class GridError(ImpostoronError):
    """Time or frequency grid violates a sampling requirement."""


class NoSignalError(ImpostoronError):
    """An all-zero field map has no probe maximum to cut at."""


class StepFitError(ImpostoronError):
    """Least-squares step-model fit failed to converge."""


class PeakError(ImpostoronError):
    """Peak analysis failed."""


class EdgePeakError(PeakError):
    """Spectrum maximum sits on the band edge; no interior peak."""


class UnboundedWidthError(PeakError):
    """No half-maximum crossing on one side of the peak inside the band."""
