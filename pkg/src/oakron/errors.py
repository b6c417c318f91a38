"""Exception types shared across the package."""


class OakronError(Exception):
    """Base class for all package-specific errors."""


class NotPrimePower(OakronError):
    """Requested field order is not a prime power."""


class UnsupportedField(OakronError):
    """Field order is a prime power but outside the supported range."""


class DivisionByZero(OakronError):
    """Multiplicative inverse of the additive identity."""


class ColumnOutOfRange(OakronError, IndexError):
    """Column index outside [0, m)."""


class TooFewColumns(OakronError):
    """Operation needs more columns than the array has."""


class BlockSizeMismatch(OakronError):
    """Row-block size does not divide the run count."""


class SliceSizeMismatch(OakronError):
    """Slice count does not divide the run count."""


class FieldMismatch(OakronError):
    """Operands live over different fields."""


class BlockCountMismatch(OakronError):
    """Stack has the wrong number of blocks."""


class ShapeMismatch(OakronError):
    """Matrix dimensions incompatible with the requested operation."""


class PreconditionFailed(OakronError):
    """A construction input failed its verified precondition.

    Carries the offending verification report (when one exists) so callers
    can see the witness.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class IncompatibleOrders(OakronError):
    """Source and target field orders do not admit the requested projection."""


class BadKernel(OakronError):
    """Kernel generators or labeling do not define a valid projection."""


class UnknownSeed(OakronError):
    """No bundled seed with the given id."""


class SeedCorrupt(OakronError):
    """A bundled seed failed its verification at load time."""


class SeedUnavailable(OakronError):
    """No generator or bundled file provides the requested array class."""


class FormatError(OakronError):
    """Malformed canonical-format file."""
