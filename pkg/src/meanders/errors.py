"""Exception types shared across the package."""


class MeanderError(Exception):
    """Base class for all package-specific errors."""


class SizeLimitError(MeanderError):
    """A resource guard refused the requested problem size."""


class GroundSetMismatchError(MeanderError):
    """Two partitions live on different ground sets."""


class InvalidPartitionError(MeanderError):
    """Blocks do not form a non-crossing partition, or the permutation is
    not geodesic."""


class CycleParseError(MeanderError):
    """Cycle-notation text could not be parsed into a valid partition."""


class BoundsMismatchError(MeanderError):
    """Series operands carry incompatible truncation bounds."""


class CoverageError(MeanderError):
    """The irreducible table does not cover the orders a series needs."""


class StructureViolationError(MeanderError):
    """A structural identity that must hold exactly failed; this signals a
    bug or insufficient input data, never numerical noise."""


class CacheIntegrityError(MeanderError):
    """A cache file failed validation.  Delete the file to force a
    recompute."""


class AsymptoticUndefinedError(MeanderError):
    """The extracted polynomial vanishes at 1, so the asymptotic constant
    is not defined by the closed form."""
