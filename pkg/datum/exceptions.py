"""
DimDatum - Exceptions

Error hierarchy shared by the library modules. Validation routines
return diagnostics instead of raising; everything else raises one of these.
"""


class DatumError(Exception):
    """Base class for all library errors."""


class RankMismatchError(DatumError, ValueError):
    """Weights, characters or group elements live in lattices of different rank."""


class DominanceError(DatumError, ValueError):
    """A weight is not dominant/integral, or not admissible for an identity."""


class RootSystemError(DatumError):
    """Malformed root system label or a reflection that is not a signed permutation."""


class ContainmentError(DatumError, ValueError):
    """An averaging group does not contain the required Weyl group."""


class SchemeError(DatumError):
    """The inductive irreducibility scheme does not apply to the input."""


class BranchingError(DatumError):
    """Embedding mismatch or a negative coefficient while peeling a restriction."""


class AffineError(DatumError):
    """Unsupported catalog entry, missing lifting, or inconsistent density forms."""


class CacheError(DatumError):
    """A cache document does not follow the expected schema."""
