"""Exception taxonomy shared by all modules.

The CLI maps these onto exit codes: UsageError -> 2, EnvelopeError -> 3,
verification mismatches -> 1, everything working -> 0.
"""


class CubicRingsError(Exception):
    """Base class for all library errors."""


class ConfigError(CubicRingsError):
    """Invalid ring configuration, or operands built over different configs."""


class NonUnitError(CubicRingsError):
    """Inversion of a series/element that is not a unit."""


class DegenerateLatticeError(CubicRingsError):
    """Generators span a module of rank < 3."""


class PrecisionError(CubicRingsError):
    """Pivot valuations exceed the precision guard; result would be unreliable."""


class NonContainmentError(CubicRingsError):
    """Index or quotient requested for a pair of lattices without containment."""


class LocalityError(CubicRingsError):
    """A local ring was required (nontrivial idempotents present)."""


class NotPlaneCurveError(CubicRingsError):
    """Singularity naming requested for a ring that is not a plane-curve member."""


class EnvelopeError(CubicRingsError):
    """Requested parameters exceed the exhaustive-search tractability envelope."""


class ClassificationFailureError(CubicRingsError):
    """An order matched no family descriptor: precision problem or a genuine
    counterexample to the classification; never swallowed."""


class UsageError(CubicRingsError):
    """Bad user-supplied configuration or input document."""
