"""Exception hierarchy shared across the package.

Everything raised on purpose derives from TableGenError so callers can
catch one base class.  Internal consistency failures raise
InvariantViolation; those indicate a bug, not bad input, and are never
silenced by the samplers.
"""


class TableGenError(Exception):
    """Base class for all errors raised by this package."""


class UnequalSums(TableGenError):
    """Row and column marginals do not sum to the same total."""


class Empty(TableGenError):
    """A marginal or degree vector has no positive entries."""


class NotBigraphical(TableGenError):
    """No simple bipartite graph realizes the given marginals."""


class NotGraphical(TableGenError):
    """The degree sequence cannot be realized by the requested graph class."""


class Infeasible(TableGenError):
    """No object at all (table or multigraph) matches the given totals."""


class ProbabilityOutOfRange(TableGenError):
    """A probability argument fell outside [0, 1]."""


class InvalidDistribution(TableGenError):
    """Categorical weights were negative or summed to more than one."""


class ApproximateCutoff(TableGenError):
    """The bounded-effort mode ran out of its restart or time budget."""


class TooLarge(TableGenError):
    """An exhaustive enumeration would exceed the configured cap."""


class InsufficientSamples(TableGenError):
    """A statistical check was asked to run with too few samples."""


class FixtureInvalid(TableGenError):
    """A forced-parameter test fixture failed its validity audit."""

    def __init__(self, reasons):
        self.reasons = list(reasons)
        super().__init__("; ".join(self.reasons))


class InvariantViolation(TableGenError):
    """An internal invariant failed; this is a bug in the sampler."""
