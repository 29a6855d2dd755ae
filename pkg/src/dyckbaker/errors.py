"""Exception types shared across the package."""


class DyckBakerError(Exception):
    """Base class for all errors raised by this package."""


class WordFormatError(DyckBakerError, ValueError):
    """A word or symbol fails validation (bad token, index out of range)."""


class EmptyWordError(DyckBakerError, ValueError):
    """An operation that needs a nonempty word received the empty word."""


class NotPeriodicPointError(DyckBakerError, ValueError):
    """The word does not define a point of the subshift."""


class ResourceLimitError(DyckBakerError, RuntimeError):
    """Projected work exceeds the configured budget."""


class EmptyEnsembleError(DyckBakerError, ValueError):
    """The requested periodic-point set is empty (e.g. zero class, odd n)."""


class NoDriftError(DyckBakerError, ValueError):
    """Decoration requires a nonzero height drift of the right sign."""


class MatchSearchExceededError(DyckBakerError, RuntimeError):
    """Partner search ran past its proven bound; indicates a bug."""


class NonHyperbolicError(DyckBakerError, ValueError):
    """The word has zero height, so the center multiplier is 1."""


class ConstraintViolationError(DyckBakerError, RuntimeError):
    """A solved orbit point missed its closed tile; indicates a bug."""
