"""Exception types shared across the package."""


class LarderError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(LarderError):
    """A configuration value or file is invalid."""


class CorpusFormatError(LarderError):
    """A corpus file is malformed; the message names the offending record."""


class UnknownIngredientError(LarderError):
    """A query referenced ingredient ids or names that do not exist."""

    def __init__(self, ids):
        self.ids = sorted(ids)
        super().__init__(f"unknown ingredient(s): {', '.join(self.ids)}")


class MiningError(LarderError):
    """Association rule mining was asked to do something inconsistent."""


class TrainingError(LarderError):
    """Classifier training preconditions were violated."""


class IntegrityError(LarderError):
    """Stored artifacts fail hash or version verification."""


class PipelineError(LarderError):
    """A pipeline stage failed; the message names the stage."""
