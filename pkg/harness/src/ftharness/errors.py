class HarnessError(Exception):
    """Base class for harness failures."""


class BadDataFile(HarnessError):
    """A prepared-example or generations file is missing or malformed."""

    def __init__(self, path, reason: str):
        super().__init__(f"{path}: {reason}")
        self.path = path
        self.reason = reason


class ModelLoadError(HarnessError):
    """The model reference cannot be resolved to a usable model."""
