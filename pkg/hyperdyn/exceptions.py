class HyperdynError(Exception):
    """Base class for every error raised by hyperdyn."""


class SpecError(HyperdynError, ValueError):
    """A system, metric or config description could not be understood."""


class MetricError(HyperdynError, ValueError):
    pass


class EnumerationCapError(HyperdynError):
    def __init__(self, requested: int, cap: int):
        self.requested = requested
        self.cap = cap
        super().__init__(f"hyperspace would hold {requested} elements, cap is {cap}")


class UnsupportedBackendError(HyperdynError):
    pass


class QuotientError(HyperdynError):
    pass
