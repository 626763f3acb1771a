"""Exception types shared across the package."""


class RandQRError(Exception):
    """Base class for errors raised by this package."""


class DimensionError(RandQRError):
    """Operands have incompatible or invalid dimensions."""


class ConvergenceError(RandQRError):
    """An iterative routine failed to converge within its sweep budget."""
