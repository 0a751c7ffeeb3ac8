"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Operands have incompatible lengths or shapes."""


class SpecError(ValueError):
    """Ensemble parameters are inconsistent (socket balance, parity, ranges)."""


class EnumerationInfeasibleError(RuntimeError):
    """Exhaustive codebook enumeration would exceed the nullity cap."""


class AlistParseError(ValueError):
    """Malformed alist file; carries the offending line number."""

    def __init__(self, message, line_number):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class NoLinearDistanceError(ValueError):
    """Weight-enumerator exponent has no positive root: the ensemble lacks
    a linear minimum distance (e.g. variable degree 2)."""
