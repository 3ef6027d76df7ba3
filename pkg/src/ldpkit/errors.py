"""Semantic exceptions shared across the toolkit."""


class DimensionError(ValueError):
    """Operands live on alphabets of incompatible sizes."""


class DomainError(ValueError):
    """A numeric argument is outside its admissible range."""


class CapacityError(ValueError):
    """A product construction would exceed the configured state cap."""
