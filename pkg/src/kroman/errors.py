"""Exception hierarchy shared by the library and the CLI."""


class KRomanError(Exception):
    """Base class for all package errors."""


class ParameterDomainError(KRomanError, ValueError):
    """A parameter lies outside the domain of an operation (e.g. m < 3)."""


class MalformedLabelingError(KRomanError, ValueError):
    """A labeling has the wrong shape or labels outside {0, ..., k+1}."""


class InvalidPackingError(KRomanError, ValueError):
    """Two vertices of a claimed packing have intersecting closed neighbourhoods."""


class ConstructionError(KRomanError):
    """A constructor could not produce a valid labeling within its weight budget."""


class ResourceBudgetError(KRomanError):
    """An exact oracle would exceed its configured state or size budget."""


class SoundnessError(KRomanError):
    """An exact value exceeds an upper bound or a constructed weight."""
