"""Exception types shared across the package."""


class NegativeEntryError(ValueError):
    """An input vector has an entry below the negativity tolerance."""


class SumNotOneError(ValueError):
    """An input vector's entries do not sum to 1 within tolerance."""


class DimMismatchError(ValueError):
    """Two inputs that must share a dimension do not."""


class EpsOutOfRangeError(ValueError):
    """A ball radius or flow time lies outside [0, 1]."""


class DomainError(ValueError):
    """An entropy's outer function is undefined at the evaluated point."""


class BoundaryError(ValueError):
    """An operation requiring interior points was called on the simplex boundary."""


class BadParamError(ValueError):
    """A family or formula parameter lies outside its validity range."""


class WrongClassError(TypeError):
    """An entropy family of the wrong classification was supplied."""


class NotConvergedError(RuntimeError):
    """An iterative solver exhausted its sweep budget."""


class BadTemperatureError(ValueError):
    """Gibbs-state temperatures must be positive and distinct."""


class TooLargeError(ValueError):
    """Exact enumeration was requested beyond its supported size."""
