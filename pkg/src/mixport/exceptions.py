class MixportError(Exception):
    """Base exception for mixport library."""
    pass

class NotHermitianError(MixportError):
    """Raised when a matrix is not Hermitian within tolerance."""
    pass

class DimensionMismatchError(MixportError):
    """Raised when operand shapes are incompatible."""
    pass

class InvalidStateError(MixportError):
    """Raised when a matrix is not a valid density matrix (trace, Hermiticity, positivity)."""
    pass

class NotBipartiteError(MixportError):
    """Raised when declared subsystem dimensions do not describe a bipartite system."""
    pass

class WrongShapeError(MixportError):
    """Raised when an operation needs a specific subsystem layout (e.g. two qubits)."""
    pass

class InvalidParamsError(MixportError):
    """Raised when channel parameters violate a family constraint."""
    pass

class OutOfRangeError(MixportError):
    """Raised when a scalar argument is outside its admissible interval."""
    pass

class DegenerateOutcomeError(MixportError):
    """Raised when a Bell outcome has zero probability and no conditional state exists."""
    pass

class ChannelSpecError(MixportError):
    """Raised when a channel text form cannot be parsed."""
    pass

class ConfigError(MixportError):
    """Raised when a run configuration is invalid."""
    pass


class MixportWarning(UserWarning):
    """Base warning for mixport library."""
    pass

class ChannelRangeWarning(MixportWarning):
    """Channel weights lie outside the MEMS ordering but still give a usable matrix."""
    pass

class DegenerateOutcomeWarning(MixportWarning):
    """A Bell outcome with zero probability was recorded."""
    pass
