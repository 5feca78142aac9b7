"""Exception and warning types shared across the package."""


class InvalidStateError(ValueError):
    """A matrix or amplitude vector violates density-matrix / pure-state invariants."""


class CapacityError(ValueError):
    """A dense brute-force path was requested beyond its qubit-count guard."""


class UnsupportedStructureError(ValueError):
    """A structured closed form was requested outside its validity domain."""


class NumericalConsistencyError(ArithmeticError):
    """An internally derived quantity left its mathematically admissible range."""


class AmplitudeFileError(ValueError):
    """An initial-amplitude JSON document failed to parse or validate."""


class AsymptoticRegimeWarning(UserWarning):
    """A large-database approximation was evaluated outside the j << N regime."""
