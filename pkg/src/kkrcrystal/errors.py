"""Shared exception types."""


class AlphabetError(ValueError):
    """Two crystal elements live over different alphabets."""


class ValidationError(ValueError):
    """A rigged configuration violates its defining inequalities."""


class AlgorithmInvariantError(RuntimeError):
    """An internal invariant of a combinatorial procedure was violated.

    This always indicates a bug, never bad user input.
    """


class NormalOrderError(ValueError):
    """A scattering datum does not satisfy the normal-ordering contract."""


class ResidueError(RuntimeError):
    """A vertex pass exited with letters other than the background letter."""


class NotSeparatedError(ValueError):
    """A box-ball state is not well separated into solitons."""


class CapExceededError(RuntimeError):
    """An enumeration or orbit closure exceeded its configured cap."""
