"""Shared exception types."""


class ParameterError(ValueError):
    """Presentation parameters violate a defining constraint.

    The message names the violated constraint.
    """


class CentralityError(ValueError):
    """An extra relator is not central in the group it is imposed on."""


class RankDeficientError(ValueError):
    """Lattice generators span a rank-deficient sublattice of Z^3."""


class BuildIntegrityError(RuntimeError):
    """A constructed group failed one of its built-in consistency counts."""


class EnumerationBudgetError(RuntimeError):
    """A group exceeds the configured enumeration bound."""


class NotCapableError(RuntimeError):
    """Witness construction was requested for a group that is not capable."""
