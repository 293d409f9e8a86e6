"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: capacity problems exit with 3, every
other ``PraafError`` is an input error and exits with 2.
"""

from __future__ import annotations


class PraafError(Exception):
    """Base class for all errors raised by the package."""


class DomainError(PraafError, ValueError):
    """An argument, attack or set does not belong to the framework it is used with."""


class UsageError(PraafError, ValueError):
    """Bad option value, e.g. an unknown semantics name."""


class ConfigurationError(PraafError, ValueError):
    """A configured identifier clashes with the input (e.g. the ground-truth id)."""


class CapacityError(PraafError):
    """An exhaustive enumeration would exceed its configured cap."""


class MalformedNormalFormError(DomainError):
    """A PrAAF cannot be mapped back out of probabilistic attack normal form."""


class ValidationError(DomainError):
    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations)
        super().__init__(f"invalid PrAAF: {lines}")


class ParseError(PraafError, ValueError):
    """Positioned diagnostic from the ``.praaf`` reader.

    ``code`` is one of ``syntax``, ``unknown-endpoint``, ``duplicate``,
    ``zero-probability``, ``probability-range`` or ``invalid-id``.
    """

    def __init__(self, code: str, message: str, line: int, column: int):
        self.code = code
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {code}: {message}")
