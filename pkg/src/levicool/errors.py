"""Exception types shared across the toolkit."""

from __future__ import annotations


class ConfigError(ValueError):
    """A configuration failed validation; `violations` lists every problem."""

    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class SingularConfigurationError(ValueError):
    """The requested point sits on a singularity of the model formulas."""


class InvalidGeometryError(ValueError):
    """A geometric input (radius, waist, length) is degenerate."""


class InfeasibleError(RuntimeError):
    """No point satisfying the requested constraints exists in the search box."""

    def __init__(self, message: str, violated=()):
        super().__init__(message)
        self.violated = tuple(violated)
