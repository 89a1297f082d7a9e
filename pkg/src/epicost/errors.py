"""Exception types shared across the package.

The CLI maps these onto its exit-code contract: DomainError/ConfigError -> 1,
NumericalFailure -> 2, InvariantViolation -> 3.
"""


class DomainError(ValueError):
    """An input violates a documented precondition or type invariant."""


class KinkAmbiguityError(DomainError):
    """Derivative requested exactly at a kink without choosing a side."""


class ConfigError(ValueError):
    """A scenario config failed to parse or validate.

    Carries one diagnostic string per violation, each prefixed with the
    offending field path.
    """

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics))


class NumericalFailure(RuntimeError):
    """A computation produced non-finite values or ran away (e.g. cases > 1e12)."""


class InvariantViolation(RuntimeError):
    """A runtime self-check failed (result violates a documented invariant)."""
