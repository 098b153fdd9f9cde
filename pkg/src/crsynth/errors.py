"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or out-of-contract input (CLI exit code 2)."""


class NotAperiodicError(InputError):
    """The target monoid contains a non-trivial group.

    ``witness`` names an element ``x`` with ``x^n != x^(n+1)`` for ``n = |M|``.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class BudgetExceeded(RuntimeError):
    """A size limit was hit during synthesis (CLI exit code 3).

    ``path`` is the recursion path (e.g. ``"code.base"``) where the limit tripped.
    """

    def __init__(self, message, path=""):
        super().__init__(message)
        self.path = path
