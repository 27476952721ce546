class DomainError(ValueError):
    """Invalid input for a mathematical operation."""

    code = "domain"

    def __init__(self, message, **context):
        super().__init__(message)
        self.context = context


class IndeterminateError(DomainError):
    """A verdict would depend on terms beyond the available precision."""

    code = "indeterminate"


class HypothesisError(DomainError):
    """The residue characteristic violates a hypothesis of the construction."""

    code = "hypothesis"


class CapExceeded(DomainError):
    """Group enumeration would exceed the requested element bound."""

    code = "cap-exceeded"
