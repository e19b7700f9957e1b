"""Exception hierarchy shared by every axiomlab module."""


class AxiomlabError(Exception):
    """Base class for all library errors."""


class EnumerationCapError(AxiomlabError):
    """An enumeration would exceed the configured size cap."""

    def __init__(self, what, size, cap):
        super().__init__(f"{what}: {size} items exceeds enumeration cap {cap}")
        self.size = size
        self.cap = cap


class UnknownAlternativeError(AxiomlabError, KeyError):
    pass


class NotBijectiveError(AxiomlabError, ValueError):
    pass


class VoterError(AxiomlabError, ValueError):
    """Duplicate voter ids, removal of the last voter, bad ids."""


class DomainError(AxiomlabError, ValueError):
    """A preference or profile lies outside the domain a rule is defined on."""


class OutOfBoundsError(AxiomlabError, LookupError):
    """A bounded (table) rule was evaluated outside the profiles it tabulates."""


class PreconditionError(AxiomlabError):
    """A verification precondition failed; ``result`` holds the failing check."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class ConstructionFailed(AxiomlabError):
    """A proof construction did not produce the violation it must produce."""


class BudgetExceeded(AxiomlabError):
    """A search ran past its wall-clock budget."""
