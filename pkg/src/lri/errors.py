"""Exception types shared across the package.

Every error the library raises deliberately derives from LriError, so callers
(notably the command line front end) can separate expected failures from bugs.
"""

from __future__ import annotations


class LriError(Exception):
    """Base class for all errors raised by this package on purpose."""


class FormulaSyntaxError(LriError):
    """Input text does not match the formula grammar.

    Carries the character offset of the failure and a description of what
    would have been acceptable there.
    """

    def __init__(self, message: str, position: int, expected: str = "") -> None:
        detail = f"{message} at position {position}"
        if expected:
            detail += f" (expected {expected})"
        super().__init__(detail)
        self.core = message
        self.position = position
        self.expected = expected


class UnknownSymbol(LriError):
    """A predicate or constant is not declared in a closed signature."""


class ArityMismatch(LriError):
    """A predicate is applied to the wrong number of arguments."""


class EmptyDomain(LriError):
    """A schema with variables cannot be grounded: no constants declared."""


class ResourceLimit(LriError):
    """The satisfiability search exceeded its decision budget."""


class InconsistentAxioms(LriError):
    """The axiom set of a domain of rules is itself unsatisfiable."""


class DuplicateHypothesis(LriError):
    """The same formula appears twice in a hypothesis list."""


class AxiomHypothesisOverlap(LriError):
    """A formula appears both as an axiom and as a hypothesis."""


class MixedDomains(LriError):
    """An operation combined justifications from different domains of rules."""


class IncompleteRenaming(LriError):
    """A renaming map does not cover every symbol it is applied to."""
