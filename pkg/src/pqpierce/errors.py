"""Exception hierarchy shared by every module."""


class PQPierceError(Exception):
    """Base class for all package errors."""


class PreconditionError(PQPierceError, ValueError):
    """An operation was called outside its documented domain."""


class DomainError(PreconditionError):
    """A numeric argument lies outside the admissible range."""


class GenerationError(PQPierceError):
    """An instance generator exhausted its retry budget."""


class InvariantViolation(PQPierceError):
    """A guarantee that the underlying theory promises did not hold.

    ``lemma`` names the statement whose failure was observed, so that the
    failure can be reported (and reproduced) as a counterexample candidate.
    """

    def __init__(self, lemma: str, message: str = ""):
        self.lemma = lemma
        self.message = message
        super().__init__(f"[{lemma}] {message}" if message else f"[{lemma}]")


class ConstructionIncomplete(PQPierceError):
    """The constructive pipeline needed an oracle fallback that was disallowed."""


class OrderAmbiguous(InvariantViolation):
    """Witness traces on ``Z`` overlap, so no left-to-right order exists."""

    def __init__(self, message: str):
        super().__init__("witness-order", message)
