"""Exception hierarchy shared across the package."""

from __future__ import annotations


class ProofError(Exception):
    """Base class for every error this package raises deliberately."""


class ParseError(ProofError):
    """Rejected concrete syntax. ``offset`` is the 1-based character position."""

    def __init__(self, offset: int, message: str):
        super().__init__(f"parse error at offset {offset}: {message}")
        self.offset = offset
        self.reason = message


class InvalidPath(ProofError):
    """A path does not address a node of the formula."""


class CategoryMismatch(ProofError):
    """Attempt to put a formula where a term belongs, or vice versa."""


class UnknownRule(ProofError):
    """No equivalence rule with the requested id."""


class RuleNotApplicable(ProofError):
    """The rule's source side does not match the addressed subformula."""


class NothingToUndo(ProofError):
    pass


class NothingToRedo(ProofError):
    pass


class InvalidTheorem(ProofError):
    """Theorem entry rejected (contradiction constant in goal or givens)."""


class UnknownGoal(ProofError):
    """Goal id does not address an open goal of the proof."""


class UnknownGiven(ProofError):
    """No given with the requested label at the target goal."""


class NotApplicable(ProofError):
    """The step's shape does not fit the goal or given it targets."""


class FreshnessViolation(ProofError):
    """A name that must be new is already in use."""


class ArgumentMissing(ProofError):
    """The step needs an argument that was not supplied."""


class UnboundVariable(ProofError):
    """Evaluation met a variable the assignment does not cover."""


class MalformedXml(ProofError):
    """Input is not well-formed XML. ``line`` is where parsing gave up."""

    def __init__(self, line: int, message: str):
        super().__init__(f"malformed XML at line {line}: {message}")
        self.line = line


class SchemaViolation(ProofError):
    """Well-formed XML that is not a valid proof session document."""


class ReplayFailure(ProofError):
    """A logged step no longer applies. ``step_index`` is 0-based."""

    def __init__(self, step_index: int, cause: ProofError):
        super().__init__(f"replay failed at step {step_index}: {cause}")
        self.step_index = step_index
        self.cause = cause


class VersionConflict(ProofError):
    """A mutating request carried a stale expected_version."""

    def __init__(self, expected: int, actual: int):
        super().__init__(
            f"expected version {expected} but the session is at {actual}")
        self.expected = expected
        self.actual = actual
