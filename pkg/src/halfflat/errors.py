"""Exception types shared across the package."""


class HalfFlatError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatchError(HalfFlatError):
    """Operands live on spaces of different dimension or degree."""


class DegreeError(HalfFlatError):
    """A form has the wrong degree for the requested operation."""


class SyntaxPosError(HalfFlatError):
    """Syntax error in a textual input, with the offending position."""

    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} (at position {pos})")


class NotationError(SyntaxPosError):
    """Invalid structure-constant notation string."""


class FormSyntaxError(SyntaxPosError):
    """Invalid form expression string."""


class JacobiError(HalfFlatError):
    """The candidate differential does not square to zero."""


class NotSolvableError(HalfFlatError):
    """Derived series does not terminate; derived length undefined."""


class NotSimpleError(HalfFlatError):
    """A two-form expected to be decomposable is not."""


class IncoherentSplittingError(HalfFlatError):
    """The splitting does not satisfy the coherence condition."""


class NotUnimodularError(HalfFlatError):
    """An operation licensed only for unimodular algebras was called."""


class DerivedLengthError(HalfFlatError):
    """Derived length exceeds what the canonical splitting permits."""


class DegenerateFrameError(HalfFlatError):
    """The six given one-forms do not form a basis."""


class CertificateRefused(HalfFlatError):
    """A non-existence certificate failed one of its clauses."""

    def __init__(self, clause: str, detail: str = ""):
        self.clause = clause
        msg = f"certificate refused at clause {clause}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class UndecidedError(HalfFlatError):
    """No sound verdict is available for this input."""
