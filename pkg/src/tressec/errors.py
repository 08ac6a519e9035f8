"""Exception hierarchy shared by all modules."""


class TreeSetError(Exception):
    """Base class for every error raised by this package."""


class PreconditionViolated(TreeSetError):
    pass


class NotAPoset(TreeSetError):
    pass


class InvolutionNotOrderReversing(TreeSetError):
    pass


class BadInvolution(TreeSetError):
    pass


class NotEssential(PreconditionViolated):
    pass


class NotRegular(PreconditionViolated):
    pass


class NotNested(PreconditionViolated):
    pass


class NotATreeSet(PreconditionViolated):
    pass


class NotAnOrderTree(PreconditionViolated):
    pass


class InvalidTree(PreconditionViolated):
    pass


class InvalidFamily(PreconditionViolated):
    pass


class InvalidDecomposition(PreconditionViolated):
    pass


class NotSeparationsOfG(PreconditionViolated):
    pass


class DegenerateElement(PreconditionViolated):
    pass


class NotOverF(PreconditionViolated):
    pass


class UnknownNode(TreeSetError, KeyError):
    pass


class UnknownElement(TreeSetError, KeyError):
    pass


class TooLarge(TreeSetError):
    pass


class Unextendable(TreeSetError):
    pass


class NotUnique(TreeSetError):
    pass


class NotFound(TreeSetError):
    pass


class Mismatch(TreeSetError):
    """A computed structure disagrees with what a proven lemma guarantees."""


class ViolationFound(TreeSetError):
    """A checked lemma failed on a concrete instance."""


class PremiseFailed(TreeSetError):
    """A recovery premise does not hold; ``which`` names the failing premise."""

    def __init__(self, which, detail=""):
        self.which = which
        self.detail = detail
        super().__init__(f"premise {which!r} failed: {detail}" if detail else f"premise {which!r} failed")


class MissingDirectedLabel(TreeSetError):
    pass


class NotInjectiveEmbedding(TreeSetError):
    pass


class UnsupportedConversion(TreeSetError):
    pass
