"""Exception hierarchy shared by every module."""


class RingError(Exception):
    """Base class for all errors raised by ringcover."""


class InvalidPresentation(RingError):
    """A presentation that does not define a ring."""


class IllDefined(InvalidPresentation):
    """A structure constant violates the additive order condition."""

    def __init__(self, i: int, j: int, t: int, message: str):
        super().__init__(message)
        self.index = (i, j, t)


class NonAssociative(InvalidPresentation):
    """Multiplication fails associativity on a generator triple."""

    def __init__(self, i: int, j: int, t: int, message: str):
        super().__init__(message)
        self.triple = (i, j, t)


class MalformedPresentation(InvalidPresentation):
    """Shape or product data has the wrong form (bad lengths, residues out of range)."""


class TooLarge(RingError):
    """The element count exceeds the configured limit."""


class SpaceTooLarge(RingError):
    """The census candidate space is beyond the exhaustive bound."""

    def __init__(self, message: str, candidates: int):
        super().__init__(message)
        self.candidates = candidates


class NotPrime(RingError):
    pass


class NotAnIdeal(RingError):
    pass


class NotASubgroup(RingError):
    pass
