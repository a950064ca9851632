"""Exception hierarchy shared by the library and the command line."""


class VawError(Exception):
    """Base class for every error raised by this package."""


class GraphParseError(VawError, ValueError):
    pass


class WordParseError(VawError, ValueError):
    pass


class ContextMismatch(VawError, ValueError):
    """Operands live in different number fields or different graphs."""


class NotSpherical(VawError):
    """An operation needs a finite Coxeter group."""


class CapExceeded(VawError):
    """An enumeration grew past its configured bound."""

    def __init__(self, what, cap):
        super().__init__(f"{what}: more than {cap} elements (group infinite or too large)")
        self.cap = cap


class MixedSignRoot(VawError):
    """A vector with coordinates of both signs was treated as a root."""


class NotInKernel(VawError):
    """The word does not map to the identity under the kernel projection."""


class UndeterminedLabel(VawError):
    """A derived Coxeter label could not be decided within the search depth."""

    def __init__(self, beta, gamma, depth):
        super().__init__(f"label of {beta} and {gamma} undetermined at depth {depth}")
        self.beta = beta
        self.gamma = gamma
        self.depth = depth


class UnsupportedComponent(VawError):
    pass
