"""Exception types raised across the package."""


class CauchyScopeError(Exception):
    """Base class for all package errors."""


class PreconditionError(CauchyScopeError, ValueError):
    """An operation was called outside its documented domain."""


class InputError(CauchyScopeError, ValueError):
    """Rejected input data (non-finite samples, bad generator output)."""


class ParseError(InputError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DomainError(CauchyScopeError, ValueError):
    """Evaluation point too close to the boundary or to a pole."""


class WindingUndefinedError(CauchyScopeError):
    """The sampled function (nearly) vanishes on the grid."""

    def __init__(self, index, modulus, tolerance):
        self.index = index
        self.modulus = modulus
        self.tolerance = tolerance
        super().__init__(
            f"winding undefined: |value| = {modulus:.3e} < {tolerance:.3e} at grid index {index}"
        )


class ResolutionError(CauchyScopeError):
    """Grid too coarse to resolve the argument of a function."""


class ConditioningError(CauchyScopeError, ValueError):
    """A pole or zero sits too close to the unit circle for the requested computation."""


class RootClassificationError(CauchyScopeError):
    def __init__(self, message, root):
        self.root = root
        super().__init__(f"{message} (root {root!r})")


class SearchError(CauchyScopeError):
    """A bounded search (e.g. for a shift constant) ran out of candidates."""

    def __init__(self, message, diagnostics=None):
        self.diagnostics = dict(diagnostics or {})
        super().__init__(message)


class CompletionError(CauchyScopeError):
    def __init__(self, message, diagnostics=None):
        self.diagnostics = dict(diagnostics or {})
        super().__init__(message)
