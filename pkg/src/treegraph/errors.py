"""Exception hierarchy shared across the package."""


class TreegraphError(Exception):
    """Base class for all package errors."""


class InputError(TreegraphError):
    """Invalid user input: bad coordinates, malformed files, bad indices."""


class CapExceeded(TreegraphError):
    """A configured resource cap (instance size, SST count, ...) was hit."""


class MalformedGraphError(TreegraphError):
    """The input graph is not (isomorphic to) a valid tree graph."""


class TooFewPoints(TreegraphError):
    """The operation needs a larger instance (blind reconstruction needs n >= 5)."""


class AmbiguousClique(TreegraphError):
    """U/I classification is not decidable by the implemented tests (n = 4)."""


class VerificationError(TreegraphError):
    """A ground-truth comparison or structural invariant failed."""
