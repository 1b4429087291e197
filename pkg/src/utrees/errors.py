"""Exception types shared across the package.

The CLI maps these onto distinct exit codes, so raising the right class
matters: bad input (2), blown resource bound (3), internal inconsistency (4).
"""


class TreeInputError(ValueError):
    """Malformed or out-of-domain input (bad tree, bad expression, bad flag)."""


class ResourceBoundError(RuntimeError):
    """A documented size cap was exceeded (enumeration would not finish)."""


class MalformedEmbeddingError(ValueError):
    """An embedding does not satisfy the decoder's structural invariants."""


class ReconstructionError(RuntimeError):
    """A shape census could not be realized by the descent procedure."""


class MissingTableEntryError(KeyError):
    """A containment table lookup was requested for an entry never built."""


class InternalInconsistencyError(RuntimeError):
    """Two routes that must agree did not; always a bug, never bad input."""
