"""Exception hierarchy for sigma-spectra.

Verdict-like outcomes (a monochromatic edge, a NO answer, an exhausted budget)
are data and travel in models. Exceptions are reserved for inputs that cannot be
processed and for broken hypotheses of a construction or re-colouring rule.
"""

from typing import List, Optional, Sequence, Tuple


class SigmaError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(SigmaError, ValueError):
    """Input failed one or more named conditions."""

    def __init__(self, message: str, violations: Optional[Sequence[Tuple[str, str]]] = None):
        super().__init__(message)
        self.violations: List[Tuple[str, str]] = list(violations or [])

    @property
    def conditions(self) -> List[str]:
        """Names of the violated conditions."""
        return [name for name, _ in self.violations]


class PartitionError(ValidationError):
    """Raw parts do not form an integer partition."""


class InstanceValidationError(ValidationError):
    """(n, r, q, sigma) does not describe a sigma-hypergraph."""


class BoundsError(ValidationError):
    """Colour bounds are inconsistent with the instance."""


class ColouringError(ValidationError):
    """Colouring has the wrong shape or is not surjective onto 1..k."""


class EdgeSizeError(ValidationError):
    """A vertex subset handed to edge_profile does not have r vertices."""


class InputFormatError(SigmaError):
    """Malformed JSON or flag values at the command-line boundary."""


class EdgeCapExceeded(SigmaError):
    """Explicit enumeration refused because the instance has too many edges."""

    def __init__(self, edge_count: int, cap: int):
        super().__init__(
            f"instance has {edge_count} edges, above the explicit enumeration cap of {cap}; "
            "use the profile checker instead"
        )
        self.edge_count = edge_count
        self.cap = cap


class PreconditionError(SigmaError):
    """A construction or re-colouring rule was asked to run outside its hypotheses."""

    def __init__(self, message: str, condition: str = "", offending: Optional[Sequence[int]] = None):
        super().__init__(message)
        self.condition = condition
        self.offending: List[int] = list(offending or [])


class ConstructionError(SigmaError):
    """A construction produced a colouring that fails its own post-condition."""


class SearchInvariantError(SigmaError):
    """The canonical search or a walk produced a colouring that does not check."""
