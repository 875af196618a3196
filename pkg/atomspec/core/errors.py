"""Error types.

Every error raised on purpose by the package derives from ``AtomSpecError`` and
carries a short ``code`` plus a ``detail`` mapping that ends up verbatim in the
error section of a report.
"""

from typing import Any, Dict, Optional, Sequence


class AtomSpecError(Exception):
    """Base class for domain errors."""

    code = "error"

    def __init__(self, message: str, detail: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.detail: Dict[str, Any] = detail or {}


class RingAxiomError(AtomSpecError):
    """A ring table violates an axiom."""

    code = "ring_axiom"

    def __init__(self, axiom: str, witness: Sequence[int] = ()):
        witness = tuple(int(w) for w in witness)
        if witness:
            message = f"{axiom} fails at {witness}"
        else:
            message = axiom
        super().__init__(message, {"axiom": axiom, "witness": list(witness)})
        self.axiom = axiom
        self.witness = witness


class ModuleAxiomError(RingAxiomError):
    """A module table violates an axiom."""

    code = "module_axiom"


class RingFormatError(AtomSpecError):
    """A ring or module document cannot be parsed."""

    code = "format"

    def __init__(self, message: str, location: Optional[str] = None):
        super().__init__(message, {"location": location} if location else {})
        self.location = location


class NotSubmoduleError(AtomSpecError):
    """An element set is not a submodule of its parent."""

    code = "not_submodule"

    def __init__(self, reason: str, witness: Sequence[int] = ()):
        witness = tuple(int(w) for w in witness)
        super().__init__(reason, {"reason": reason, "witness": list(witness)})
        self.reason = reason
        self.witness = witness


class CapExceededError(AtomSpecError):
    """A configured size limit was hit."""

    code = "cap_exceeded"

    def __init__(self, cap: str, limit: int, reached: int):
        super().__init__(
            f"{cap} cap exceeded: reached {reached} with limit {limit}",
            {"cap": cap, "limit": limit, "reached": reached},
        )
        self.cap = cap
        self.limit = limit
        self.reached = reached


class PreconditionError(AtomSpecError):
    """An operation was called outside its domain."""

    code = "precondition"


class ModuleSpecError(AtomSpecError):
    """A module spec string is malformed."""

    code = "module_spec"


class InvariantViolation(AtomSpecError):
    """A guaranteed structural property failed to hold."""

    code = "invariant"
