"""Exception types shared across the package."""


class GraphError(ValueError):
    """Malformed graph document or a query about a vertex that does not exist."""


class WitnessError(ValueError):
    """A path witness does not re-validate against its graph."""


class CnfError(ValueError):
    """Unparseable DIMACS text or a formula outside 3-Occurrence 3-SAT."""


class GuardError(ValueError):
    """A computation was refused because an input exceeds a configured guard."""

    def __init__(self, guard: str, message: str) -> None:
        super().__init__(message)
        self.guard = guard
