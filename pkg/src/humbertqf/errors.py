"""Shared exception types with stable tags used by the CLI exit-code mapping."""


class SearchExhaustedError(RuntimeError):
    """A bounded deterministic search ran out of budget (tag: prime-search-exhausted)."""

    def __init__(self, tag: str, budget: int, detail: str = ""):
        self.tag = tag
        self.budget = budget
        msg = f"{tag}: search budget {budget} exhausted"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class NotGeometricError(ValueError):
    """Input form is not a geometric form (tag: not-geometric)."""

    def __init__(self, detail: str = ""):
        msg = "not-geometric"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
