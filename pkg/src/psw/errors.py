"""Shared error types, mapped to CLI exit codes in psw.cli."""

from __future__ import annotations

__all__ = ["InputError", "HypothesisViolation"]


class InputError(ValueError):
    """Malformed or out-of-contract input (bad file, bad facet list, bad class spec)."""


class HypothesisViolation(Exception):
    """A theorem was invoked on a complex that fails one of its hypotheses.

    ``hypothesis`` names the failed hypothesis (for example "orientable",
    "dimension >= 4", "closed pseudomanifold") so callers and the CLI can
    report exactly which precondition broke instead of a generic error.
    """

    def __init__(self, hypothesis: str, detail: str = ""):
        self.hypothesis = hypothesis
        self.detail = detail
        msg = f"hypothesis violated: {hypothesis}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
