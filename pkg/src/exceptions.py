"""Error types raised by the determinization library."""

from __future__ import annotations


class AutomatonError(ValueError):
    """Base class for invalid automata, words and files."""


class AutomatonFormatError(AutomatonError):
    """A text-format automaton could not be parsed."""

    def __init__(self, line: int, message: str):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}")


class InvalidAutomatonError(AutomatonError):
    """An operation was given an automaton outside its precondition."""

    def __init__(self, message: str, violations: list[str] | None = None):
        self.violations = violations or []
        if self.violations:
            message = f"{message}: {'; '.join(self.violations)}"
        super().__init__(message)


class ExplorationLimitError(RuntimeError):
    """Determinization reached more states than the configured cap."""

    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"exploration cap of {cap} states exceeded")
