from __future__ import annotations


class HybridMomentsError(Exception):
    """Base class for errors raised by hybridmoments."""


class ConfigError(HybridMomentsError, ValueError):
    """Invalid run configuration, preset or user-supplied name."""


class KeyFormatError(ConfigError):
    """A moment key or symbol string could not be parsed."""

    def __init__(self, message: str, text: str, position: int) -> None:
        super().__init__(f"{message} at position {position} in '{text}'")
        self.text = text
        self.position = position


class MissingSymbolError(HybridMomentsError, KeyError):
    """A polynomial references a symbol that has no assigned value."""

    def __init__(self, symbol: str) -> None:
        super().__init__(symbol)
        self.symbol = symbol

    def __str__(self) -> str:
        return f"No value assigned to symbol '{self.symbol}'"


class CostGuardError(HybridMomentsError, ValueError):
    """A brute-force computation was asked for more than it is allowed to do."""


class IntegrationError(HybridMomentsError, RuntimeError):
    """Numeric integration failed (nonfinite state or step-size underflow)."""


class VerificationError(HybridMomentsError, RuntimeError):
    """An exact computation produced a result that violates a structural rule."""
