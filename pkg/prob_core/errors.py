"""Исключения библиотеки.

Все ошибки наследуются от OrdstatError; ошибки аргументов дополнительно
наследуются от ValueError, чтобы вызывающий код с ``except ValueError``
продолжал работать.
"""


class OrdstatError(Exception):
    """Base class for every error raised by the library."""


class ConfigurationError(OrdstatError, ValueError):
    """Invalid model, integrator, guard or command configuration."""


class DomainError(OrdstatError, ValueError):
    """Argument outside the mathematical domain of a function."""


class ArgumentError(OrdstatError, ValueError):
    """Shape or length mismatch, or unsorted input where sorted is required."""


class NumericalError(OrdstatError, ArithmeticError):
    """A computation produced a non-finite result."""


__all__ = [
    "OrdstatError",
    "ConfigurationError",
    "DomainError",
    "ArgumentError",
    "NumericalError",
]
