"""Shared error types.

Every failure mode that callers are expected to catch gets its own class so
that reports can name it; plain ValueError is reserved for programming errors
(mismatched p-adic contexts, malformed constructor input).
"""

from __future__ import annotations


class QCongruenceError(Exception):
    """Base class for all library errors."""


class NotPIntegral(QCongruenceError):
    """A rational with p in its denominator was used where a p-adic integer is required."""


class NotAUnit(QCongruenceError):
    """Inversion was attempted on a non-unit residue."""


class InsufficientPrecision(QCongruenceError):
    """A p-adic comparison was requested beyond the precision carried by an operand."""


class PrecisionBudgetExceeded(QCongruenceError):
    """A Gamma_p evaluation would need a modulus p**N above the configured budget."""


class DivisionByZeroPoly(QCongruenceError):
    """Polynomial or rational-function division by zero."""


class ModuliNotCoprime(QCongruenceError):
    """CRT was attempted on moduli with a common factor."""


class DenominatorNotUnit(QCongruenceError):
    """A denominator shares a factor with the modulus and cannot be cancelled."""


class NegativeLength(QCongruenceError):
    """A Pochhammer length or truncation order evaluated to a negative integer."""


class OutOfRange(QCongruenceError):
    """An index is outside its valid range (e.g. q-binomial with s > t)."""


class ZeroDenominatorFactor(QCongruenceError):
    """A denominator Pochhammer factor is identically zero (k outside the valid range)."""


class NonTerminating(QCongruenceError):
    """An identity check was requested for parameters where the series does not terminate."""


class DegenerateParameters(QCongruenceError):
    """Identity or statement parameters that collapse a required denominator."""


class SpecSyntaxError(QCongruenceError):
    """Expression or spec-file syntax error, with position information."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


class UnboundSymbol(QCongruenceError):
    """An expression refers to a symbol with no binding."""


class NonIntegerBound(QCongruenceError):
    """An exponent, bound or length expression did not evaluate to an exact integer."""


class DivisionByZero(QCongruenceError):
    """Expression evaluation divided by an expression that is identically zero."""


class UnknownKind(QCongruenceError):
    """Unknown modulus kind or statement identifier."""


class SideConditionViolated(QCongruenceError):
    """Bindings do not satisfy any branch of the requested statement."""


class SamplingExhausted(QCongruenceError):
    """The parameter sampler could not satisfy its guards within the rejection limit."""
