"""Truncated formal power series over arbitrary-precision rationals.

A :class:`Series` stores the plain coefficients of ``w**0 .. w**T`` for an
explicit truncation order ``T``.  Multiplication is an ordinary Cauchy
product; factorial weights enter only at EGF coefficient extraction
(:meth:`Series.egf_coeff`).  Binary operations on series of different orders
truncate to the shorter prefix, which stays exact.  No floating point is
used anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .exceptions import (
    IndexOutOfOrderError,
    NonzeroLowCoefficientError,
    ZeroConstantTermError,
)

#: The scalar type of the exact core: always stored reduced, denominator > 0.
Rational = Fraction

DEFAULT_ORDER = 30


def as_rational(value: Rational | int | str) -> Fraction:
    """Coerce ints, Fractions and strings like ``"3/7"`` to an exact rational.

    Floats are rejected: they would silently smuggle rounding into the exact
    core.
    """
    if isinstance(value, float):
        raise TypeError(f"exact arithmetic does not accept floats: {value!r}")
    return Fraction(value)


def format_rational(value: Fraction) -> str:
    """Render as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    return str(value)


@dataclass(frozen=True)
class Series:
    """Truncated power series; ``coeffs[k]`` multiplies ``w**k``."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise ValueError("a series needs at least its constant coefficient")
        object.__setattr__(self, "coeffs", tuple(as_rational(c) for c in self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, n: int) -> Fraction:
        """Plain coefficient of ``w**n``."""
        if not 0 <= n <= self.order:
            raise IndexOutOfOrderError(f"coefficient {n} beyond order {self.order}")
        return self.coeffs[n]

    def egf_coeff(self, n: int) -> Fraction:
        """EGF-normalized coefficient ``n! * coeffs[n]``."""
        return factorial(n) * self.coeff(n)

    def truncate(self, order: int) -> "Series":
        if not 0 <= order <= self.order:
            raise IndexOutOfOrderError(f"cannot truncate order-{self.order} series to {order}")
        if order == self.order:
            return self
        return Series(self.coeffs[: order + 1])

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: "Series | Rational | int") -> "Series":
        if isinstance(other, Series):
            n = min(self.order, other.order)
            return Series(tuple(self.coeffs[k] + other.coeffs[k] for k in range(n + 1)))
        c = as_rational(other)
        return Series((self.coeffs[0] + c,) + self.coeffs[1:])

    __radd__ = __add__

    def __neg__(self) -> "Series":
        return Series(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Series | Rational | int") -> "Series":
        return self + (-other if isinstance(other, Series) else -as_rational(other))

    def __rsub__(self, other: "Rational | int") -> "Series":
        return (-self) + as_rational(other)

    def __mul__(self, other: "Series | Rational | int") -> "Series":
        if isinstance(other, Series):
            n = min(self.order, other.order)
            a, b = self.coeffs, other.coeffs
            return Series(
                tuple(sum((a[i] * b[k - i] for i in range(k + 1)), Fraction(0)) for k in range(n + 1))
            )
        c = as_rational(other)
        return Series(tuple(c * v for v in self.coeffs))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Series":
        if exponent < 0:
            raise ValueError("negative powers: take recip() first")
        result = one(self.order)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def recip(self) -> "Series":
        """Multiplicative inverse up to the truncation order.

        Requires a nonzero constant term; the result ``r`` satisfies
        ``self * r == one`` on the retained prefix.
        """
        a = self.coeffs
        if a[0] == 0:
            raise ZeroConstantTermError("series with zero constant term has no reciprocal")
        inv0 = 1 / a[0]
        out = [inv0]
        for k in range(1, self.order + 1):
            out.append(-inv0 * sum((a[i] * out[k - i] for i in range(1, k + 1)), Fraction(0)))
        return Series(tuple(out))

    def div_w_power(self, k: int) -> "Series":
        """Divide by ``w**k``; the first ``k`` coefficients must vanish."""
        if k == 0:
            return self
        if not 0 < k <= self.order:
            raise IndexOutOfOrderError(f"cannot shift order-{self.order} series down by {k}")
        if any(self.coeffs[:k]):
            raise NonzeroLowCoefficientError(f"coefficients below w**{k} are not all zero")
        return Series(self.coeffs[k:])

    # -- inspection ----------------------------------------------------------

    def is_even(self) -> bool:
        """True when every odd-index coefficient vanishes."""
        return not any(self.coeffs[1::2])

    def to_strings(self) -> list[str]:
        """Coefficients as rational strings, lowest order first (JSON-ready)."""
        return [format_rational(c) for c in self.coeffs]


def zero(order: int = DEFAULT_ORDER) -> Series:
    return Series((Fraction(0),) * (order + 1))


def one(order: int = DEFAULT_ORDER) -> Series:
    return Series((Fraction(1),) + (Fraction(0),) * order)


def from_coeffs(values, order: int | None = None) -> Series:
    """Build a series from the leading coefficients, zero-padded to ``order``."""
    coeffs = [as_rational(v) for v in values]
    if order is not None:
        if order + 1 < len(coeffs):
            raise ValueError("more coefficients supplied than the requested order allows")
        coeffs += [Fraction(0)] * (order + 1 - len(coeffs))
    return Series(tuple(coeffs))


def exp_series(c: Rational | int | str, order: int = DEFAULT_ORDER) -> Series:
    """``exp(c*w)`` truncated at ``order``."""
    c = as_rational(c)
    coeffs = [Fraction(1)]
    for n in range(1, order + 1):
        coeffs.append(coeffs[-1] * c / n)
    return Series(tuple(coeffs))


def cosh_series(c: Rational | int | str, order: int = DEFAULT_ORDER) -> Series:
    """``cosh(c*w)``: coefficient ``c**(2k)/(2k)!`` at index ``2k``."""
    c = as_rational(c)
    coeffs = [Fraction(0)] * (order + 1)
    term = Fraction(1)
    coeffs[0] = term
    for k in range(2, order + 1, 2):
        term = term * c * c / ((k - 1) * k)
        coeffs[k] = term
    return Series(tuple(coeffs))


def sinh_over_w_series(c: Rational | int | str, order: int = DEFAULT_ORDER) -> Series:
    """``sinh(c*w)/w``: coefficient ``c**(2k+1)/(2k+1)!`` at index ``2k``."""
    c = as_rational(c)
    coeffs = [Fraction(0)] * (order + 1)
    term = c
    coeffs[0] = term
    for k in range(2, order + 1, 2):
        term = term * c * c / (k * (k + 1))
        coeffs[k] = term
    return Series(tuple(coeffs))


def exprel_series(c: Rational | int | str, order: int = DEFAULT_ORDER) -> Series:
    """``(exp(c*w) - 1)/(c*w)``: coefficient ``c**n/(n+1)!``; equals 1 at c=0."""
    c = as_rational(c)
    coeffs = [Fraction(1)]
    for n in range(1, order + 1):
        coeffs.append(coeffs[-1] * c / (n + 1))
    return Series(tuple(coeffs))


@dataclass(frozen=True)
class VerificationReport:
    """Per-coefficient comparison of two series.

    ``equal`` holds exactly when every entry of ``diffs`` is zero;
    ``first_mismatch`` is the lowest differing coefficient index, if any.
    """

    equal: bool
    first_mismatch: int | None
    diffs: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        return len(self.diffs) - 1


def compare_series(lhs: Series, rhs: Series) -> VerificationReport:
    """Compare two series coefficient-by-coefficient on the common prefix."""
    n = min(lhs.order, rhs.order)
    diffs = tuple(lhs.coeffs[k] - rhs.coeffs[k] for k in range(n + 1))
    first = next((k for k, d in enumerate(diffs) if d != 0), None)
    return VerificationReport(equal=first is None, first_mismatch=first, diffs=diffs)
