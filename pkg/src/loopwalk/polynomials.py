"""Bernoulli and Euler polynomials of arbitrary order, evaluated exactly.

Values come from one code path: coefficient extraction on the defining
exponential generating functions ``(w/(e^w-1))**p * e^(x*w)`` and
``(2/(e^w+1))**p * e^(x*w)`` built in the series core.

Number conventions differ between sources, so no bare "bernoulli_number"
exists here: :func:`bernoulli_number_at` asks explicitly for the endpoint,
since ``B_1(1) = 1/2`` while ``B_1(0) = -1/2``.
"""

from __future__ import annotations

from fractions import Fraction

from .series import Rational, as_rational, exp_series, exprel_series


def _check_np(n: int, p: int) -> None:
    if n < 0:
        raise ValueError(f"degree must be nonnegative, got {n}")
    if p < 1:
        raise ValueError(f"order must be at least 1, got {p}")


def bernoulli_poly(n: int, p: int = 1, x: Rational | int | str = 0) -> Fraction:
    """Order-``p`` Bernoulli polynomial of degree ``n`` at ``x``."""
    _check_np(n, p)
    egf = exprel_series(1, n).recip() ** p * exp_series(as_rational(x), n)
    return egf.egf_coeff(n)


def euler_poly(n: int, p: int = 1, x: Rational | int | str = 0) -> Fraction:
    """Order-``p`` Euler polynomial of degree ``n`` at ``x``."""
    _check_np(n, p)
    half_sum = (exp_series(1, n) + 1) * Fraction(1, 2)
    egf = half_sum.recip() ** p * exp_series(as_rational(x), n)
    return egf.egf_coeff(n)


def euler_number(n: int) -> Fraction:
    """Euler number ``2**n * E_n(1/2)``; zero for odd ``n``."""
    return 2**n * euler_poly(n, 1, Fraction(1, 2))


def bernoulli_number_at(n: int, x0: int) -> Fraction:
    """Bernoulli number under an explicit endpoint convention.

    ``x0 = 1`` gives the convention with ``B_1 = 1/2``; ``x0 = 0`` the one
    consistent with the umbral evaluation, ``B_1 = -1/2``.  They agree for
    every other ``n``.
    """
    if x0 not in (0, 1):
        raise ValueError("endpoint must be 0 or 1")
    return bernoulli_poly(n, 1, x0)
