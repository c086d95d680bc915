"""Equally spaced site identities.

With unit spacing every loop factor of the two continuous models collapses
to a polynomial in ``s = sech(w)``:  ``s**2/2`` for the first Brownian loop,
``s**2/4`` for every other one, and ``s**2/4`` for every Bessel loop.  The
geometric denominator of the loop decomposition then becomes ``1 - P(s)``
for a bracket polynomial ``P`` whose coefficients are the signed nonadjacent
subset counts.  This module

* builds those bracket polynomials from the enumeration counts,
* checks the resulting closed-form master identities exactly at the series
  level (these are decisive: the polynomial identities follow through the
  moment-symbol dictionary),
* verifies the five-site Bernoulli-difference generating function directly,
* and exposes the rearranged infinite sums as partial-sum convergence
  diagnostics with exact rational rows.  The diagnostics deliberately carry
  no pass/fail: the rearranged double sums converge only when grouped by
  ``k``, and individual terms need not decay.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterator, Sequence

from .exceptions import ContractionViolatedError
from .loops import count_nonadjacent, count_with_min_index
from .polynomials import bernoulli_poly, euler_poly
from .series import (
    DEFAULT_ORDER,
    Rational,
    Series,
    VerificationReport,
    as_rational,
    compare_series,
    cosh_series,
    exp_series,
    exprel_series,
    one,
    sinh_over_w_series,
)

#: A polynomial in ``s`` as (power, coefficient) pairs.
BracketPoly = list[tuple[int, Fraction]]


def sech_series(order: int = DEFAULT_ORDER) -> Series:
    return cosh_series(1, order).recip()


def _check_m(m: int) -> None:
    if m < 1:
        raise ValueError(f"need at least one loop, got m={m}")


def bm_bracket_poly(m: int) -> BracketPoly:
    """Geometric base for ``m`` unit-spaced Brownian loops, in ``s = sech w``.

    The first loop weighs ``s**2/2`` and the rest ``s**2/4``, so a
    nonadjacent subset of size ``j`` contributes against the count of
    subsets that do or do not contain index 1.
    """
    _check_m(m)
    poly: BracketPoly = []
    for j in range(1, m // 2 + 2):
        with_first = count_with_min_index(m, j, 1)
        without_first = count_nonadjacent(m - 1, j)
        coeff = (-1) ** (j + 1) * (
            Fraction(with_first, 2 ** (2 * j - 1)) + Fraction(without_first, 2 ** (2 * j))
        )
        if coeff:
            poly.append((2 * j, coeff))
    return poly


def bessel_bracket_poly(m: int) -> BracketPoly:
    """Geometric base for ``m`` unit-spaced Bessel loops: every loop is ``s**2/4``."""
    _check_m(m)
    poly: BracketPoly = []
    for j in range(1, m // 2 + 2):
        coeff = (-1) ** (j + 1) * Fraction(count_nonadjacent(m, j), 4**j)
        if coeff:
            poly.append((2 * j, coeff))
    return poly


def bracket_series(poly: BracketPoly, order: int = DEFAULT_ORDER) -> Series:
    """Evaluate a bracket polynomial at ``s = sech w`` as a series."""
    s = sech_series(order)
    powers: dict[int, Series] = {0: one(order)}

    def s_power(k: int) -> Series:
        if k not in powers:
            powers[k] = s_power(k - 1) * s
        return powers[k]

    total = Series((Fraction(0),) * (order + 1))
    for power, coeff in poly:
        total = total + s_power(power) * coeff
    return total


def bm_master_check(m: int, order: int = DEFAULT_ORDER) -> VerificationReport:
    """Exact check of ``2**m sech((m+1)w) == sech(w)**(m+1) / (1 - P_m(sech w))``."""
    _check_m(m)
    lhs = cosh_series(m + 1, order).recip() * 2**m
    base = bracket_series(bm_bracket_poly(m), order)
    rhs = sech_series(order) ** (m + 1) * (one(order) - base).recip()
    return compare_series(lhs, rhs)


def bessel_master_check(m: int, order: int = DEFAULT_ORDER) -> VerificationReport:
    """Exact check of the Bessel analogue:

    ``(m+2)w/sinh((m+2)w) ==
    ((m+2)w/sinh(2w)) * (sech(w)**m / 2**m) / (1 - Q_m(sech w))``.
    """
    _check_m(m)
    lhs = sinh_over_w_series(m + 2, order).recip() * (m + 2)
    base = bracket_series(bessel_bracket_poly(m), order)
    rhs = (
        sinh_over_w_series(2, order).recip()
        * (m + 2)
        * (sech_series(order) ** m * Fraction(1, 2**m))
        * (one(order) - base).recip()
    )
    return compare_series(lhs, rhs)


def bernoulli_diff_gf_check(x: Rational | int | str = 0, order: int = 20) -> VerificationReport:
    """Verify the five-site Bernoulli-difference generating function.

    Both sides of ``t (e^(2t/5) - 1)/(e^t - 1) * e^(tx/5)`` are built after
    dividing out the leading ``t``: the left directly from exponential
    series, the right from the geometric closed form of the three-loop
    Euler-side sum, and compared exactly.  The plain coefficient of ``t**n``
    equals ``(B_(n+1)((x+2)/5) - B_(n+1)(x/5)) / (n+1)!``.
    """
    x = as_rational(x)
    lhs = (
        exprel_series(Fraction(2, 5), order)
        * Fraction(2, 5)
        * exprel_series(1, order).recip()
        * exp_series(x / 5, order)
    )
    e1 = exp_series(Fraction(1, 5), order)
    e2 = exp_series(Fraction(2, 5), order)
    h = (e1 + 1).recip()
    h2 = h * h
    base = e1 * h2 * 3 - e2 * h2 * h2
    rhs = exp_series(x / 5, order) * (h2 * h) * (one(order) - base).recip()
    return compare_series(lhs, rhs)


@dataclass(frozen=True)
class PartialSumTable:
    """Cumulative partial sums of a rearranged identity, with its target.

    Row ``k`` holds the sum of all complete inner groups up to outer index
    ``k``.  Purely diagnostic: no convergence claim is attached.
    """

    target: Fraction
    partial_sums: tuple[Fraction, ...]

    @property
    def errors(self) -> tuple[Fraction, ...]:
        return tuple(abs(s - self.target) for s in self.partial_sums)


def _inner_tuples(length: int, total_cap: int) -> Iterator[tuple[int, ...]]:
    """All tuples of ``length`` nonnegative ints with sum <= total_cap."""
    if length == 0:
        yield ()
        return
    for head in range(total_cap + 1):
        for rest in _inner_tuples(length - 1, total_cap - head):
            yield (head,) + rest


def _multinomial(k: int, parts: Sequence[int]) -> int:
    rest = k - sum(parts)
    out = factorial(k) // factorial(rest)
    for p in parts:
        out //= factorial(p)
    return out


def _alt_sign(parts: Sequence[int]) -> int:
    # parity of n_1 + n_3 + n_5 + ... (odd positions, 1-based)
    return -1 if sum(parts[0::2]) % 2 else 1


def euler_identity_partial(
    m: int, n: int, x: Rational | int | str, cap: int, printed_order: bool = False
) -> PartialSumTable:
    """Partial sums of the Brownian-side Euler identity against ``E_n(x/(m+1))``.

    Inner sums are complete per outer index ``k``.  The Euler order of each
    term is ``2k + 2*sum(i*n_i) + m + 1``; ``printed_order`` switches to the
    ``+ m`` variant, whose residual the table then reports instead (the two
    variants differ and only the former matches the worked low-loop cases).
    """
    _check_m(m)
    x = as_rational(x)
    depth = (m + 1) // 2 - 1
    weights = [
        Fraction(comb(m - i - 1, i), 2 ** (2 * i + 1))
        + Fraction(comb(m - i - 1, i + 1), 2 ** (2 * i + 2))
        for i in range(1, depth + 1)
    ]
    shift = m if printed_order else m + 1
    scale = Fraction(1, (m + 1) ** n)
    total = Fraction(0)
    partials = []
    for k in range(cap + 1):
        term = Fraction(0)
        for parts in _inner_tuples(depth, k):
            coeff = Fraction(_multinomial(k, parts) * _alt_sign(parts))
            weight_sum = sum(parts)
            index_sum = sum((i + 1) * parts[i] for i in range(depth))
            coeff *= Fraction(4, m + 1) ** weight_sum
            for i in range(depth):
                coeff *= weights[i] ** parts[i]
            if coeff == 0:
                continue
            term += coeff * euler_poly(n, 2 * k + 2 * index_sum + shift, k + index_sum + x)
        total += Fraction(m + 1) ** k / 2 ** (2 * k + m) * term
        partials.append(scale * total)
    return PartialSumTable(
        target=euler_poly(n, 1, x / (m + 1)), partial_sums=tuple(partials)
    )


def bessel_identity_partial(
    m: int, n: int, x: Rational | int | str, cap: int
) -> PartialSumTable:
    """Partial sums of the Bessel-side identity against the Bernoulli difference
    ``B_(n+1)((2+x)/(m+2)) - B_(n+1)(x/(m+2))``."""
    _check_m(m)
    x = as_rational(x)
    depth = (m + 1) // 2 - 1
    binoms = [comb(m - i, i + 1) for i in range(1, depth + 1)]
    scale = Fraction(n + 1, (m + 2) ** n)
    total = Fraction(0)
    partials = []
    for k in range(cap + 1):
        term = Fraction(0)
        for parts in _inner_tuples(depth, k):
            coeff = Fraction(_multinomial(k, parts) * _alt_sign(parts))
            weight_sum = sum(parts)
            index_sum = sum((i + 1) * parts[i] for i in range(depth))
            for i in range(depth):
                coeff *= binoms[i] ** parts[i]
            coeff /= Fraction(4**index_sum) * Fraction(m) ** weight_sum
            if coeff == 0:
                continue
            term += coeff * euler_poly(n, 2 * k + 2 * index_sum + m, k + index_sum + x)
        total += Fraction(m) ** k / 2 ** (2 * k + m) * term
        partials.append(scale * total)
    target = bernoulli_poly(n + 1, 1, (2 + x) / (m + 2)) - bernoulli_poly(
        n + 1, 1, x / (m + 2)
    )
    return PartialSumTable(target=target, partial_sums=tuple(partials))


def geometric_tail_report(
    poly: BracketPoly, order: int = DEFAULT_ORDER, cap: int = 200
) -> tuple[Fraction, ...]:
    """Exact per-coefficient truncation error of the capped geometric sum.

    Returns ``sum(P**k for k <= cap) - 1/(1 - P)`` coefficient by
    coefficient, with ``P`` the bracket evaluated at ``sech w``.  Requires
    the contraction ``|P(0)| < 1``; the cap is explicit and nothing here
    claims convergence.
    """
    base = bracket_series(poly, order)
    if not abs(base.coeffs[0]) < 1:
        raise ContractionViolatedError(
            f"geometric base has constant term {base.coeffs[0]}, need |.| < 1"
        )
    partial = one(order)
    for _ in range(cap):
        partial = partial * base + 1
    exact = (one(order) - base).recip()
    return compare_series(partial, exact).diffs
