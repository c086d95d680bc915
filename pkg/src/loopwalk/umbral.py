"""Moment evaluation for affine combinations of independent moment symbols.

Three symbol families are supported, each pinned down by its exponential
generating function:

* Bernoulli ``B``:  ``e^(B*w) = w/(e^w - 1)``
* Euler     ``E``:  ``e^(E*w) = 2/(e^w + 1)``
* Uniform   ``U``:  ``e^(U*w) = (e^w - 1)/w``

An order-``p`` symbol is the sum of ``p`` independent copies, and every entry
in a combo's term list is independent of every other, so the EGF of a combo
``x + sum(scale_i * S_i)`` is ``e^(x*w)`` times the product of the factor
EGFs with their arguments scaled.  The ``n``-th moment of a combo is the
``n``-th EGF coefficient; e.g. the moments of ``x + B`` are the Bernoulli
polynomial values ``B_n(x)``, and ``B + U`` has the EGF identically 1.

Dependent products of symbols (repeated indices) are out of scope: no
implemented identity needs them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .series import (
    DEFAULT_ORDER,
    Rational,
    Series,
    VerificationReport,
    as_rational,
    compare_series,
    exp_series,
    exprel_series,
    one,
)


class SymbolKind(str, Enum):
    BERNOULLI = "B"
    EULER = "E"
    UNIFORM = "U"


@dataclass(frozen=True)
class SymbolTerm:
    """One scaled symbol ``scale * S^(order)`` in a combo."""

    kind: SymbolKind
    order: int = 1
    scale: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ValueError(f"symbol order must be at least 1, got {self.order}")
        object.__setattr__(self, "scale", as_rational(self.scale))


@dataclass(frozen=True)
class SymbolCombo:
    """Affine expression ``offset + sum of scaled independent symbols``."""

    offset: Fraction = Fraction(0)
    terms: tuple[SymbolTerm, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "offset", as_rational(self.offset))
        object.__setattr__(self, "terms", tuple(self.terms))


def _factor_egf(term: SymbolTerm, order: int) -> Series:
    if term.scale == 0:
        return one(order)
    if term.kind is SymbolKind.UNIFORM:
        base = exprel_series(term.scale, order)
    elif term.kind is SymbolKind.BERNOULLI:
        base = exprel_series(term.scale, order).recip()
    else:
        base = ((exp_series(term.scale, order) + 1) * Fraction(1, 2)).recip()
    return base**term.order


def combo_egf(combo: SymbolCombo, order: int = DEFAULT_ORDER) -> Series:
    """EGF of the combo: product of independent factor EGFs times e^(offset*w)."""
    result = exp_series(combo.offset, order)
    for term in combo.terms:
        result = result * _factor_egf(term, order)
    return result


def combo_moment(combo: SymbolCombo, n: int) -> Fraction:
    """The ``n``-th moment of the combo."""
    return combo_egf(combo, n).egf_coeff(n)


def verify_symbol_identity(
    lhs: SymbolCombo, rhs: SymbolCombo, order: int = 40
) -> VerificationReport:
    """Compare two combos' EGFs coefficient-by-coefficient up to ``order``."""
    return compare_series(combo_egf(lhs, order), combo_egf(rhs, order))


# -- compact text form -------------------------------------------------------

_TERM_RE = re.compile(
    r"^(?:(?P<coef>\d+(?:/\d+)?)\*?)?(?:(?P<x>x)|(?P<sym>[BEU])(?:\^(?P<ord>\d+))?)?$"
)


def parse_combo(text: str, x: Rational | int | str = 0) -> SymbolCombo:
    """Parse a compact combo string such as ``"x + 2*B^1 + E^3 - 1/2"``.

    Grammar (whitespace is ignored)::

        combo  := ['-'] term { ('+' | '-') term }
        term   := coeff [ '*' atom ] | atom
        atom   := 'x' | symbol
        symbol := ('B' | 'E' | 'U') [ '^' natural ]
        coeff  := natural [ '/' natural ]

    A bare coefficient adds to the offset; ``x`` adds the supplied value
    (so the same text can be evaluated at several points); a symbol atom
    contributes one independent term with the given scale and order.
    """
    x_value = as_rational(x)
    compact = text.replace(" ", "")
    if not compact:
        raise ValueError("empty combo")
    if compact[0] not in "+-":
        compact = "+" + compact
    pieces = re.findall(r"([+-])([^+-]+)", compact)
    if "".join(s + b for s, b in pieces) != compact:
        raise ValueError(f"cannot parse combo {text!r}")

    offset = Fraction(0)
    terms: list[SymbolTerm] = []
    for sign_ch, body in pieces:
        m = _TERM_RE.match(body)
        if not m or (m.group("coef") is None and m.group("x") is None and m.group("sym") is None):
            raise ValueError(f"cannot parse combo term {body!r} in {text!r}")
        sign = 1 if sign_ch == "+" else -1
        coef = sign * (Fraction(m.group("coef")) if m.group("coef") else Fraction(1))
        if m.group("sym"):
            order = int(m.group("ord")) if m.group("ord") else 1
            terms.append(SymbolTerm(SymbolKind(m.group("sym")), order, coef))
        elif m.group("x"):
            offset += coef * x_value
        else:
            offset += coef
    return SymbolCombo(offset=offset, terms=tuple(terms))
