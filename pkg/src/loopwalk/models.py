"""Hitting-time transform factories for three walk models.

Continuous models (series in ``w``, transform ``E[exp(-w^2 T / 2)]``):

* reflected Brownian motion on the half line: cosh / sinh ratios;
* the 3-d Bessel process (norm of 3-d Brownian motion): weighted sinh
  ratios, with the exact ``b*w/sinh(b*w)`` limit at the origin and no loop
  at the origin, since the process never returns to 0.

Discrete model (series in ``z``, probability generating functions): a
birth-death chain with a reflecting lower boundary, where every first-
passage transform is computed exactly by a stepwise taboo dynamic program.
All ratios of sinh go through ``sinh(c*w)/w`` so that series reciprocals
never see a zero constant term.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exceptions import DegenerateSitesError, InvalidSitesError
from .loops import LoopSystem
from .series import (
    DEFAULT_ORDER,
    Rational,
    Series,
    as_rational,
    cosh_series,
    sinh_over_w_series,
    zero,
)


@dataclass(frozen=True)
class SiteConfig:
    """Strictly increasing site positions starting at 0."""

    sites: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        sites = tuple(as_rational(s) for s in self.sites)
        object.__setattr__(self, "sites", sites)
        if len(sites) < 2:
            raise DegenerateSitesError("need at least two sites")
        if sites[0] != 0:
            raise DegenerateSitesError(f"first site must be 0, got {sites[0]}")
        if any(a >= b for a, b in zip(sites, sites[1:])):
            raise DegenerateSitesError("sites must be strictly increasing")

    @classmethod
    def from_strings(cls, values: Sequence[str]) -> "SiteConfig":
        return cls(tuple(as_rational(v) for v in values))


def unit_sites(last: int) -> SiteConfig:
    """Equally spaced integer sites ``0, 1, ..., last``."""
    return SiteConfig(tuple(Fraction(j) for j in range(last + 1)))


def _check_ordered(*values: Fraction) -> None:
    if any(a >= b for a, b in zip(values, values[1:])):
        raise DegenerateSitesError(f"sites must satisfy strict inequalities, got {values}")


# -- reflected Brownian motion ------------------------------------------------


def bm_phi(a: Rational, b: Rational, order: int = DEFAULT_ORDER) -> Series:
    """Upward transform ``cosh(a*w)/cosh(b*w)`` for ``0 <= a < b``."""
    a, b = as_rational(a), as_rational(b)
    if a < 0:
        raise DegenerateSitesError("reflected Brownian motion lives on the half line")
    _check_ordered(a, b)
    return cosh_series(a, order) * cosh_series(b, order).recip()


def bm_phi_down(b: Rational, a: Rational, c: Rational, order: int = DEFAULT_ORDER) -> Series:
    """From ``b`` down to ``a`` avoiding ``c``: ``sinh((c-b)w)/sinh((c-a)w)``."""
    a, b, c = as_rational(a), as_rational(b), as_rational(c)
    _check_ordered(a, b, c)
    return sinh_over_w_series(c - b, order) * sinh_over_w_series(c - a, order).recip()


def bm_phi_up(b: Rational, c: Rational, a: Rational, order: int = DEFAULT_ORDER) -> Series:
    """From ``b`` up to ``c`` avoiding ``a``: ``sinh((b-a)w)/sinh((c-a)w)``."""
    a, b, c = as_rational(a), as_rational(b), as_rational(c)
    _check_ordered(a, b, c)
    return sinh_over_w_series(b - a, order) * sinh_over_w_series(c - a, order).recip()


def bm_system(config: SiteConfig, order: int = DEFAULT_ORDER) -> LoopSystem:
    """Loop system for reflected Brownian motion over the given sites.

    With sites ``a_0=0 < a_1 < ... < a_(n+1)`` there are ``n`` loops; the
    left-hand side is the direct transform ``1/cosh(a_last * w)``.
    """
    s = config.sites
    n = len(s) - 2
    forward = [bm_phi(s[0], s[1], order)]
    forward += [bm_phi_up(s[j], s[j + 1], s[j - 1], order) for j in range(1, n + 1)]
    loops = []
    for j in range(1, n + 1):
        up = bm_phi(s[0], s[1], order) if j == 1 else bm_phi_up(s[j - 1], s[j], s[j - 2], order)
        loops.append(up * bm_phi_down(s[j], s[j - 1], s[j + 1], order))
    return LoopSystem(tuple(forward), tuple(loops), bm_phi(s[0], s[-1], order))


# -- 3-d Bessel process --------------------------------------------------------


def bessel_phi(a: Rational, b: Rational, order: int = DEFAULT_ORDER) -> Series:
    """Upward transform ``(b/a) sinh(a*w)/sinh(b*w)``; ``b*w/sinh(b*w)`` at a=0."""
    a, b = as_rational(a), as_rational(b)
    if a < 0:
        raise DegenerateSitesError("the Bessel process lives on the half line")
    _check_ordered(a, b)
    denom = sinh_over_w_series(b, order).recip()
    if a == 0:
        return denom * b
    return sinh_over_w_series(a, order) * denom * (b / a)


def bessel_phi_down(b: Rational, a: Rational, c: Rational, order: int = DEFAULT_ORDER) -> Series:
    """From ``b`` down to ``a`` avoiding ``c``; identically zero for ``a = 0``."""
    a, b, c = as_rational(a), as_rational(b), as_rational(c)
    if a < 0:
        raise DegenerateSitesError("the Bessel process lives on the half line")
    _check_ordered(a, b, c)
    if a == 0:
        return zero(order)
    return sinh_over_w_series(c - b, order) * sinh_over_w_series(c - a, order).recip() * (a / b)


def bessel_phi_up(b: Rational, c: Rational, a: Rational, order: int = DEFAULT_ORDER) -> Series:
    """From ``b`` up to ``c`` avoiding ``a``: ``(c/b) sinh((b-a)w)/sinh((c-a)w)``."""
    a, b, c = as_rational(a), as_rational(b), as_rational(c)
    if a < 0:
        raise DegenerateSitesError("the Bessel process lives on the half line")
    _check_ordered(a, b, c)
    return sinh_over_w_series(b - a, order) * sinh_over_w_series(c - a, order).recip() * (c / b)


def bessel_system(config: SiteConfig, order: int = DEFAULT_ORDER) -> LoopSystem:
    """Loop system for the Bessel process over the given sites.

    Returns to the origin are impossible, so loops are indexed on interior
    sites only: loop ``k`` runs between ``sites[k]`` and ``sites[k+1]``.
    """
    s = config.sites
    last = len(s) - 1
    forward = [bessel_phi(s[0], s[1], order)]
    forward += [bessel_phi_up(s[j], s[j + 1], s[j - 1], order) for j in range(1, last)]
    loops = [
        bessel_phi_up(s[k], s[k + 1], s[k - 1], order)
        * bessel_phi_down(s[k + 1], s[k], s[k + 2], order)
        for k in range(1, last - 1)
    ]
    return LoopSystem(tuple(forward), tuple(loops), bessel_phi(s[0], s[-1], order))


# -- birth-death chains ---------------------------------------------------------


@dataclass(frozen=True)
class BirthDeathChain:
    """Nearest-neighbour chain on sites ``0..len(up)+1``.

    ``up[i-1]`` is the probability that interior site ``i`` moves up; site 0
    reflects to 1 and the top site reflects down (the top transition is never
    exercised by the loop decomposition, which absorbs before reaching it).
    """

    up: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        up = tuple(as_rational(p) for p in self.up)
        object.__setattr__(self, "up", up)
        if not up:
            raise InvalidSitesError("need at least one interior site")
        if any(not 0 < p < 1 for p in up):
            raise InvalidSitesError("up-move probabilities must lie strictly between 0 and 1")

    @classmethod
    def from_strings(cls, values: Sequence[str]) -> "BirthDeathChain":
        return cls(tuple(as_rational(v) for v in values))

    @property
    def n_sites(self) -> int:
        return len(self.up) + 2


def bd_hitting_pgf(
    chain: BirthDeathChain,
    start: int,
    target: int,
    order: int = DEFAULT_ORDER,
    taboo: int | None = None,
) -> Series:
    """Exact PGF of the first-passage time from ``start`` to ``target``.

    The coefficient of ``z**t`` is the probability of first hitting
    ``target`` at step ``t`` without having visited ``taboo``; the taboo
    site absorbs and is excluded from success, so the PGF may be defective.
    The dynamic-programming horizon equals the truncation order.
    """
    n = chain.n_sites
    for name, site in (("start", start), ("target", target)):
        if not 0 <= site < n:
            raise InvalidSitesError(f"{name} site {site} out of range 0..{n - 1}")
    if taboo is not None and not 0 <= taboo < n:
        raise InvalidSitesError(f"taboo site {taboo} out of range 0..{n - 1}")
    if start == target:
        raise InvalidSitesError("start and target must differ")
    if taboo in (start, target):
        raise InvalidSitesError("taboo must differ from start and target")

    dist = [Fraction(0)] * n
    dist[start] = Fraction(1)
    coeffs = [Fraction(0)] * (order + 1)
    for t in range(1, order + 1):
        nxt = [Fraction(0)] * n
        for i, mass in enumerate(dist):
            if mass == 0:
                continue
            if i == 0:
                nxt[1] += mass
            elif i == n - 1:
                nxt[n - 2] += mass
            else:
                p = chain.up[i - 1]
                nxt[i + 1] += mass * p
                nxt[i - 1] += mass * (1 - p)
        coeffs[t] = nxt[target]
        nxt[target] = Fraction(0)
        if taboo is not None:
            nxt[taboo] = Fraction(0)
        dist = nxt
    return Series(tuple(coeffs))


def bd_system(chain: BirthDeathChain, order: int = DEFAULT_ORDER) -> LoopSystem:
    """Loop system for the chain: all factors from the taboo dynamic program."""
    n = chain.n_sites - 2
    top = chain.n_sites - 1
    forward = [bd_hitting_pgf(chain, 0, 1, order)]
    forward += [bd_hitting_pgf(chain, j, j + 1, order, taboo=j - 1) for j in range(1, n + 1)]
    loops = []
    for j in range(1, n + 1):
        up = (
            bd_hitting_pgf(chain, 0, 1, order)
            if j == 1
            else bd_hitting_pgf(chain, j - 1, j, order, taboo=j - 2)
        )
        loops.append(up * bd_hitting_pgf(chain, j, j - 1, order, taboo=j + 1))
    return LoopSystem(tuple(forward), tuple(loops), bd_hitting_pgf(chain, 0, top, order))
