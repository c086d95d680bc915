"""Loop decomposition of successive hitting times.

A walk from site 0 to site n+1 over consecutive sites factors into forward
hops times a geometric sum over excursion loops ``L_1..L_n`` (loop ``L_j``
runs between sites j-1 and j).  The geometric denominator is an
inclusion-exclusion sum over *nonadjacent* index subsets: subsets of
``{1..n}`` whose elements pairwise differ by at least 2 (independent sets of
the path graph).  This module enumerates those subsets, builds the signed
denominator, expands the order-constrained transfer sum directly, and
verifies the decomposition for any supplied :class:`LoopSystem`.

Subsets are stored as descending index tuples; the ascending view is a
reordering, not a second representation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Sequence

from .exceptions import OrderMismatchError
from .series import Series, VerificationReport, compare_series, one, zero

Subset = tuple[int, ...]


def nonadjacent_subsets(n: int, size: int) -> list[Subset]:
    """All size-``size`` subsets of ``{1..n}`` with pairwise gaps >= 2.

    Emitted as descending index tuples in descending-lexicographic order,
    e.g. ``n=5, size=2`` gives ``(5,3), (5,2), (5,1), (4,2), (4,1), (3,1)``.
    """
    if size < 0:
        raise ValueError("subset size must be nonnegative")
    out: list[Subset] = []

    def extend(prefix: tuple[int, ...], limit: int, remaining: int) -> None:
        if remaining == 0:
            out.append(prefix)
            return
        # smallest usable top element for `remaining` picks is 2*remaining - 1
        for j in range(limit, 2 * remaining - 2, -1):
            extend(prefix + (j,), j - 2, remaining - 1)

    extend((), n, size)
    return out


@lru_cache(maxsize=None)
def _size_tally(n: int) -> tuple[int, ...]:
    # tally[s] = number of nonadjacent subsets of {1..n} with exactly s
    # elements, found by walking every subset once (one call per subset).
    tally = [0] * (n // 2 + 2)
    tally[0] = 1

    def descend(limit: int, size: int) -> None:
        for j in range(limit, 0, -1):
            tally[size + 1] += 1
            descend(j - 2, size + 1)

    descend(n, 0)
    return tuple(tally)


def count_nonadjacent(n: int, size: int) -> int:
    """Number of nonadjacent subsets of ``{1..n}`` of the given size.

    Counted by enumeration, deliberately not via the binomial closed form,
    so the closed form stays available as an independent check.
    """
    if n < 0:
        raise ValueError("ambient size must be nonnegative")
    tally = _size_tally(n)
    return tally[size] if 0 <= size < len(tally) else 0


def count_with_min_index(n: int, size: int, min_index: int) -> int:
    """Number of size-``size`` nonadjacent subsets of ``{1..n}`` whose
    smallest element is ``min_index`` (counted by filtered enumeration)."""
    return sum(1 for s in nonadjacent_subsets(n, size) if s and s[-1] == min_index)


def denominator_terms(n: int) -> list[tuple[int, Subset]]:
    """Signed subset terms of the geometric denominator for ``n`` loops.

    Each nonempty nonadjacent subset ``S`` contributes ``(-1)**len(S)`` times
    the product of its loops, so singletons carry ``-``, pairs ``+``, triples
    ``-``.  Singletons are listed in ascending index order, larger subsets in
    descending-lexicographic order.
    """
    if n < 1:
        raise ValueError("need at least one loop")
    terms: list[tuple[int, Subset]] = [(-1, (j,)) for j in range(1, n + 1)]
    for size in range(2, n // 2 + 2):
        sign = (-1) ** size
        terms.extend((sign, s) for s in nonadjacent_subsets(n, size))
    return terms


def format_denominator_terms(terms: Sequence[tuple[int, Subset]]) -> str:
    """Render signed terms as monomial strings, e.g. ``"-L1 -L2 -L3 +L3*L1"``."""
    parts = []
    for sign, subset in terms:
        mono = "*".join(f"L{j}" for j in subset)
        parts.append(("+" if sign > 0 else "-") + mono)
    return " ".join(parts)


def _require_common_order(series_list: Sequence[Series]) -> int:
    orders = {s.order for s in series_list}
    if len(orders) != 1:
        raise OrderMismatchError(f"series must share one truncation order, got {sorted(orders)}")
    return orders.pop()


def denominator_series(loops: Sequence[Series]) -> Series:
    """``1 + sum of sign * product(L_j for j in S)`` over nonadjacent subsets."""
    if not loops:
        raise ValueError("need at least one loop series")
    order = _require_common_order(loops)
    total = one(order)
    for sign, subset in denominator_terms(len(loops)):
        prod = reduce(lambda a, b: a * b, (loops[j - 1] for j in subset))
        total = total + prod * sign
    return total


def transfer_expansion(
    loops: Sequence[Series], cap: int, return_last: bool = False
) -> Series | tuple[Series, Series]:
    """Direct expansion of the order-constrained loop sum, capped at ``cap``.

    Sums products ``L_{i_1} * ... * L_{i_k}`` for ``k <= cap`` over all index
    sequences where each step satisfies ``i_{t+1} = i_t``, ``i_{t+1} = i_t - 1``
    or ``i_{t+1} > i_t``, via a transfer recursion on the last index.  The cap
    is explicit: the full sum is infinite and only its geometric closed form
    (``denominator_series(...).recip()``) is exact, so with ``return_last``
    the final layer's contribution is also returned as a truncation
    indicator.
    """
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    if not loops:
        raise ValueError("need at least one loop series")
    order = _require_common_order(loops)
    n = len(loops)
    total = one(order)
    layer = [zero(order)] * n
    last_increment = one(order) if cap == 0 else zero(order)
    for k in range(1, cap + 1):
        if k == 1:
            layer = list(loops)
        else:
            prefix = zero(order)
            sums = []
            for j in range(n):
                # predecessors of j: equal, one above, or anything below
                pred = layer[j] + prefix
                if j + 1 < n:
                    pred = pred + layer[j + 1]
                sums.append(pred)
                prefix = prefix + layer[j]
            layer = [sums[j] * loops[j] for j in range(n)]
        increment = reduce(lambda a, b: a + b, layer)
        total = total + increment
        if k == cap:
            last_increment = increment
    return (total, last_increment) if return_last else total


@dataclass(frozen=True)
class LoopSystem:
    """Forward hop factors, loop factors, and an independently computed
    left-hand side, ready for decomposition verification.

    All series must share one truncation order, and each loop's constant
    term must lie in ``[0, 1)``: it is the completed-loop weight at the
    series origin (exactly 0 for step-counting chains).
    """

    forward: tuple[Series, ...]
    loops: tuple[Series, ...]
    lhs: Series

    def __post_init__(self) -> None:
        object.__setattr__(self, "forward", tuple(self.forward))
        object.__setattr__(self, "loops", tuple(self.loops))
        if not self.forward:
            raise ValueError("need at least one forward factor")
        _require_common_order([*self.forward, *self.loops, self.lhs])
        for i, loop in enumerate(self.loops, start=1):
            c = loop.coeffs[0]
            if not 0 <= c < 1:
                raise ValueError(f"loop {i} has constant term {c}, expected in [0, 1)")

    @property
    def order(self) -> int:
        return self.lhs.order


def rhs_series(system: LoopSystem) -> Series:
    """Product of forward factors over the geometric loop denominator."""
    fwd = reduce(lambda a, b: a * b, system.forward)
    if not system.loops:
        return fwd
    return fwd * denominator_series(system.loops).recip()


def verify_loop(system: LoopSystem) -> VerificationReport:
    """Compare the system's left-hand side against the decomposition."""
    return compare_series(system.lhs, rhs_series(system))
