"""Subset enumeration, denominator structure, transfer expansion, verification."""

from fractions import Fraction as F
from math import comb

import pytest

from loopwalk import (
    LoopSystem,
    OrderMismatchError,
    compare_series,
    count_nonadjacent,
    count_with_min_index,
    denominator_series,
    denominator_terms,
    format_denominator_terms,
    from_coeffs,
    nonadjacent_subsets,
    one,
    rhs_series,
    transfer_expansion,
    verify_loop,
    zero,
)


def brute_subsets(n, size):
    """Independent enumeration via bitmask filtering (small n only)."""
    out = []
    for mask in range(1 << n):
        picked = [j + 1 for j in range(n) if mask >> j & 1]
        if len(picked) == size and all(b - a >= 2 for a, b in zip(picked, picked[1:])):
            out.append(tuple(reversed(picked)))
    return sorted(out, reverse=True)


def test_subsets_examples():
    assert nonadjacent_subsets(3, 2) == [(3, 1)]
    assert nonadjacent_subsets(5, 2) == [(5, 3), (5, 2), (5, 1), (4, 2), (4, 1), (3, 1)]
    assert nonadjacent_subsets(5, 3) == [(5, 3, 1)]
    assert nonadjacent_subsets(4, 3) == []


@pytest.mark.parametrize("n", range(0, 13))
def test_subsets_match_bitmask_oracle(n):
    for size in range(0, n // 2 + 2):
        assert nonadjacent_subsets(n, size) == brute_subsets(n, size)


def test_count_examples():
    for n in range(1, 10):
        assert count_nonadjacent(n, 1) == n
    assert count_nonadjacent(5, 2) == 6
    assert count_with_min_index(3, 2, 1) == 1  # only {3,1}


def test_count_closed_form_and_recurrence():
    for n in range(1, 16):
        for size in range(1, n + 1):
            assert count_nonadjacent(n, size) == comb(n - size + 1, size)
    for n in range(3, 16):
        for size in range(3, n + 1):
            assert count_nonadjacent(n, size) == count_nonadjacent(n - 1, size) + count_nonadjacent(
                n - 2, size - 1
            )


def test_count_with_min_index_reduction():
    for n in range(2, 26):
        for size in range(2, n + 1):
            assert count_with_min_index(n, size, 1) == count_nonadjacent(n - 2, size - 1)


def test_denominator_terms_regression():
    expected = {
        2: "-L1 -L2",
        3: "-L1 -L2 -L3 +L3*L1",
        4: "-L1 -L2 -L3 -L4 +L4*L2 +L4*L1 +L3*L1",
        5: "-L1 -L2 -L3 -L4 -L5 +L5*L3 +L5*L2 +L5*L1 +L4*L2 +L4*L1 +L3*L1 -L5*L3*L1",
    }
    for n, text in expected.items():
        assert format_denominator_terms(denominator_terms(n)) == text


def test_denominator_signs():
    for sign, subset in denominator_terms(9):
        assert sign == (-1) ** len(subset)


@pytest.mark.parametrize("n", range(1, 13))
def test_peel_off_recursion(n):
    # every subset with smallest index k is uniquely {k} joined with a
    # nonadjacent subset of {k+2..n}, with the sign flipped by the extra
    # element: the symbolic form of peeling L_k off the signed sum.
    terms = denominator_terms(n)
    for k in range(1, n + 1):
        with_min = {subset: sign for sign, subset in terms if subset[-1] == k}
        expected = {(k,): -1}
        for sign, subset in terms:
            if subset[-1] >= k + 2:
                expected[subset + (k,)] = -sign
        assert with_min == expected


def test_denominator_series_single_loop():
    loop = from_coeffs([F(1, 2), F(1, 3)], order=4)
    assert compare_series(denominator_series([loop]), one(4) - loop).equal


def test_denominator_series_three_equal_loops():
    s = from_coeffs([F(1, 4), F(1, 7), F(2, 5)], order=5)
    expected = one(5) - s * 3 + s * s
    assert compare_series(denominator_series([s, s, s]), expected).equal


def test_denominator_series_zero_loops():
    loops = [zero(6) for _ in range(4)]
    assert denominator_series(loops).coeffs == one(6).coeffs


def test_denominator_series_order_mismatch():
    with pytest.raises(OrderMismatchError):
        denominator_series([one(4), one(5)])


def test_transfer_single_loop():
    loop = from_coeffs([F(1, 3), F(1, 2)], order=6)
    expected = one(6) + loop + loop**2 + loop**3
    assert compare_series(transfer_expansion([loop], 3), expected).equal


def test_transfer_two_loops_unconstrained():
    l1 = from_coeffs([F(1, 5), F(1, 2)], order=6)
    l2 = from_coeffs([F(1, 7), F(-1, 3)], order=6)
    total = l1 + l2
    expected = one(6) + total + total**2
    assert compare_series(transfer_expansion([l1, l2], 2), expected).equal


def test_transfer_converges_to_geometric_inverse():
    loops = [
        from_coeffs([F(1, 4), F(1, 9)], order=8),
        from_coeffs([F(1, 5), F(-1, 11)], order=8),
        from_coeffs([F(1, 6), F(1, 13)], order=8),
    ]
    exact = denominator_series(loops).recip()
    total, last = transfer_expansion(loops, 120, return_last=True)
    for got, want in zip(total.coeffs, exact.coeffs):
        assert abs(got - want) < F(1, 10**12)
    assert all(abs(c) < F(1, 10**10) for c in last.coeffs)


def test_transfer_cap_zero():
    loop = from_coeffs([F(1, 2)], order=0)
    assert transfer_expansion([loop], 0).coeffs == one(0).coeffs


def test_loop_system_validation():
    good = LoopSystem((one(4),), (from_coeffs([F(1, 2)], order=4),), one(4))
    assert good.order == 4
    with pytest.raises(OrderMismatchError):
        LoopSystem((one(4),), (zero(5),), one(4))
    with pytest.raises(ValueError):
        LoopSystem((one(4),), (one(4),), one(4))  # loop constant term 1


def test_verify_loop_toy_system():
    # lhs constructed to match by definition: f / (1 - L)
    loop = from_coeffs([F(1, 3), F(1, 8), F(1, 11)], order=6)
    fwd = from_coeffs([F(1, 2), F(2, 7)], order=6)
    lhs = fwd * (one(6) - loop).recip()
    system = LoopSystem((fwd,), (loop,), lhs)
    assert rhs_series(system).coeffs == lhs.coeffs
    report = verify_loop(system)
    assert report.equal and report.first_mismatch is None

    broken = LoopSystem((fwd,), (loop,), lhs + from_coeffs([0, 0, F(1, 5)], order=6))
    report = verify_loop(broken)
    assert not report.equal and report.first_mismatch == 2
