"""Tests for exact combinatorics and log-domain arithmetic.

Expected values below were frozen from independent oracles before the
implementation existed: hand-evaluated alternating sums for small Stirling
numbers, brute-force surjection counts, and Decimal high-precision logs.
"""

import math
from decimal import Decimal, getcontext
from fractions import Fraction
from itertools import product

import pytest

from bihom.combin import (
    LogValue,
    StirlingTable,
    binomial,
    log10_of_int,
    lognat_of,
    pow_log,
    stirling2,
    stirling2_closed_form,
)


# ---------------------------------------------------------------- stirling2


def test_stirling_small_frozen_values():
    # S(4,2): partitions of {1,2,3,4} into 2 blocks, enumerated by hand = 7.
    assert stirling2(4, 2) == 7
    # S(5,3) from the alternating sum: (1/3!)(3^5 - 3*2^5 + 3*1^5) = 150/6 = 25.
    assert stirling2(5, 3) == 25
    assert stirling2_closed_form(5, 3) == 25


def test_stirling_first_and_second_columns():
    for n in range(1, 13):
        assert stirling2(n, 1) == 1
        if n >= 2:
            assert stirling2(n, 2) == 2 ** (n - 1) - 1


def test_stirling_out_of_range_is_zero():
    assert stirling2(3, 5) == 0
    assert stirling2(3, 0) == 0
    assert stirling2(3, -1) == 0


def test_stirling_diagonal_and_single_block():
    for n in range(1, 10):
        assert stirling2_closed_form(n, n) == 1
    assert stirling2_closed_form(6, 1) == 1


def test_stirling_rejects_bad_n():
    with pytest.raises(ValueError):
        stirling2(0, 0)
    with pytest.raises(ValueError):
        stirling2_closed_form(3, 0)
    with pytest.raises(ValueError):
        stirling2_closed_form(3, 4)


def test_both_routes_agree_up_to_30():
    for n in range(1, 31):
        for k in range(1, n + 1):
            assert stirling2(n, k) == stirling2_closed_form(n, k), (n, k)


def test_row_sums_give_powers():
    # sum_k S(n,k) * m*(m-1)*...*(m-k+1) counts all functions [n] -> [m].
    for n in range(1, 9):
        for m in range(0, 9):
            total = 0
            for k in range(1, n + 1):
                ff = 1
                for i in range(k):
                    ff *= m - i
                total += stirling2(n, k) * ff
            assert total == m**n, (n, m)


def _brute_surjections(n: int, k: int) -> int:
    return sum(1 for f in product(range(k), repeat=n) if len(set(f)) == k)


def test_surjection_counts_match_brute_force():
    for n in range(1, 8):
        for k in range(1, n + 1):
            assert math.factorial(k) * stirling2(n, k) == _brute_surjections(n, k), (n, k)


def test_table_grows_past_initial_capacity():
    t = StirlingTable(n_max=8)
    assert t.n_max == 8
    v = t.value(70, 35)
    assert t.n_max >= 70
    assert v == stirling2_closed_form(70, 35)
    assert t.value(0, 0) == 1
    assert t.value(0, 1) == 0


# ---------------------------------------------------------------- binomial


def test_binomial_values():
    assert binomial(5, 2) == 10  # Pascal: 1 4 6 4 1 -> next row 1 5 10 ...
    assert binomial(7, 0) == 1
    assert binomial(3, 7) == 0
    assert binomial(4, -1) == 0


# ---------------------------------------------------------------- LogValue


def test_lognat_of_powers_of_ten():
    assert lognat_of(1000).log10 == pytest.approx(3.0, abs=1e-12)
    assert lognat_of(1).log10 == 0.0


def test_lognat_of_zero_is_zero():
    z = lognat_of(0)
    assert z.is_zero
    assert z.log10 == float("-inf")


def test_pow_log_exponent_law():
    v = pow_log(LogValue.from_log10(2.0), Fraction(3, 2))
    assert v.log10 == pytest.approx(3.0, abs=1e-12)


def test_pow_log_zero_rejected_for_nonpositive_exponent():
    with pytest.raises(ValueError):
        pow_log(LogValue.zero(), 0)
    with pytest.raises(ValueError):
        pow_log(LogValue.zero(), -1)
    assert pow_log(LogValue.zero(), 2).is_zero


def test_logvalue_mul_and_add():
    a = LogValue.from_int(30)
    b = LogValue.from_int(12)
    assert (a * b).log10 == pytest.approx(math.log10(360), abs=1e-12)
    assert (a + b).log10 == pytest.approx(math.log10(42), abs=1e-12)
    z = LogValue.zero()
    assert (a * z).is_zero
    assert (a + z).log10 == a.log10
    assert (z + z).is_zero


def test_logvalue_comparisons():
    assert LogValue.from_int(5) < LogValue.from_int(6)
    assert LogValue.zero() < LogValue.from_int(1)
    assert LogValue.from_int(4) <= LogValue.from_int(4)


def test_logvalue_ceil_int_small():
    assert LogValue.zero().ceil_int() == 0
    assert LogValue.from_int(7).ceil_int() == 7  # exact integers stay put
    assert LogValue.from_log10(math.log10(7.2)).ceil_int() == 8
    big = 12345678901234  # still in the exact-float window
    assert LogValue.from_int(big).ceil_int() == big


def test_logvalue_ceil_int_huge_is_close_and_not_above():
    n = 7**200
    c = LogValue.from_int(n).ceil_int()
    assert c <= n
    assert (n - c) / n < 5e-12


def test_log10_of_int_precision_on_huge_inputs():
    getcontext().prec = 60
    for n in (2**1000, 10**5000 + 12345, 7**9999, 10**300000 // 7):
        expected = float(Decimal(n).log10())
        assert abs(log10_of_int(n) - expected) <= 1e-12 * abs(expected)


def test_logvalue_from_fraction():
    v = LogValue.from_fraction(Fraction(1, 100))
    assert v.log10 == pytest.approx(-2.0, abs=1e-12)
    assert LogValue.from_fraction(Fraction(0)).is_zero
    with pytest.raises(ValueError):
        LogValue.from_fraction(Fraction(-1, 2))
