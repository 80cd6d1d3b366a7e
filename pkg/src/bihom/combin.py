"""Shared exact and log-domain arithmetic.

Exact counts are plain Python ints (arbitrary precision), so "BigNat" here
means "nonnegative int".  Analytic bounds routinely exceed the double range
(10^600 and far beyond at experiment scale), so they are carried as
:class:`LogValue`, a log10-domain magnitude with a distinguished zero.
Entropy formulas are evaluated internally in nats and converted to log10
once, at the reporting boundary.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction

LN10 = math.log(10.0)
LOG10_2 = math.log10(2.0)

Rational = int | Fraction


def binomial(n: int, k: int) -> int:
    """C(n,k); 0 for k < 0 or k > n (and for n < 0)."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def log10_of_int(n: int) -> float:
    """log10 of a positive int, exact to ~1 ulp even for huge inputs.

    math.log10 overflows past ~10^308, so large inputs are split into a
    53-bit mantissa and a power of two.  The absolute error is bounded by
    a few times 2^-53 * bit_length * log10(2), which keeps the relative
    error on the log itself far below 1e-12 for inputs up to 10^6 digits.
    """
    if n <= 0:
        raise ValueError("log10_of_int requires a positive integer")
    bits = n.bit_length()
    if bits <= 900:
        return math.log10(n)
    shift = bits - 53
    return math.log10(n >> shift) + shift * LOG10_2


def log10_of_fraction(x: Rational) -> float:
    """log10 of a positive int or Fraction."""
    if isinstance(x, Fraction):
        if x <= 0:
            raise ValueError("log10_of_fraction requires a positive value")
        return log10_of_int(x.numerator) - log10_of_int(x.denominator)
    return log10_of_int(x)


class LogValue:
    """A nonnegative real carried as its log10; ZERO is represented exactly.

    Multiplication adds logs (ZERO absorbs), addition is log-sum-exp, and
    comparisons go through the stored log10.  ``log10`` is -inf for ZERO.
    """

    __slots__ = ("log10",)

    def __init__(self, log10: float):
        self.log10 = float(log10)

    # -- constructors -------------------------------------------------
    @staticmethod
    def zero() -> "LogValue":
        return LogValue(float("-inf"))

    @staticmethod
    def from_log10(log10: float) -> "LogValue":
        return LogValue(log10)

    @staticmethod
    def from_int(n: int) -> "LogValue":
        if n < 0:
            raise ValueError("LogValue cannot represent negative values")
        if n == 0:
            return LogValue.zero()
        return LogValue(log10_of_int(n))

    @staticmethod
    def from_fraction(x: Rational) -> "LogValue":
        x = Fraction(x)
        if x < 0:
            raise ValueError("LogValue cannot represent negative values")
        if x == 0:
            return LogValue.zero()
        return LogValue(log10_of_fraction(x))

    # -- predicates ---------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return self.log10 == float("-inf")

    # -- arithmetic ---------------------------------------------------
    def mul(self, other: "LogValue") -> "LogValue":
        if self.is_zero or other.is_zero:
            return LogValue.zero()
        return LogValue(self.log10 + other.log10)

    __mul__ = mul

    def add(self, other: "LogValue") -> "LogValue":
        """Log-sum-exp addition, exact when either side is ZERO."""
        if self.is_zero:
            return LogValue(other.log10)
        if other.is_zero:
            return LogValue(self.log10)
        hi, lo = (self.log10, other.log10) if self.log10 >= other.log10 else (other.log10, self.log10)
        return LogValue(hi + math.log10(1.0 + 10.0 ** (lo - hi)))

    __add__ = add

    def pow(self, e: Rational | float) -> "LogValue":
        if self.is_zero:
            if e <= 0:
                raise ValueError("0 cannot be raised to a nonpositive power")
            return LogValue.zero()
        return LogValue(self.log10 * float(e))

    # -- comparisons (by log) ------------------------------------------
    def __lt__(self, other: "LogValue") -> bool:
        return self.log10 < other.log10

    def __le__(self, other: "LogValue") -> bool:
        return self.log10 <= other.log10

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LogValue) and self.log10 == other.log10

    def __hash__(self) -> int:
        return hash(self.log10)

    def __repr__(self) -> str:
        return "LogValue(ZERO)" if self.is_zero else f"LogValue(log10={self.log10!r})"

    # -- conversions ----------------------------------------------------
    def to_float(self) -> float:
        """10**log10; may overflow to inf for large magnitudes."""
        if self.is_zero:
            return 0.0
        try:
            return 10.0 ** self.log10
        except OverflowError:
            return float("inf")

    def ceil_int(self) -> int:
        """Ceiling as an exact int for small magnitudes, else the nearest
        representable integer of the right magnitude.

        Values within 1e-11 (relative) of an integer snap to it, so a bound
        that is provably an exact count does not get bumped to the next
        integer by log-domain float noise.  For huge magnitudes the result
        carries ~12 correct leading digits and errs a hair *under* the true
        ceiling, which keeps it a valid lower bound wherever the ceiling
        convention is applied.
        """
        if self.is_zero:
            return 0
        if self.log10 < 15.2:
            x = 10.0 ** self.log10
            nearest = round(x)
            if nearest > 0 and abs(x - nearest) <= 1e-11 * x:
                return nearest
            return max(1, math.ceil(x))
        digits = int(math.floor(self.log10)) - 15
        mant = 10.0 ** (self.log10 - digits)  # in [1e15, 1e16)
        return math.ceil(mant * (1.0 - 1e-12)) * 10 ** digits


def lognat_of(x: int) -> LogValue:
    """LogValue of a nonnegative int; 0 maps to ZERO."""
    if x < 0:
        raise ValueError("lognat_of requires a nonnegative integer")
    return LogValue.from_int(x)


def pow_log(base: LogValue, e: Rational | float) -> LogValue:
    """base**e in the log domain; ZERO**e rejected for e <= 0."""
    return base.pow(e)


def stirling2_closed_form(n: int, k: int) -> int:
    """S(n,k) by the alternating binomial sum; requires 1 <= k <= n.

    Serves as the independent cross-check for the recurrence table.
    """
    if not (1 <= k <= n):
        raise ValueError(f"stirling2_closed_form requires 1 <= k <= n, got ({n}, {k})")
    total = sum((-1) ** (k - j) * math.comb(k, j) * j**n for j in range(k + 1))
    value, rem = divmod(total, math.factorial(k))
    assert rem == 0
    return value


class StirlingTable:
    """Cache of S(n,k) rows built from the recurrence S(n,k) = k*S(n-1,k) + S(n-1,k-1).

    Rows are appended under a lock; reads of already-built rows are plain
    list indexing and safe to share across threads.
    """

    def __init__(self, n_max: int = 64):
        self._rows: list[list[int]] = [[1]]  # row n holds S(n,k) for k = 0..n
        self._lock = threading.Lock()
        self._grow_to(n_max)

    def _grow_to(self, n: int) -> None:
        with self._lock:
            while len(self._rows) <= n:
                prev = self._rows[-1]
                m = len(self._rows)  # building row for this n
                row = [0] * (m + 1)
                for k in range(1, m):
                    row[k] = k * prev[k] + prev[k - 1]
                row[m] = 1
                if m == 1:
                    row[1] = 1
                self._rows.append(row)

    @property
    def n_max(self) -> int:
        return len(self._rows) - 1

    def value(self, n: int, k: int) -> int:
        """S(n,k); 0 outside 1 <= k <= n (except S(0,0) = 1)."""
        if n < 0:
            return 0
        if n == 0:
            return 1 if k == 0 else 0
        if k < 1 or k > n:
            return 0
        if n > self.n_max:
            self._grow_to(max(n, 2 * self.n_max))
        return self._rows[n][k]


_SHARED_TABLE = StirlingTable()


def stirling2(n: int, k: int) -> int:
    """S(n,k) from the shared memoized table; out-of-range k gives 0."""
    if n < 1:
        raise ValueError("stirling2 requires n >= 1")
    return _SHARED_TABLE.value(n, k)


def shared_stirling_table() -> StirlingTable:
    return _SHARED_TABLE
