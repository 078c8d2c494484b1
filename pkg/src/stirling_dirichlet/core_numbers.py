"""Exact integer and rational sequences.

Everything here is exact: Python ints for integer sequences and
``fractions.Fraction`` for rational ones.  Conversion to high precision
reals happens only where a series is summed.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction

from .context import TableBudgetExceeded

__all__ = [
    "StirlingTable",
    "stirling1_unsigned",
    "stirling1_row",
    "harmonic",
    "hyperharmonic",
    "cauchy_first",
    "cauchy_second",
    "derangement",
    "catalan",
    "binomial",
    "binomial_general",
    "default_table",
]


class StirlingTable:
    """Lazily grown triangle of unsigned Stirling numbers of the first kind.

    Rows are extended with ``[n+1, k] = n [n, k] + [n, k-1]`` and only the
    columns ``0..max_k`` seen so far are stored.  Growth happens under a
    lock; once an entry exists it is never modified.

    Parameters
    ----------
    max_n : int
        Largest row index that may be materialised.
    max_entries : int
        Budget on the total number of stored integers.
    """

    def __init__(self, max_n: int = 10_000, max_entries: int = 5_000_000):
        self.max_n = max_n
        self.max_entries = max_entries
        self._rows: list[list[int]] = [[1]]
        self._max_k = 0
        self._lock = threading.Lock()

    @property
    def max_k(self) -> int:
        return self._max_k

    @property
    def size(self) -> int:
        return sum(len(r) for r in self._rows)

    def _check_budget(self, n: int, k: int) -> None:
        if n > self.max_n:
            raise TableBudgetExceeded(
                f"row {n} exceeds the exact-table cap max_n={self.max_n}"
            )
        if k >= n:
            needed = (n + 1) * (n + 2) // 2
        else:
            needed = (k + 1) * (k + 2) // 2 + (n - k) * (k + 1)
        if needed > self.max_entries:
            raise TableBudgetExceeded(
                f"table up to [{n},{k}] needs {needed} entries, budget is {self.max_entries}"
            )

    def _ensure(self, n: int, k: int) -> None:
        k = min(k, n)
        if n < len(self._rows) and k <= self._max_k:
            return
        with self._lock:
            if n < len(self._rows) and k <= self._max_k:
                return
            n_target = max(n, len(self._rows) - 1)
            k_target = max(k, self._max_k)
            self._check_budget(n_target, k_target)
            if k_target > self._max_k:
                # widen existing rows: rebuild from scratch with wider columns
                rows = [[1]]
                start = 0
            else:
                rows = self._rows
                start = len(rows) - 1
            for m in range(start, n_target):
                prev = rows[m]
                width = min(m + 1, k_target)
                new = [0] * (width + 1)
                for j in range(1, width + 1):
                    a = prev[j] if j < len(prev) else 0
                    new[j] = m * a + prev[j - 1]
                rows.append(new)
            self._rows = rows
            self._max_k = k_target

    def __getitem__(self, nk: tuple[int, int]) -> int:
        n, k = nk
        if n < 0 or k < 0:
            raise ValueError("indices must be nonnegative")
        if k > n:
            return 0
        self._ensure(n, k)
        return self._rows[n][k]

    def row(self, n: int) -> list[int]:
        """Full row ``[n,0], ..., [n,n]``."""
        self._ensure(n, n)
        return list(self._rows[n][: n + 1])


_default_table = StirlingTable()


def default_table() -> StirlingTable:
    return _default_table


def stirling1_unsigned(n: int, k: int, table: StirlingTable | None = None) -> int:
    """Unsigned Stirling number of the first kind ``[n, k]``.

    >>> stirling1_unsigned(4, 2)
    11
    """
    return (table or _default_table)[n, k]


def stirling1_row(n: int, table: StirlingTable | None = None) -> list[int]:
    return (table or _default_table).row(n)


_harmonic_cache: list[Fraction] = [Fraction(0)]
_harmonic_lock = threading.Lock()


def harmonic(n: int) -> Fraction:
    """H_n = 1 + 1/2 + ... + 1/n with H_0 = 0."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n >= len(_harmonic_cache):
        with _harmonic_lock:
            h = _harmonic_cache[-1]
            for m in range(len(_harmonic_cache), n + 1):
                h += Fraction(1, m)
                _harmonic_cache.append(h)
    return _harmonic_cache[n]


def hyperharmonic(n: int, r: int) -> Fraction:
    """h_n^{(r+1)} = C(n+r, r) (H_{n+r} - H_r).

    The argument ``r`` is the parameter of the closed form, so
    ``hyperharmonic(n, 0) == harmonic(n)``.
    """
    if n < 0 or r < 0:
        raise ValueError("n and r must be >= 0")
    return math.comb(n + r, r) * (harmonic(n + r) - harmonic(r))


def _series_reciprocal(coeffs: list[Fraction], count: int) -> list[Fraction]:
    """First ``count`` Taylor coefficients of 1/g for g with g[0] != 0."""
    inv = [Fraction(1) / coeffs[0]]
    for n in range(1, count):
        acc = Fraction(0)
        for m in range(1, min(n, len(coeffs) - 1) + 1):
            acc += coeffs[m] * inv[n - m]
        inv.append(-acc / coeffs[0])
    return inv


class _GrowingSequence:
    """Cache for a sequence whose prefix is recomputed in doubling blocks."""

    def __init__(self, builder):
        self._builder = builder
        self._values: list = []
        self._lock = threading.Lock()

    def __call__(self, n: int):
        if n < 0:
            raise ValueError("n must be >= 0")
        if n >= len(self._values):
            with self._lock:
                if n >= len(self._values):
                    size = max(16, 2 * len(self._values), n + 1)
                    self._values = self._builder(size)
        return self._values[n]


def _cauchy_first_table(count: int) -> list[Fraction]:
    # ln(1+x)/x = sum (-1)^m x^m / (m+1); c_n / n! are the coefficients of its reciprocal
    g = [Fraction((-1) ** m, m + 1) for m in range(count)]
    h = _series_reciprocal(g, count)
    return [h[n] * math.factorial(n) for n in range(count)]


def _cauchy_second_table(count: int) -> list[Fraction]:
    # -x/((1-x) ln(1-x)) = (1/(1-x)) * 1/(sum x^m/(m+1))
    g = [Fraction(1, m + 1) for m in range(count)]
    e = _series_reciprocal(g, count)
    out = []
    running = Fraction(0)
    for n in range(count):
        running += e[n]
        out.append(running * math.factorial(n))
    return out


_cauchy_first = _GrowingSequence(_cauchy_first_table)
_cauchy_second = _GrowingSequence(_cauchy_second_table)


def cauchy_first(n: int) -> Fraction:
    """Cauchy number of the first kind, from x/ln(1+x) = sum c_n x^n/n!."""
    return _cauchy_first(n)


def cauchy_second(n: int) -> Fraction:
    """Cauchy number of the second kind, from -x/((1-x)ln(1-x)) = sum d_n x^n/n!."""
    return _cauchy_second(n)


def derangement(n: int) -> int:
    """D_n = n! sum_{j<=n} (-1)^j / j!."""
    if n < 0:
        raise ValueError("n must be >= 0")
    total = 0
    falling = 1  # n!/j! for j = n, n-1, ..., 0
    for j in range(n, -1, -1):
        total += falling if j % 2 == 0 else -falling
        falling *= j if j else 1
    return total


def catalan(p: int) -> int:
    if p < 0:
        raise ValueError("p must be >= 0")
    return math.comb(2 * p, p) // (p + 1)


def binomial(n: int, k: int) -> int:
    if not 0 <= k <= n:
        raise ValueError("binomial requires 0 <= k <= n")
    return math.comb(n, k)


def binomial_general(r, p: int) -> Fraction:
    """Generalised binomial r(r-1)...(r-p+1)/p! for rational ``r``."""
    if p < 0:
        raise ValueError("p must be >= 0")
    r = Fraction(r)
    out = Fraction(1)
    for i in range(p):
        out *= (r - i) / (i + 1)
    return out
