"""Gaussian (q-deformed) binomial coefficients.

Several evaluation routes with independent failure modes:

* :func:`q_binom_pascal` runs dynamic programming on the q-Pascal recurrence
  ``C(n,r)_q = C(n-1,r-1)_q + q^r * C(n-1,r)_q``.  It is valid for every q,
  including roots of unity, at O(n*r) scalar operations.
* :func:`q_binom_partition_oracle` literally enumerates the integer partitions
  that fit in an r x (n-r) box and sums ``q^|partition|``.  Exponentially many
  terms; kept as an independent test oracle, not a production path.
* :func:`q_binom_product` evaluates the product formula
  ``prod_i (1-q^{n-i})/(1-q^{i+1})``, which degenerates at roots of unity.
* :func:`q_binom_minus1` is the exact integer closed form at q = -1.

Passing an integer q (1 or -1) keeps every intermediate an exact integer;
any other q is evaluated in (complex) double precision.
"""

from __future__ import annotations

from math import comb

from .errors import SizeLimitError

#: Largest n accepted by the brute-force partition enumeration.
PARTITION_CAP = 16

#: Roots of unity closer than this to 1 are treated as exact for the purpose
#: of rejecting the product formula.
_ROOT_TOL = 1e-12


def q_binom_pascal(n: int, r: int, q):
    """Gaussian binomial C(n, r)_q via the q-Pascal recurrence.

    Returns 0 for r > n and 1 for r = 0, matching the ordinary binomial
    conventions.  Works for every q, including roots of unity.
    """
    if n < 0 or r < 0:
        raise ValueError(f"n and r must be non-negative, got n={n}, r={r}")
    if r > n:
        return 0
    if r == 0:
        return 1
    qpow = [q ** j for j in range(r + 1)]
    row = [1] + [0] * r
    for i in range(1, n + 1):
        for j in range(min(r, i), 0, -1):
            row[j] = row[j - 1] + qpow[j] * row[j]
    return row[r]


def _partition_sizes(num_parts, max_part):
    """Yield |partition| for every weakly decreasing sequence of ``num_parts``
    parts bounded by ``max_part`` (trailing zeros allowed)."""
    if num_parts == 0:
        yield 0
        return
    for first in range(max_part + 1):
        for rest in _partition_sizes(num_parts - 1, first):
            yield first + rest


def q_binom_partition_oracle(n: int, r: int, q, cap: int = PARTITION_CAP):
    """Gaussian binomial as the generating sum over partitions in a box.

    Enumerates every partition with at most r parts, each part at most n-r,
    and returns the sum of q^|partition|.  Intended as a slow cross-check of
    :func:`q_binom_pascal`; refuses n above ``cap``.
    """
    if n < 0 or r < 0 or r > n:
        raise ValueError(f"need 0 <= r <= n, got n={n}, r={r}")
    if n > cap:
        raise SizeLimitError(f"partition enumeration capped at n <= {cap}, got n={n}")
    qpow = [1]
    for _ in range(r * (n - r)):
        qpow.append(qpow[-1] * q)
    total = 0
    for size in _partition_sizes(r, n - r):
        total += qpow[size]
    return total


def q_binom_product(n: int, r: int, q):
    """Gaussian binomial via the product formula prod (1-q^{n-i})/(1-q^{i+1}).

    Rejects any q that is a root of unity of order <= n (for r >= 1): at such
    q the equivalent factorial forms degenerate to 0/0, so callers should use
    :func:`q_binom_pascal` instead.
    """
    if n < 0 or r < 0 or r > n:
        raise ValueError(f"need 0 <= r <= n, got n={n}, r={r}")
    if r == 0:
        return 1
    power = 1
    for i in range(1, n + 1):
        power = power * q
        if abs(power - 1) < _ROOT_TOL:
            raise ValueError(
                f"q={q!r} is a root of unity of order {i} <= n={n}; "
                "the product formula is indeterminate there, use q_binom_pascal"
            )
    result = 1
    for i in range(r):
        result = result * (1 - q ** (n - i)) / (1 - q ** (i + 1))
    return result


def q_binom_minus1(n: int, r: int) -> int:
    """Exact integer value of the Gaussian binomial at q = -1.

    Equals C(floor(n/2), floor(r/2)) when n is odd or r is even, and 0 when
    n is even and r is odd.
    """
    if n < 0 or r < 0:
        raise ValueError(f"n and r must be non-negative, got n={n}, r={r}")
    if r > n:
        return 0
    if n % 2 == 0 and r % 2 == 1:
        return 0
    return comb(n // 2, r // 2)


class QBinomTable:
    """Triangular table of C(n, r)_q for 0 <= r <= n <= n_max.

    Rows are filled by the q-Pascal recurrence, so every entry is valid for
    arbitrary q.  The table is immutable after construction and safe to share
    across threads.
    """

    def __init__(self, n_max: int, q):
        if n_max < 0:
            raise ValueError(f"n_max must be non-negative, got {n_max}")
        self.n_max = n_max
        self.q = q
        rows = [[1]]
        for n in range(1, n_max + 1):
            prev = rows[-1]
            row = [1]
            for r in range(1, n):
                row.append(prev[r - 1] + q ** r * prev[r])
            row.append(prev[n - 1])  # C(n, n)_q = C(n-1, n-1)_q = 1
            rows.append(row)
        self._rows = rows

    def entry(self, n: int, r: int):
        """C(n, r)_q, with the convention entry(n, r) = 0 for r > n."""
        if n < 0 or r < 0:
            raise ValueError(f"n and r must be non-negative, got n={n}, r={r}")
        if n > self.n_max:
            raise ValueError(f"n={n} exceeds table size n_max={self.n_max}")
        if r > n:
            return 0
        return self._rows[n][r]

    def row(self, n: int) -> list:
        """The full row [C(n,0)_q, ..., C(n,n)_q]."""
        if not 0 <= n <= self.n_max:
            raise ValueError(f"n={n} outside table range 0..{self.n_max}")
        return list(self._rows[n])


def build_table(n_max: int, q) -> QBinomTable:
    """Precompute the full triangle of Gaussian binomials up to n_max."""
    return QBinomTable(n_max, q)
