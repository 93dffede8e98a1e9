"""Twisted multinomial coefficients and predecessor-uniform weight matrices.

A weight matrix Omega assigns a nonzero complex weight omega[i][j] to each
ordered generator pair.  The twisted multinomial coefficient of a composition
(k_1, ..., k_m) is the sum, over all arrangements of the multiset
{1^k_1, ..., m^k_m}, of the product of omega[small][big] over the inversions
of the arrangement.  With a single weight q it reduces to the classical
q-multinomial.

A matrix is predecessor-uniform when each generator j carries one weight q_j
against every earlier generator (omega[i][j] = q_j for all i < j).  Under
that condition the twisted multinomial factorizes into Gaussian binomials
with per-generator parameters, which is what makes the matrix-product
representation in :mod:`twistamp.mps` exact.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass
from math import factorial

import numpy as np

from .errors import SizeLimitError
from .qbinom import q_binom_pascal

#: Absolute tolerance for comparing weight-matrix entries.  Entries are roots
#: of unity or exact user inputs, so comparisons are near-exact.
UNIFORMITY_TOL = 1e-12

#: Default cap on the number of arrangements the brute-force sum will visit.
SHUFFLE_CAP = 10 ** 6

#: Largest m for which the exhaustive m! ordering search is allowed.
EXHAUSTIVE_M_CAP = 8


def root_of_unity(t: int, a: int) -> complex:
    """e^(2*pi*i*t/a), exact for the quarter-circle cases (a | 4t)."""
    if a < 1:
        raise ValueError(f"order must be positive, got {a}")
    t %= a
    if 4 * t % a == 0:
        return (1 + 0j, 1j, -1 + 0j, -1j)[4 * t // a]
    return cmath.exp(2j * cmath.pi * t / a)


class WeightMatrix:
    """Validated m x m matrix of pairwise inversion weights.

    Requirements: unit diagonal, nonzero entries, and omega[j][i] equal to
    1/omega[i][j] (checked via |omega[i][j]*omega[j][i] - 1| <= tol, which is
    scale-free).  When ``order`` is given, every entry must additionally be
    an order-th root of unity.  The matrix is immutable after validation.
    """

    def __init__(self, omega, order: int | None = None, tol: float = UNIFORMITY_TOL):
        arr = np.array(omega, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise ValueError(f"omega must be square and non-empty, got shape {arr.shape}")
        m = arr.shape[0]
        if np.any(arr == 0):
            raise ValueError("weight matrix entries must be nonzero")
        if np.max(np.abs(np.diagonal(arr) - 1)) > tol:
            raise ValueError("weight matrix diagonal must be 1")
        recip = np.abs(arr * arr.T - 1)
        if np.max(recip) > tol:
            i, j = np.unravel_index(np.argmax(recip), recip.shape)
            raise ValueError(
                f"omega[{j}][{i}] is not the inverse of omega[{i}][{j}]"
            )
        if order is not None:
            if order < 2:
                raise ValueError(f"order must be >= 2, got {order}")
            if np.max(np.abs(arr ** order - 1)) > tol:
                raise ValueError(f"entries are not all {order}-th roots of unity")
        arr.setflags(write=False)
        self.omega = arr
        self.m = m
        self.order = order
        # plain nested lists: much faster than ndarray indexing in the
        # enumeration loops below
        self._rows = [[complex(x) for x in row] for row in arr]

    def rows(self) -> list[list[complex]]:
        """Entries as nested Python lists (for tight scalar loops)."""
        return self._rows

    def __eq__(self, other):
        return (
            isinstance(other, WeightMatrix)
            and self.order == other.order
            and np.array_equal(self.omega, other.omega)
        )

    def __repr__(self):
        return f"WeightMatrix(m={self.m}, order={self.order})"


def pu_weight_matrix(qs, order: int | None = None) -> WeightMatrix:
    """Predecessor-uniform matrix with omega[i][j] = qs[j] for i < j.

    ``qs[0]`` must be 1 (the first generator has no predecessors).
    """
    qs = tuple(qs)
    if not qs:
        raise ValueError("qs must be non-empty")
    if qs[0] != 1:
        raise ValueError(f"qs[0] must be 1 by convention, got {qs[0]!r}")
    if any(q == 0 for q in qs):
        raise ValueError("qs entries must be nonzero")
    m = len(qs)
    omega = [[complex(1)] * m for _ in range(m)]
    for j in range(m):
        for i in range(j):
            omega[i][j] = complex(qs[j])
            omega[j][i] = 1 / complex(qs[j])
    return WeightMatrix(omega, order=order)


def weight_matrix_from_exponents(m: int, a: int, exponents) -> WeightMatrix:
    """Matrix with omega[i][j] = e^(2*pi*i*t/a) for each ((i, j), t) given.

    ``exponents`` maps 0-based pairs (i, j) with i < j to integer exponents;
    unlisted pairs default to weight 1.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    omega = [[complex(1)] * m for _ in range(m)]
    for (i, j), t in exponents.items():
        if not 0 <= i < j < m:
            raise ValueError(f"exponent pair ({i}, {j}) out of range for m={m}")
        omega[i][j] = root_of_unity(t, a)
        omega[j][i] = root_of_unity(-t, a)
    return WeightMatrix(omega, order=a)


@dataclass(frozen=True)
class Composition:
    """Non-negative integer parts (k_1, ..., k_m) with prefix sums."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 0 for p in parts):
            raise ValueError(f"parts must be non-negative, got {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def m(self) -> int:
        return len(self.parts)

    @property
    def k(self) -> int:
        return sum(self.parts)

    @property
    def prefix(self) -> tuple[int, ...]:
        """(l_1, ..., l_m) with l_j = k_1 + ... + k_j."""
        return tuple(itertools.accumulate(self.parts))


def compositions(k: int, m: int):
    """Yield every tuple of m non-negative integers summing to k (lexicographic)."""
    if m < 1:
        if k == 0:
            yield ()
        return
    if m == 1:
        yield (k,)
        return
    for first in range(k + 1):
        for rest in compositions(k - first, m - 1):
            yield (first,) + rest


def _as_parts(comp) -> tuple[int, ...]:
    if isinstance(comp, Composition):
        return comp.parts
    return Composition(tuple(comp)).parts


def multiset_permutations(parts):
    """Yield all words (tuples of 0-based letters) with letter j appearing
    parts[j] times, in lexicographic order."""
    k = sum(parts)
    counts = list(parts)
    word = [0] * k

    def extend(pos):
        if pos == k:
            yield tuple(word)
            return
        for letter, c in enumerate(counts):
            if c:
                counts[letter] = c - 1
                word[pos] = letter
                yield from extend(pos + 1)
                counts[letter] = c
        return

    yield from extend(0)


def _inversion_weight(word, rows):
    """Product of rows[small][big] over all inversions of ``word``."""
    phase = 1
    for s in range(1, len(word)):
        ws = word[s]
        row_s = None
        for r in range(s):
            wr = word[r]
            if wr > ws:
                if row_s is None:
                    row_s = rows[ws]
                phase = phase * row_s[wr]
    return phase


def shuffle_count(parts) -> int:
    """Number of arrangements of the multiset {1^k_1, ..., m^k_m}."""
    k = sum(parts)
    count = factorial(k)
    for p in parts:
        count //= factorial(p)
    return count


def twisted_multinomial_bruteforce(comp, W: WeightMatrix, cap: int = SHUFFLE_CAP):
    """Twisted multinomial by direct summation over all arrangements.

    The defining sum: for each word with letter j appearing k_j times,
    multiply omega[small][big] over every inversion pair, then add up.
    Exponential cost; refuses compositions with more than ``cap`` words.
    """
    parts = _as_parts(comp)
    if len(parts) != W.m:
        raise ValueError(f"composition has {len(parts)} parts, matrix has m={W.m}")
    if shuffle_count(parts) > cap:
        raise SizeLimitError(
            f"{shuffle_count(parts)} arrangements exceed the cap of {cap}"
        )
    rows = W.rows()
    total = 0
    for word in multiset_permutations(parts):
        total += _inversion_weight(word, rows)
    return total


def twisted_multinomial_recurrence(comp, W: WeightMatrix):
    """Twisted multinomial by memoized recursion on the leading letter.

    Classifying arrangements by their first letter i gives
    T(k_1,...,k_m) = sum over i with k_i >= 1 of
    T(..., k_i - 1, ...) * prod_{j < i} omega[j][i]^{k_j}.
    Same value as :func:`twisted_multinomial_bruteforce` with different
    control flow; serves as an independent oracle.
    """
    parts = _as_parts(comp)
    if len(parts) != W.m:
        raise ValueError(f"composition has {len(parts)} parts, matrix has m={W.m}")
    rows = W.rows()
    memo: dict[tuple[int, ...], complex] = {}

    def rec(state):
        if sum(state) == 0:
            return 1
        cached = memo.get(state)
        if cached is not None:
            return cached
        total = 0
        for i, ki in enumerate(state):
            if ki == 0:
                continue
            phase = 1
            for j in range(i):
                kj = state[j]
                if kj:
                    phase = phase * rows[j][i] ** kj
            child = state[:i] + (ki - 1,) + state[i + 1:]
            total = total + rec(child) * phase
        memo[state] = total
        return total

    return rec(parts)


def check_predecessor_uniform(W: WeightMatrix, tol: float = UNIFORMITY_TOL):
    """Uniform column weights under the identity ordering, if they exist.

    Returns (q_2, ..., q_m) when omega[i][j] is constant over i < j for every
    column j, else None.
    """
    rows = W.rows()
    qs = []
    for j in range(1, W.m):
        q = rows[0][j]
        if any(abs(rows[i][j] - q) > tol for i in range(1, j)):
            return None
        qs.append(q)
    return tuple(qs)


@dataclass(frozen=True)
class PuOrdering:
    """A generator ordering under which the matrix is predecessor-uniform.

    ``perm[p]`` is the original index of the generator placed at position p;
    ``qs[p]`` is its uniform weight against all earlier positions (qs[0] = 1).
    """

    perm: tuple[int, ...]
    qs: tuple[complex, ...]


def find_pu_ordering(W: WeightMatrix, tol: float = UNIFORMITY_TOL):
    """Greedy search for a predecessor-uniform ordering, or None.

    Builds the permutation from the last position backwards: at each step any
    remaining generator whose weights against the rest of the remaining set
    are constant may be placed last.  This is complete: if an ordering of a
    set exists, its restriction to any subset (preserving relative order) is
    again predecessor-uniform, because restriction only shrinks predecessor
    sets; in particular a valid last element always exists.  O(m^3) scalar
    comparisons.

    Candidates are scanned from the largest remaining index down, so a matrix
    that is already predecessor-uniform comes back with the identity
    permutation.
    """
    rows = W.rows()
    remaining = list(range(W.m))  # kept in increasing order
    perm: list[int] = [0] * W.m
    qs: list[complex] = [complex(1)] * W.m
    for pos in range(W.m - 1, -1, -1):
        found = None
        for g in reversed(remaining):
            vals = [rows[h][g] for h in remaining if h != g]
            if not vals:
                found = (g, complex(1))
                break
            q = vals[0]
            if all(abs(v - q) <= tol for v in vals):
                found = (g, q)
                break
        if found is None:
            return None
        g, q = found
        perm[pos] = g
        qs[pos] = q if pos > 0 else complex(1)
        remaining.remove(g)
    return PuOrdering(tuple(perm), tuple(qs))


def exhaustive_pu_search(W: WeightMatrix, tol: float = UNIFORMITY_TOL):
    """Try all m! orderings; return the lexicographically first that is
    predecessor-uniform, or None.  Test oracle for :func:`find_pu_ordering`."""
    if W.m > EXHAUSTIVE_M_CAP:
        raise SizeLimitError(
            f"exhaustive ordering search capped at m <= {EXHAUSTIVE_M_CAP}, got m={W.m}"
        )
    rows = W.rows()
    for perm in itertools.permutations(range(W.m)):
        qs = [complex(1)]
        ok = True
        for p in range(1, W.m):
            g = perm[p]
            q = rows[perm[0]][g]
            if any(abs(rows[perm[i]][g] - q) > tol for i in range(1, p)):
                ok = False
                break
            qs.append(q)
        if ok:
            return PuOrdering(perm, tuple(qs))
    return None


def twisted_multinomial_factorized(comp, qs):
    """Twisted multinomial of a predecessor-uniform matrix as a product of
    Gaussian binomials: prod_j C(l_j, k_j)_{q_j} with l_j = k_1 + ... + k_j.

    Valid for arbitrary nonzero complex parameters q_j; with integer q_j the
    result stays an exact integer.
    """
    parts = _as_parts(comp)
    qs = tuple(qs)
    if len(qs) != len(parts):
        raise ValueError(f"{len(parts)} parts but {len(qs)} parameters")
    if any(q == 0 for q in qs):
        raise ValueError("parameters q_j must be nonzero")
    result = 1
    ell = 0
    for kj, qj in zip(parts, qs):
        ell += kj
        result = result * q_binom_pascal(ell, kj, qj)
    return result


def reorder_phase(W: WeightMatrix, perm, residues):
    """Phase relating an ordered monomial in permuted generator order to the
    one in original order.

    With z_b z_a = omega[a][b] * z_a z_b for a < b, sorting the blocks of
    z_{perm[0]}^{s_0} ... z_{perm[m-1]}^{s_{m-1}} into increasing original
    index multiplies by omega[small][big]^(s_p * s_p') for every pair of
    positions p < p' with perm[p] > perm[p'].  Hence

        z_{perm[0]}^{s_0} ... z_{perm[m-1]}^{s_{m-1}}
            = phase * z_0^{r_0} ... z_{m-1}^{r_{m-1}},

    where r[perm[p]] = s_p and ``phase`` is the value returned here.
    """
    perm = tuple(perm)
    residues = tuple(residues)
    if len(perm) != W.m or len(residues) != W.m:
        raise ValueError("perm and residues must both have length m")
    rows = W.rows()
    phase = 1
    for p in range(W.m):
        gp = perm[p]
        sp = residues[p]
        if sp == 0:
            continue
        for p2 in range(p + 1, W.m):
            gq = perm[p2]
            if gp > gq:
                e = sp * residues[p2]
                if e:
                    phase = phase * rows[gq][gp] ** e
    return phase
