"""Brute-force expansions of h^k used as ground truth for the MPS route.

Two independent oracles:

* :func:`expand_wordwise` works in the abstract algebra.  It multiplies out
  (c_1 z_1 + ... + c_m z_m)^k term by term, normal-orders each of the m^k
  words by adjacent transpositions (collecting one weight per swap), and
  buckets the result by the residues k_j mod a.  Works for any weight
  matrix, predecessor-uniform or not.
* :func:`expand_dense_pauli` works with actual operators: it builds the
  2^n x 2^n matrix H = sum c_j M_j for qubit generators, powers it up, and
  reads off each amplitude as a trace inner product against the ordered
  monomial matrix M_1^{r_1} ... M_m^{r_m}.

The weight enumerations never prune; accumulated amplitudes that cancel to
exactly zero are dropped from the table (absent keys read as zero).
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from .errors import SizeLimitError
from .pauli import dense_matrix
from .twisting import WeightMatrix

#: Default cap on the m^k words visited by the word-wise expansion.
WORD_CAP = 10 ** 7

#: Largest qubit count for the dense oracle (2^n x 2^n matrices).
DENSE_N_CAP = 6


@dataclass
class ExpansionResult:
    """Amplitude table plus a note of how much work produced it."""

    amplitudes: dict[tuple[int, ...], complex]
    words: int = 0  # words normal-ordered (word-wise route)
    dim: int = 0    # dense matrix dimension (dense route)

    def amplitude(self, r) -> complex:
        return self.amplitudes.get(tuple(r), 0j)


def normal_order_phase(word, rows):
    """Weight picked up when sorting ``word`` by left-to-right bubble passes.

    Each adjacent swap of letters x > y contributes rows[y][x]; the result is
    independent of the transposition schedule, so this doubles as a check of
    the pair-product definition of the inversion weight.
    """
    letters = list(word)
    n = len(letters)
    phase = 1
    swapped = True
    while swapped:
        swapped = False
        for p in range(n - 1):
            x = letters[p]
            y = letters[p + 1]
            if x > y:
                phase = phase * rows[y][x]
                letters[p] = y
                letters[p + 1] = x
                swapped = True
    return phase


def expand_wordwise(
    W: WeightMatrix, c, a: int, k: int, cap: int = WORD_CAP
) -> ExpansionResult:
    """Expand h^k over all m^k words and bucket by residues mod a.

    The bucketing z_j^{k_j} -> z_j^{k_j mod a} is only meaningful when every
    weight is an a-th root of unity, which is validated up front.
    """
    c = tuple(complex(x) for x in c)
    if len(c) != W.m:
        raise ValueError(f"{len(c)} coefficients for m={W.m} generators")
    if a < 2:
        raise ValueError(f"generator order must be >= 2, got {a}")
    if k < 0:
        raise ValueError(f"power must be >= 0, got {k}")
    if W.order is not None and W.order != a:
        raise ValueError(f"weight matrix has order {W.order}, expansion asked for {a}")
    if W.order is None and np.max(np.abs(W.omega ** a - 1)) > 1e-12:
        raise ValueError(f"weights are not all {a}-th roots of unity")
    words = W.m ** k
    if words > cap:
        raise SizeLimitError(f"m^k = {words} words exceed the cap of {cap}")

    m = W.m
    rows = W.rows()
    amps: dict[tuple[int, ...], complex] = defaultdict(complex)
    for word in itertools.product(range(m), repeat=k):
        phase = normal_order_phase(word, rows)
        coeff = 1
        counts = [0] * m
        for letter in word:
            coeff = coeff * c[letter]
            counts[letter] += 1
        key = tuple(cnt % a for cnt in counts)
        amps[key] += phase * coeff
    table = {r: v for r, v in amps.items() if v != 0}
    return ExpansionResult(table, words=words)


def _f2_kernel(gens) -> list[int]:
    """Kernel of the generators' symplectic vectors over F2, as basis masks.

    Each generator becomes the bit vector (u | w) in F2^{2n}; the returned
    masks index generator subsets whose digit-wise sum vanishes.
    """
    n = gens[0].n
    pivots: dict[int, tuple[int, int]] = {}
    kernel = []
    for idx, g in enumerate(gens):
        vec = 0
        for bit, digit in enumerate(g.u + g.w):
            if digit:
                vec |= 1 << bit
        combo = 1 << idx
        while vec:
            p = vec.bit_length() - 1
            if p not in pivots:
                pivots[p] = (vec, combo)
                break
            pv, pc = pivots[p]
            vec ^= pv
            combo ^= pc
        else:
            kernel.append(combo)
    return kernel


def expand_dense_pauli(gens, c, k: int, n_cap: int = DENSE_N_CAP) -> ExpansionResult:
    """Expand H^k for qubit generators via explicit matrices.

    H = sum_j c_j M_j is powered by repeated multiplication and each
    amplitude extracted as Tr(B_r^dagger H^k) / 2^n with B_r the matrix of
    the ordered monomial.  Extraction is exact when the ordered monomials
    are trace-orthogonal, which holds when the generators' symplectic
    vectors are independent over F2, or when their only dependency involves
    an odd number of generators: the residue parity sum(r) = k (mod 2) then
    separates each aliased pair of monomials, and only keys of the correct
    parity (the others vanish identically) are reported.
    """
    gens = list(gens)
    c = tuple(complex(x) for x in c)
    if not gens:
        raise ValueError("need at least one generator")
    if len(c) != len(gens):
        raise ValueError(f"{len(c)} coefficients for {len(gens)} generators")
    n, d = gens[0].n, gens[0].d
    if d != 2 or any(g.d != 2 or g.n != n for g in gens):
        raise ValueError("dense expansion is implemented for qubit generators only")
    if n > n_cap:
        raise SizeLimitError(f"dense expansion capped at n <= {n_cap}, got n={n}")
    if k < 0:
        raise ValueError(f"power must be >= 0, got {k}")
    kernel = _f2_kernel(gens)
    if len(kernel) > 1 or (kernel and kernel[0].bit_count() % 2 == 0):
        raise ValueError(
            "generators have an even-weight dependency over F2; "
            "ordered monomials alias and amplitudes are not extractable"
        )

    mats = [dense_matrix(g) for g in gens]
    dim = 2 ** n
    h = sum(cj * mj for cj, mj in zip(c, mats))
    hk = np.eye(dim, dtype=complex)
    for _ in range(k):
        hk = hk @ h

    m = len(gens)
    parity = k % 2
    amps: dict[tuple[int, ...], complex] = {}

    def walk(j, monomial, prefix, weight):
        if j == m:
            if weight % 2 == parity:
                val = complex(np.vdot(monomial, hk)) / dim
                if val != 0:
                    amps[prefix] = val
            return
        walk(j + 1, monomial, prefix + (0,), weight)
        walk(j + 1, monomial @ mats[j], prefix + (1,), weight + 1)

    walk(0, np.eye(dim, dtype=complex), (), 0)
    return ExpansionResult(amps, dim=dim)
