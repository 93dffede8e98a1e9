"""Twisted multinomial routes, ordering recognition, and the factorization."""

import itertools
import random
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from twistamp import (
    Composition,
    SizeLimitError,
    WeightMatrix,
    check_predecessor_uniform,
    compositions,
    exhaustive_pu_search,
    find_pu_ordering,
    multiset_permutations,
    pu_weight_matrix,
    q_binom_pascal,
    reorder_phase,
    root_of_unity,
    twisted_multinomial_bruteforce,
    twisted_multinomial_factorized,
    twisted_multinomial_recurrence,
    weight_matrix_from_exponents,
)
from twistamp.selftest import counterexample_matrix
from twistamp.twisting import shuffle_count

W_VAL = 0.6 - 0.7j  # generic nonzero weight used across examples


def _pair_matrix(w):
    return WeightMatrix([[1, w], [1 / w, 1]])


def _is_pu(W, perm, tol=1e-12):
    rows = W.rows()
    for p in range(1, W.m):
        vals = [rows[perm[i]][perm[p]] for i in range(p)]
        if any(abs(v - vals[0]) > tol for v in vals):
            return False
    return True


# ----------------------------------------------------------- weight matrix

def test_weight_matrix_validation():
    with pytest.raises(ValueError):
        WeightMatrix([[1, 2], [3, 4], [5, 6]])  # not square
    with pytest.raises(ValueError):
        WeightMatrix([[1, 0], [0, 1]])  # zero entries
    with pytest.raises(ValueError):
        WeightMatrix([[2, 1], [1, 1]])  # diagonal not 1
    with pytest.raises(ValueError):
        WeightMatrix([[1, 2], [2, 1]])  # omega[1][0] != 1/omega[0][1]
    with pytest.raises(ValueError):
        WeightMatrix([[1, 2], [0.5, 1]], order=2)  # 2 is not a square root of 1
    W = WeightMatrix([[1, -1], [-1, 1]], order=2)
    assert W.m == 2 and W.order == 2


def test_weight_matrix_immutable():
    W = pu_weight_matrix((1, -1))
    with pytest.raises(ValueError):
        W.omega[0, 1] = 5


def test_pu_weight_matrix_conventions():
    with pytest.raises(ValueError):
        pu_weight_matrix((2, -1))  # leading parameter must be 1
    with pytest.raises(ValueError):
        pu_weight_matrix((1, 0))
    W = pu_weight_matrix((1, W_VAL, -1j))
    rows = W.rows()
    assert rows[0][1] == W_VAL and rows[0][2] == -1j and rows[1][2] == -1j


def test_root_of_unity_exact_quarters():
    assert root_of_unity(0, 7) == 1
    assert root_of_unity(1, 2) == -1
    assert root_of_unity(1, 4) == 1j
    assert root_of_unity(3, 4) == -1j
    assert abs(root_of_unity(1, 3) - complex(-0.5, 3 ** 0.5 / 2)) < 1e-15


# ----------------------------------------------------------- enumeration

def test_multiset_permutations_lexicographic():
    words = list(multiset_permutations((2, 1)))
    assert words == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert list(multiset_permutations((0, 0))) == [()]


def test_shuffle_count():
    assert shuffle_count((2, 1)) == 3
    assert shuffle_count((2, 2, 2)) == 90
    assert shuffle_count(()) == 1


def test_compositions_enumeration():
    comps = list(compositions(3, 2))
    assert comps == [(0, 3), (1, 2), (2, 1), (3, 0)]
    assert len(list(compositions(6, 4))) == 84  # C(9, 3)


def test_composition_type():
    comp = Composition((1, 0, 2))
    assert comp.k == 3 and comp.m == 3
    assert comp.prefix == (1, 1, 3)
    with pytest.raises(ValueError):
        Composition((1, -1))


# ----------------------------------------------------------- brute force

def test_bruteforce_pair():
    # two words: (0,1) no inversions, (1,0) one inversion of weight w
    assert abs(twisted_multinomial_bruteforce((1, 1), _pair_matrix(W_VAL)) - (1 + W_VAL)) < 1e-14


def test_bruteforce_single_letter():
    W = pu_weight_matrix((1, W_VAL, 2j))
    assert twisted_multinomial_bruteforce((4, 0, 0), W) == 1


def test_bruteforce_two_one_pu():
    q = 0.2 + 1.4j
    W = pu_weight_matrix((1, q))
    # three words 001, 010, 100 carrying 0, 1, 2 inversions
    assert abs(twisted_multinomial_bruteforce((2, 1), W) - (1 + q + q * q)) < 1e-13


def test_bruteforce_empty_composition_is_one():
    # the empty word is the unique arrangement; its empty product is 1
    assert twisted_multinomial_bruteforce((0, 0, 0), pu_weight_matrix((1, 1j, -1))) == 1


def test_bruteforce_cap():
    W = pu_weight_matrix((1, -1))
    with pytest.raises(SizeLimitError):
        twisted_multinomial_bruteforce((10, 10), W, cap=1000)


def test_bruteforce_dimension_mismatch():
    with pytest.raises(ValueError):
        twisted_multinomial_bruteforce((1, 1, 1), _pair_matrix(-1))


# ----------------------------------------------------------- recurrence

def test_recurrence_pair():
    assert abs(twisted_multinomial_recurrence((1, 1), _pair_matrix(W_VAL)) - (1 + W_VAL)) < 1e-14


def test_recurrence_base_case():
    W = pu_weight_matrix((1, 2j, -0.5))
    assert twisted_multinomial_recurrence((1, 0, 0), W) == 1


def test_recurrence_signs_cancel():
    # six arrangements of (1,1,1) with all weights -1 carry signs
    # +1 -1 -1 +1 +1 -1, summing to zero
    W = pu_weight_matrix((1, -1, -1))
    assert twisted_multinomial_recurrence((1, 1, 1), W) == 0


def test_recurrence_matches_bruteforce_random():
    rng = random.Random(7)
    for _ in range(30):
        m = rng.randint(1, 4)
        a = rng.choice((2, 3, 4))
        W = weight_matrix_from_exponents(
            m, a, {(i, j): rng.randrange(a) for i in range(m) for j in range(i + 1, m)}
        )
        parts = [0] * m
        for _ in range(rng.randint(0, 7)):
            parts[rng.randrange(m)] += 1
        brute = twisted_multinomial_bruteforce(parts, W)
        rec = twisted_multinomial_recurrence(parts, W)
        assert abs(rec - brute) <= 1e-10 * max(1.0, abs(brute))


# ----------------------------------------------------------- recognition

def test_check_predecessor_uniform_all_minus_one():
    W = pu_weight_matrix((1, -1, -1, -1, -1))
    assert check_predecessor_uniform(W) == (-1, -1, -1, -1)


def test_check_predecessor_uniform_m2():
    assert check_predecessor_uniform(_pair_matrix(W_VAL)) == (W_VAL,)


def test_check_predecessor_uniform_rejects():
    W = weight_matrix_from_exponents(3, 2, {(0, 1): 0, (0, 2): 0, (1, 2): 1})
    assert check_predecessor_uniform(W) is None


def test_find_pu_ordering_counterexample():
    assert find_pu_ordering(counterexample_matrix()) is None


def test_find_pu_ordering_identity_for_anticommuting():
    for m in (2, 3, 5, 7):
        W = pu_weight_matrix((1,) + (-1,) * (m - 1), order=2)
        pu = find_pu_ordering(W)
        assert pu.perm == tuple(range(m))
        assert pu.qs == (1,) + (-1,) * (m - 1)


def test_find_pu_ordering_trivial():
    pu = find_pu_ordering(WeightMatrix([[1]]))
    assert pu.perm == (0,) and pu.qs == (complex(1),)


def test_find_pu_ordering_needs_permutation():
    # identity ordering fails (column 3 not constant) but (0, 2, 1) works
    W = weight_matrix_from_exponents(3, 2, {(0, 1): 1, (0, 2): 0, (1, 2): 1})
    assert check_predecessor_uniform(W) is None
    pu = find_pu_ordering(W)
    assert pu is not None
    assert _is_pu(W, pu.perm)


def test_restriction_of_found_ordering_stays_pu():
    rng = random.Random(11)
    found = 0
    while found < 15:
        m = rng.randint(2, 6)
        W = weight_matrix_from_exponents(
            m, 2, {(i, j): rng.randrange(2) for i in range(m) for j in range(i + 1, m)}
        )
        pu = find_pu_ordering(W)
        if pu is None:
            continue
        found += 1
        for _ in range(5):
            subset = [g for g in pu.perm if rng.random() < 0.6]
            if len(subset) < 2:
                continue
            sub = sorted(range(len(subset)))
            subW = WeightMatrix(
                [[W.omega[a][b] for b in subset] for a in subset], order=2
            )
            assert _is_pu(subW, sub)


def test_exhaustive_counterexample_and_cap():
    assert exhaustive_pu_search(counterexample_matrix()) is None
    with pytest.raises(SizeLimitError):
        exhaustive_pu_search(pu_weight_matrix((1,) + (-1,) * 8, order=2))


def test_exhaustive_all_m3_sign_matrices_found():
    for bits in itertools.product((0, 1), repeat=3):
        pairs = [(0, 1), (0, 2), (1, 2)]
        W = weight_matrix_from_exponents(3, 2, dict(zip(pairs, bits)))
        assert exhaustive_pu_search(W) is not None


def test_exhaustive_prefers_identity():
    W = pu_weight_matrix((1, 1j, -1), order=4)
    pu = exhaustive_pu_search(W)
    assert pu.perm == (0, 1, 2)
    assert pu.qs == (complex(1), 1j, complex(-1))


def test_recognizer_complete_on_all_m4_sign_matrices():
    pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    n_orderable = 0
    for bits in itertools.product((0, 1), repeat=6):
        W = weight_matrix_from_exponents(4, 2, dict(zip(pairs, bits)))
        greedy = find_pu_ordering(W)
        exhaustive = exhaustive_pu_search(W)
        assert (greedy is None) == (exhaustive is None)
        if greedy is not None:
            n_orderable += 1
            assert _is_pu(W, greedy.perm)
    assert n_orderable < 64  # the counterexample family exists


# ----------------------------------------------------------- factorization

def test_factorized_pair():
    q = -0.3 + 0.45j
    assert abs(twisted_multinomial_factorized((1, 1), (1, q)) - (1 + q)) < 1e-14


def test_factorized_three_singles():
    q2, q3 = 1.5j, 0.4 - 0.2j
    got = twisted_multinomial_factorized((1, 1, 1), (1, q2, q3))
    want = (1 + q2) * (1 + q3 + q3 * q3)
    assert abs(got - want) < 1e-13
    brute = twisted_multinomial_bruteforce((1, 1, 1), pu_weight_matrix((1, q2, q3)))
    assert abs(got - brute) < 1e-13


def test_factorized_single_block_is_one():
    assert twisted_multinomial_factorized((5, 0, 0), (1, 2j, -3)) == 1


def test_factorized_rejects_zero_parameter():
    with pytest.raises(ValueError):
        twisted_multinomial_factorized((1, 1), (1, 0))


def test_factorized_commutative_limit_exact_integer():
    comp = (3, 2, 4)
    value = twisted_multinomial_factorized(comp, (1, 1, 1))
    assert isinstance(value, int)
    assert value == factorial(9) // (factorial(3) * factorial(2) * factorial(4))


@given(st.data())
def test_factorization_identity_random(data):
    m = data.draw(st.integers(1, 4))
    k = data.draw(st.integers(0, 7))
    qs = (1,) + tuple(
        data.draw(
            st.complex_numbers(min_magnitude=0.25, max_magnitude=2.0,
                               allow_nan=False, allow_infinity=False)
        )
        for _ in range(m - 1)
    )
    parts = [0] * m
    for _ in range(k):
        parts[data.draw(st.integers(0, m - 1))] += 1
    W = pu_weight_matrix(qs)
    brute = twisted_multinomial_bruteforce(parts, W)
    fact = twisted_multinomial_factorized(parts, qs)
    assert abs(brute - fact) <= 1e-9 * max(1.0, abs(fact))


def test_factorized_uses_pascal_route():
    comp = Composition((2, 3, 1))
    qs = (1, 0.9j, -1.1)
    want = 1
    for ell, kj, qj in zip(comp.prefix, comp.parts, qs):
        want = want * q_binom_pascal(ell, kj, qj)
    assert twisted_multinomial_factorized(comp, qs) == want


# ----------------------------------------------------------- reorder phase

def test_reorder_phase_identity_and_swap():
    W = _pair_matrix(W_VAL)
    assert reorder_phase(W, (0, 1), (1, 1)) == 1
    # z_1 z_0 = omega[0][1] z_0 z_1
    assert reorder_phase(W, (1, 0), (1, 1)) == W_VAL
    assert reorder_phase(W, (1, 0), (1, 0)) == 1  # exponent zero on one side


def test_reorder_phase_matches_explicit_sort():
    rng = random.Random(3)
    for _ in range(40):
        m = rng.randint(2, 5)
        a = rng.choice((2, 3))
        W = weight_matrix_from_exponents(
            m, a, {(i, j): rng.randrange(a) for i in range(m) for j in range(i + 1, m)}
        )
        perm = list(range(m))
        rng.shuffle(perm)
        s = [rng.randrange(a) for _ in range(m)]
        # expand the permuted monomial into a word and sort it letter by letter
        word = []
        for p in range(m):
            word.extend([perm[p]] * s[p])
        rows = W.rows()
        phase = 1
        arr = list(word)
        for i in range(1, len(arr)):
            j = i
            while j > 0 and arr[j - 1] > arr[j]:
                phase *= rows[arr[j]][arr[j - 1]]
                arr[j - 1], arr[j] = arr[j], arr[j - 1]
                j -= 1
        got = reorder_phase(W, tuple(perm), tuple(s))
        assert abs(got - phase) <= 1e-12 * max(1.0, abs(phase))
