"""Structure and values of the matrix-product amplitude representation."""

import itertools
import random
from math import comb

import numpy as np
import pytest

from twistamp import (
    SizeLimitError,
    all_amplitudes,
    build_model,
    contract,
    contract_polynomial,
    q_binom_minus1,
    root_of_unity,
)


def test_single_generator_site_matrices():
    c = 0.8 - 0.3j
    model = build_model((c,), (1,), a=2, d=1)
    # physical index 0 owns the diagonal (degree steps 0), index 1 the
    # superdiagonal (degree step 1 with weight c * C(1,1)_q = c)
    assert np.array_equal(model.site[0][0], np.array([[1, 0], [0, 1]]))
    assert np.array_equal(model.site[0][1], np.array([[0, c], [0, 0]]))
    assert contract(model, (1,)) == c
    assert contract(model, (0,)) == 0


def test_two_anticommuting_generators_square():
    model = build_model((1, 1), (1, -1), a=2, d=2)
    # h^2 = 2 + (1 + omega) z1 z2 with omega = -1
    assert contract(model, (0, 0)) == 2
    assert contract(model, (1, 1)) == 0


def test_two_commuting_generators_square():
    model = build_model((1, 1), (1, 1), a=2, d=2)
    # h^2 = z1^2 + 2 z1 z2 + z2^2 = 2 + 2 z1 z2
    assert contract(model, (1, 1)) == 2
    assert contract(model, (0, 0)) == 2


def test_site_matrices_upper_triangular_and_selection_rule():
    rng = random.Random(5)
    for a in (2, 3):
        m, d = 3, 5
        qs = (1,) + tuple(root_of_unity(rng.randrange(a), a) for _ in range(m - 1))
        c = tuple(complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(m))
        model = build_model(c, qs, a, d=d)
        for site in model.site:
            assert site.shape == (a, d + 1, d + 1)
            for r in range(a):
                for lo in range(d + 1):
                    for hi in range(d + 1):
                        entry = site[r, lo, hi]
                        if hi < lo:
                            assert entry == 0  # upper triangular in the degree
                        elif (hi - lo) % a != r:
                            assert entry == 0  # residue selection rule
            # each (lo, hi) pair is owned by exactly one physical index
            for lo in range(d + 1):
                for hi in range(lo, d + 1):
                    owners = [r for r in range(a) if site[r, lo, hi] != 0]
                    assert owners in ([], [(hi - lo) % a])


def test_minus_one_sparsity_pattern():
    # with c = 1 and q = -1 the entries are exactly the q = -1 closed form
    model = build_model((1.0, 1.0), (1, -1), a=2, d=6)
    site = model.site[1]
    for lo in range(7):
        for hi in range(lo, 7):
            assert site[(hi - lo) % 2, lo, hi] == q_binom_minus1(hi, hi - lo)


def test_commuting_entries_are_scaled_binomials():
    c = 0.5 + 0.25j
    model = build_model((1.0, c), (1, 1), a=2, d=5)
    site = model.site[1]
    for lo in range(6):
        for hi in range(lo, 6):
            delta = hi - lo
            want = c ** delta * comb(hi, delta)
            assert abs(site[delta % 2, lo, hi] - want) < 1e-13


def test_validation_errors():
    with pytest.raises(ValueError):
        build_model((), (), a=2, d=3)
    with pytest.raises(ValueError):
        build_model((1,), (1, 1), a=2, d=3)
    with pytest.raises(ValueError):
        build_model((1,), (1,), a=1, d=3)
    with pytest.raises(ValueError):
        build_model((1,), (1,), a=2, d=-1)
    with pytest.raises(ValueError):
        build_model((1, 1), (1, 0), a=2, d=3)
    with pytest.raises(ValueError):
        build_model((1,), (1,), a=2, d=2, vR=(1, 0))  # wrong boundary length
    model = build_model((1, 1), (1, -1), a=2, d=2)
    with pytest.raises(ValueError):
        contract(model, (0,))
    with pytest.raises(ValueError):
        contract(model, (0, 2))
    with pytest.raises(ValueError):
        contract_polynomial(model, (1, 0), (0, 0))


def test_zero_coefficient_forces_zero_residue():
    model = build_model((0.0, 1.0), (1, -1), a=2, d=3)
    table = all_amplitudes(model, prune=None)
    for r, val in table.items():
        if r[0] != 0:
            assert val == 0


def test_polynomial_constant_term_only():
    model = build_model((0.4, -0.9j), (1, -1), a=2, d=3)
    poly = (1, 0, 0, 0)
    assert contract_polynomial(model, poly, (0, 0)) == 1
    for r in ((1, 0), (0, 1), (1, 1)):
        assert contract_polynomial(model, poly, r) == 0


def test_polynomial_monomial_boundary_equals_basis_vector():
    model = build_model((0.7, 0.2j, -0.5), (1, -1, 1), a=2, d=4)
    e3 = (0, 0, 0, 1, 0)
    for r in itertools.product((0, 1), repeat=3):
        assert contract_polynomial(model, e3, r) == contract(model, r, vR=e3)


def test_polynomial_linearity_random():
    rng = random.Random(9)
    for _ in range(10):
        m = rng.randint(1, 3)
        deg = rng.randint(0, 3)
        a = rng.choice((2, 3))
        qs = (1,) + tuple(root_of_unity(rng.randrange(a), a) for _ in range(m - 1))
        c = tuple(complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(m))
        poly = tuple(complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(deg + 1))
        model = build_model(c, qs, a, d=deg)
        for r in itertools.product(range(a), repeat=m):
            combo = 0
            for j, aj in enumerate(poly):
                e_j = [0.0] * (deg + 1)
                e_j[j] = 1.0
                combo += aj * contract(model, r, vR=e_j)
            got = contract_polynomial(model, poly, r)
            assert abs(got - combo) <= 1e-10 * max(1.0, abs(combo))


def test_lower_degree_query_in_larger_model():
    # a degree-k monomial inside a (d+1)-dimensional model uses boundary e_k
    c = (0.3, -0.6)
    small = build_model(c, (1, -1), a=2, d=2)
    big = build_model(c, (1, -1), a=2, d=5)
    e2 = [0.0] * 6
    e2[2] = 1.0
    for r in itertools.product((0, 1), repeat=2):
        assert abs(contract(big, r, vR=e2) - contract(small, r)) < 1e-14


def test_all_amplitudes_single_generator():
    c = 1.5 - 2j
    model = build_model((c,), (1,), a=2, d=1)
    assert all_amplitudes(model) == {(1,): c}


def test_all_amplitudes_prune_and_keep():
    model = build_model((1, 1), (1, -1), a=2, d=2)
    assert all_amplitudes(model) == {(0, 0): 2}
    full = all_amplitudes(model, prune=None)
    assert set(full) == set(itertools.product((0, 1), repeat=2))
    assert full[(1, 0)] == 0


def test_qutrit_pair_square():
    # h^2 = z1^2 + (1 + q) z1 z2 + z2^2 for order 3 generators
    q = root_of_unity(1, 3)
    model = build_model((1, 1), (1, q), a=3, d=2)
    table = all_amplitudes(model)
    assert set(table) == {(2, 0), (1, 1), (0, 2)}
    assert table[(2, 0)] == 1 and table[(0, 2)] == 1
    assert abs(table[(1, 1)] - (1 + q)) < 1e-14


def test_all_amplitudes_cap():
    model = build_model((1.0,) * 8, (1,) + (-1,) * 7, a=2, d=2)
    with pytest.raises(SizeLimitError):
        all_amplitudes(model, cap=100)


def test_all_amplitudes_matches_contract():
    rng = random.Random(21)
    qs = (1, root_of_unity(1, 3), root_of_unity(2, 3))
    c = tuple(complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(3))
    model = build_model(c, qs, a=3, d=4)
    table = all_amplitudes(model, prune=None)
    for r in itertools.product(range(3), repeat=3):
        assert table[r] == contract(model, r)


def test_model_immutable():
    model = build_model((1.0,), (1,), a=2, d=2)
    with pytest.raises(ValueError):
        model.site[0][0, 0, 0] = 7
    with pytest.raises(ValueError):
        model.v0[0] = 7
