"""Cross-validation suites pitting every computation route against another.

Each suite draws reproducible random instances, evaluates one quantity along
two independent routes (brute-force shuffle sums, memoized recursion,
word-wise normal ordering, dense matrices, closed forms, the MPS sweep) and
reports the worst relative error seen.  ``scale="small"`` keeps everything
comfortably under a minute; ``scale="full"`` runs the complete instance
counts, including the n = 4 dense-matrix comparisons.

Relative error is measured as |x - y| / max(1, |y|), i.e. with an absolute
floor at unit magnitude, since amplitudes cancel to zero exactly in many of
the structured instances.
"""

from __future__ import annotations

import cmath
import itertools
import random
import time
from dataclasses import dataclass
from math import factorial

from . import mps, oracle, qbinom
from .pauli import PauliGen, jordan_wigner, weight_matrix_from_paulis
from .twisting import (
    WeightMatrix,
    compositions,
    exhaustive_pu_search,
    find_pu_ordering,
    pu_weight_matrix,
    reorder_phase,
    root_of_unity,
    twisted_multinomial_bruteforce,
    twisted_multinomial_factorized,
    twisted_multinomial_recurrence,
    weight_matrix_from_exponents,
)


@dataclass
class SuiteResult:
    name: str
    passed: bool
    max_err: float
    tol: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return f"[{status}] {self.name}: max err {self.max_err:.3e} vs tol {self.tol:.1e}{extra}"


def _err(x, y) -> float:
    return abs(x - y) / max(1.0, abs(y))


def _random_unit_disk(rng) -> complex:
    return rng.uniform(0, 1) ** 0.5 * cmath.exp(2j * cmath.pi * rng.random())


def _random_nonzero(rng) -> complex:
    return rng.uniform(0.25, 2.0) * cmath.exp(2j * cmath.pi * rng.random())


def _random_composition(rng, m, k) -> tuple[int, ...]:
    parts = [0] * m
    for _ in range(k):
        parts[rng.randrange(m)] += 1
    return tuple(parts)


def _random_weight_matrix(rng, m, a) -> WeightMatrix:
    exponents = {
        (i, j): rng.randrange(a) for i in range(m) for j in range(i + 1, m)
    }
    return weight_matrix_from_exponents(m, a, exponents)


# ---------------------------------------------------------------- suite 1

def factorization_suite(scale: str, seed: int) -> SuiteResult:
    """Shuffle brute force vs the Gaussian-binomial product, arbitrary q_j."""
    rng = random.Random(seed)
    instances, max_m, max_k = (200, 4, 8) if scale == "full" else (40, 3, 6)
    tol = 1e-9
    start = time.perf_counter()
    worst = 0.0
    for _ in range(instances):
        m = rng.randint(1, max_m)
        k = rng.randint(0, max_k)
        comp = _random_composition(rng, m, k)
        qs = (1,) + tuple(_random_nonzero(rng) for _ in range(m - 1))
        W = pu_weight_matrix(qs)
        brute = twisted_multinomial_bruteforce(comp, W)
        fact = twisted_multinomial_factorized(comp, qs)
        worst = max(worst, _err(brute, fact))
    elapsed = time.perf_counter() - start
    return SuiteResult(
        "factorization identity", worst <= tol and elapsed < 30.0, worst, tol,
        f"{instances} instances in {elapsed:.1f}s",
    )


# ---------------------------------------------------------------- suite 2

def wordwise_suite(scale: str, seed: int) -> SuiteResult:
    """Word-wise expansion vs the composition sum, arbitrary weight matrices."""
    rng = random.Random(seed)
    instances, max_m, max_k = (60, 4, 6) if scale == "full" else (20, 3, 5)
    tol = 1e-10
    worst = 0.0
    for _ in range(instances):
        m = rng.randint(1, max_m)
        k = rng.randint(0, max_k)
        a = rng.choice((2, 3, 4))
        W = _random_weight_matrix(rng, m, a)
        c = tuple(_random_unit_disk(rng) for _ in range(m))
        got = oracle.expand_wordwise(W, c, a, k)
        want: dict[tuple[int, ...], complex] = {}
        for comp in compositions(k, m):
            key = tuple(kj % a for kj in comp)
            coeff = 1
            for cj, kj in zip(c, comp):
                coeff = coeff * cj ** kj
            want[key] = want.get(key, 0) + twisted_multinomial_bruteforce(comp, W) * coeff
        keys = set(got.amplitudes) | set(want)
        for r in keys:
            worst = max(worst, _err(got.amplitude(r), want.get(r, 0)))
    return SuiteResult(
        "word-wise expansion vs composition sum", worst <= tol, worst, tol,
        f"{instances} instances",
    )


# ---------------------------------------------------------------- suite 3

def mps_oracle_suite(scale: str, seed: int) -> SuiteResult:
    """Every MPS amplitude vs the word-wise oracle on random PU instances."""
    rng = random.Random(seed)
    instances, max_m, max_k = (200, 5, 6) if scale == "full" else (40, 4, 5)
    tol = 1e-9
    start = time.perf_counter()
    worst = 0.0
    for _ in range(instances):
        m = rng.randint(1, max_m)
        k = rng.randint(0, max_k)
        a = rng.choice((2, 3))
        qs = (1,) + tuple(root_of_unity(rng.randrange(a), a) for _ in range(m - 1))
        W = pu_weight_matrix(qs, order=a)
        c = tuple(_random_unit_disk(rng) for _ in range(m))
        table = oracle.expand_wordwise(W, c, a, k)
        model = mps.build_model(c, qs, a, d=k)
        for r in itertools.product(range(a), repeat=m):
            worst = max(worst, _err(mps.contract(model, r), table.amplitude(r)))
    elapsed = time.perf_counter() - start
    return SuiteResult(
        "MPS sweep vs word-wise oracle", worst <= tol and elapsed < 60.0, worst, tol,
        f"{instances} instances in {elapsed:.1f}s",
    )


# ---------------------------------------------------------------- suite 4

def qbinom_suite(scale: str, seed: int) -> SuiteResult:
    """q-Pascal vs partition oracle vs product formula vs q = +/-1 forms."""
    from math import comb

    rng = random.Random(seed)
    n_top, n_exact, n_q = (12, 14, 20) if scale == "full" else (8, 10, 6)
    worst_partition = 0.0  # tol 1e-12, scaled by 1 + |value|
    worst_product = 0.0    # tol 1e-10 relative
    exact_ok = True
    qs = []
    for i in range(n_q):
        if i % 2 == 0:
            qs.append(cmath.exp(2j * cmath.pi * rng.random()))  # unit circle
        else:
            qs.append(_random_nonzero(rng))  # generic modulus
    for q in qs:
        for n in range(n_top + 1):
            for r in range(n + 1):
                pas = qbinom.q_binom_pascal(n, r, q)
                part = qbinom.q_binom_partition_oracle(n, r, q)
                worst_partition = max(worst_partition, abs(pas - part) / (1 + abs(part)))
                try:
                    prod = qbinom.q_binom_product(n, r, q)
                except ValueError:
                    prod = None  # root of unity of order <= n: formula undefined
                if prod is not None:
                    worst_product = max(worst_product, _err(pas, prod))
    for n in range(n_exact + 1):
        for r in range(n + 1):
            exact_ok = exact_ok and (
                qbinom.q_binom_minus1(n, r) == qbinom.q_binom_pascal(n, r, -1)
            )
            exact_ok = exact_ok and (qbinom.q_binom_pascal(n, r, 1) == comb(n, r))
    passed = worst_partition <= 1e-12 and worst_product <= 1e-10 and exact_ok
    return SuiteResult(
        "Gaussian binomial route agreement", passed, worst_product, 1e-10,
        f"partition route err {worst_partition:.1e} (tol 1e-12); "
        f"exact q=+/-1 paths to n <= {n_exact}: {exact_ok}",
    )


# ---------------------------------------------------------------- suite 5

_COUNTEREXAMPLE_SIGNS = {  # 0-based pairs -> sign
    (0, 1): -1, (0, 2): 1, (0, 3): -1, (1, 2): -1, (1, 3): 1, (2, 3): -1,
}


def counterexample_matrix() -> WeightMatrix:
    """The m = 4 sign matrix with no predecessor-uniform ordering (each
    generator commutes with exactly one of the other three)."""
    return weight_matrix_from_exponents(
        4, 2, {pair: (0 if s == 1 else 1) for pair, s in _COUNTEREXAMPLE_SIGNS.items()}
    )


def _sign_matrix(m, bits) -> WeightMatrix:
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    return weight_matrix_from_exponents(
        m, 2, {pair: bit for pair, bit in zip(pairs, bits)}
    )


def _is_pu_ordering(W: WeightMatrix, perm, tol=1e-12) -> bool:
    rows = W.rows()
    for p in range(1, W.m):
        vals = [rows[perm[i]][perm[p]] for i in range(p)]
        if any(abs(v - vals[0]) > tol for v in vals):
            return False
    return True


def recognizer_suite(scale: str, seed: int) -> SuiteResult:
    """Greedy ordering search vs exhaustive search on every small sign matrix."""
    del scale, seed  # exhaustive either way
    failures = []
    for m, n_bits in ((3, 3), (4, 6)):
        for bits in itertools.product((0, 1), repeat=n_bits):
            W = _sign_matrix(m, bits)
            greedy = find_pu_ordering(W)
            exhaustive = exhaustive_pu_search(W)
            if (greedy is None) != (exhaustive is None):
                failures.append(f"m={m} bits={bits}: greedy/exhaustive disagree")
            if greedy is not None and not _is_pu_ordering(W, greedy.perm):
                failures.append(f"m={m} bits={bits}: greedy returned invalid ordering")
            if m == 3 and greedy is None:
                failures.append(f"m=3 bits={bits}: should always be orderable")
    if find_pu_ordering(counterexample_matrix()) is not None:
        failures.append("counterexample matrix was not rejected")
    detail = failures[0] if failures else "72 sign matrices + counterexample"
    return SuiteResult(
        "greedy recognizer vs exhaustive search", not failures,
        float(len(failures)), 0.0, detail,
    )


# ---------------------------------------------------------------- suite 6

def recurrence_suite(scale: str, seed: int) -> SuiteResult:
    """Leading-letter recursion vs shuffle brute force, arbitrary matrices."""
    rng = random.Random(seed)
    instances, max_m, max_k = (60, 4, 7) if scale == "full" else (20, 3, 6)
    tol = 1e-10
    worst = 0.0
    for _ in range(instances):
        m = rng.randint(1, max_m)
        k = rng.randint(0, max_k)
        a = rng.choice((2, 3, 4))
        W = _random_weight_matrix(rng, m, a)
        comp = _random_composition(rng, m, k)
        brute = twisted_multinomial_bruteforce(comp, W)
        rec = twisted_multinomial_recurrence(comp, W)
        worst = max(worst, _err(rec, brute))
    return SuiteResult(
        "leading-letter recurrence vs brute force", worst <= tol, worst, tol,
        f"{instances} instances",
    )


# ---------------------------------------------------------------- suite 7

def polynomial_suite(scale: str, seed: int) -> SuiteResult:
    """Polynomial boundary vector vs explicit linear combination of monomials."""
    rng = random.Random(seed)
    instances, max_deg = (40, 6) if scale == "full" else (10, 4)
    tol = 1e-10
    worst = 0.0
    shape_ok = True
    for _ in range(instances):
        m = rng.randint(1, 4)
        deg = rng.randint(0, max_deg)
        a = rng.choice((2, 3))
        qs = (1,) + tuple(root_of_unity(rng.randrange(a), a) for _ in range(m - 1))
        c = tuple(_random_unit_disk(rng) for _ in range(m))
        poly = tuple(_random_unit_disk(rng) for _ in range(deg + 1))
        model = mps.build_model(c, qs, a, d=deg)
        shape_ok = shape_ok and all(
            site.shape == (a, deg + 1, deg + 1) for site in model.site
        )
        for _ in range(5):
            r = tuple(rng.randrange(a) for _ in range(m))
            combo = 0
            for j, aj in enumerate(poly):
                e_j = [0.0] * (deg + 1)
                e_j[j] = 1.0
                combo += aj * mps.contract(model, r, vR=e_j)
            worst = max(worst, _err(mps.contract_polynomial(model, poly, r), combo))
    return SuiteResult(
        "polynomial boundary vs monomial combination",
        worst <= tol and shape_ok, worst, tol,
        f"{instances} instances; site matrices (d+1)x(d+1): {shape_ok}",
    )


# ---------------------------------------------------------------- suite 8

def _random_independent_gens(rng, n, m):
    for _ in range(500):
        gens = [
            PauliGen(
                u=tuple(rng.randrange(2) for _ in range(n)),
                w=tuple(rng.randrange(2) for _ in range(n)),
            )
            for _ in range(m)
        ]
        if oracle._f2_kernel(gens):
            continue
        if find_pu_ordering(weight_matrix_from_paulis(gens)) is None:
            continue
        return gens
    return None


def _mps_amplitudes_input_order(gens, c, k):
    """All amplitudes in the generators' given order, via an internal
    reordering to a predecessor-uniform sequence."""
    W = weight_matrix_from_paulis(gens)
    pu = find_pu_ordering(W)
    assert pu is not None
    c_perm = tuple(c[g] for g in pu.perm)
    model = mps.build_model(c_perm, pu.qs, W.order, d=k)
    out = {}
    for s, val in mps.all_amplitudes(model, prune=None).items():
        r = [0] * len(gens)
        for p, g in enumerate(pu.perm):
            r[g] = s[p]
        out[tuple(r)] = val * reorder_phase(W, pu.perm, s)
    return out


def dense_pauli_suite(scale: str, seed: int) -> SuiteResult:
    """Dense H^k trace extraction vs the MPS route, in input generator order."""
    rng = random.Random(seed)
    if scale == "full":
        random_cases = [(2, 3, 8), (3, 4, 8), (4, 4, 8)]  # (n, max_m, count)
    else:
        random_cases = [(2, 3, 4), (3, 4, 4)]
    tol = 1e-9
    worst = 0.0
    checked = 0

    def compare(gens, c, k):
        nonlocal worst, checked
        dense = oracle.expand_dense_pauli(gens, c, k)
        table = _mps_amplitudes_input_order(gens, c, k)
        for r in itertools.product((0, 1), repeat=len(gens)):
            worst = max(worst, _err(table.get(r, 0), dense.amplitude(r)))
        checked += 1

    gens_jw = jordan_wigner(2)
    for k in range(5):
        c = tuple(rng.uniform(-1, 1) for _ in gens_jw)
        compare(gens_jw, c, k)

    for n, max_m, count in random_cases:
        for _ in range(count):
            m = rng.randint(2, max_m)
            gens = _random_independent_gens(rng, n, m)
            if gens is None:
                continue
            k = rng.randint(0, 4)
            c = tuple(_random_unit_disk(rng) for _ in range(m))
            compare(gens, c, k)

    return SuiteResult(
        "dense matrix oracle vs MPS", worst <= tol, worst, tol,
        f"{checked} instances incl. 2n+1 anticommuting set",
    )


# ---------------------------------------------------------------- suite 9

def _commutative_amplitude(c, k, r):
    """Multinomial-theorem value of an amplitude when all generators commute
    and square to one: sum over compositions of k with parts matching r mod 2
    of k!/(prod k_j!) * prod c_j^{k_j}."""
    total = 0
    for comp in compositions(k, len(c)):
        if any((kj - rj) % 2 for kj, rj in zip(comp, r)):
            continue
        coeff = factorial(k)
        for kj in comp:
            coeff //= factorial(kj)
        term = coeff
        for cj, kj in zip(c, comp):
            term = term * cj ** kj
        total += term
    return total


def commutative_suite(scale: str, seed: int) -> SuiteResult:
    """MPS with all q_j = 1 vs the factorial multinomial formula."""
    rng = random.Random(seed)
    instances, max_m, max_k = (60, 6, 8) if scale == "full" else (20, 4, 6)
    tol = 1e-10
    worst = 0.0
    for _ in range(instances):
        m = rng.randint(1, max_m)
        k = rng.randint(0, max_k)
        c = tuple(_random_unit_disk(rng) for _ in range(m))
        model = mps.build_model(c, (1,) * m, a=2, d=k)
        for _ in range(8):
            r = tuple(rng.randrange(2) for _ in range(m))
            worst = max(
                worst, _err(mps.contract(model, r), _commutative_amplitude(c, k, r))
            )
    return SuiteResult(
        "commuting limit vs factorial formula", worst <= tol, worst, tol,
        f"{instances} instances",
    )


# ---------------------------------------------------------------- suite 10

def _median(values):
    values = sorted(values)
    return values[len(values) // 2]


def _bench_setup(m: int, k: int):
    qs = (1,) + (-1,) * (m - 1)
    model = mps.build_model((1.0,) * m, qs, a=2, d=k)
    r = tuple(i % 2 for i in range(m))
    return model, r


def _time_batch(model, r, batch: int) -> float:
    t0 = time.perf_counter()
    for _ in range(batch):
        mps.contract(model, r)
    return (time.perf_counter() - t0) / batch


def sweep_time(m: int, k: int, repeats: int = 20, batch: int = 25) -> float:
    """Median wall time of one amplitude sweep, in seconds."""
    model, r = _bench_setup(m, k)
    _time_batch(model, r, batch)  # warm caches before sampling
    return _median([_time_batch(model, r, batch) for _ in range(repeats)])


def doubling_ratio(m: int, k: int, repeats: int = 20, batch: int = 25) -> float:
    """Sweep-time ratio between 2m and m generators at fixed degree.

    The two sizes are timed in interleaved batches so that load drift on the
    host biases both measurements equally.
    """
    single = _bench_setup(m, k)
    double = _bench_setup(2 * m, k)
    _time_batch(*single, batch)
    _time_batch(*double, batch)
    t_single, t_double = [], []
    for _ in range(repeats):
        t_single.append(_time_batch(*single, batch))
        t_double.append(_time_batch(*double, batch))
    return _median(t_double) / _median(t_single)


def performance_suite(scale: str, seed: int) -> SuiteResult:
    """Single-sweep latency and linear scaling of the sweep in m."""
    del seed
    repeats = 20 if scale == "full" else 10
    t_single = sweep_time(101, 20, repeats=repeats)
    ratio = doubling_ratio(101, 20, repeats=repeats)
    ok = t_single < 0.050 and 1.5 <= ratio <= 3.0
    return SuiteResult(
        "sweep latency and scaling", ok, 0.0, 0.0,
        f"m=101,k=20 sweep {t_single * 1e3:.3f} ms; doubling ratio {ratio:.2f}",
    )


ALL_SUITES = (
    factorization_suite,
    wordwise_suite,
    mps_oracle_suite,
    qbinom_suite,
    recognizer_suite,
    recurrence_suite,
    polynomial_suite,
    dense_pauli_suite,
    commutative_suite,
    performance_suite,
)


def run(scale: str = "small", seed: int = 0) -> list[SuiteResult]:
    """Run every suite at the given scale with per-suite derived seeds."""
    if scale not in ("small", "full"):
        raise ValueError(f"scale must be 'small' or 'full', got {scale!r}")
    return [suite(scale, seed + 101 * i) for i, suite in enumerate(ALL_SUITES)]
