"""Exact matrix-product representation of ordered-monomial amplitudes.

For h = sum_j c_j z_j in an algebra with z_j^a = 1 and predecessor-uniform
commutation weights q_j, the coefficient of the ordered monomial
z_1^{r_1} ... z_m^{r_m} in h^k is a contraction of m site matrices between
two boundary vectors.  Site j carries one (d+1) x (d+1) matrix per physical
index r_j in {0, ..., a-1}, with entries

    A[j][r][l', l] = c_j^(l - l') * C(l, l - l')_{q_j}

whenever l >= l' and l - l' = r (mod a), and 0 otherwise.  The bond index is
the running total degree, so every site matrix is upper triangular and each
(l', l) pair is owned by exactly one physical index.  A single amplitude is
one row-vector sweep, O(m * d^2) scalar operations.

The same site matrices evaluate any polynomial P of degree at most d: the
right boundary vector carrying P's coefficients (a_0, ..., a_d) yields the
amplitudes of P(h) at bond dimension d + 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import SizeLimitError
from .qbinom import QBinomTable

#: Default cap on a^m for bulk amplitude enumeration.
AMPLITUDE_CAP = 10 ** 6

#: Bulk-output entries smaller than this in absolute value are dropped.
PRUNE_TOL = 1e-14


@dataclass(frozen=True, eq=False)
class MpsModel:
    """Site matrices plus boundary vectors; immutable after construction."""

    m: int
    a: int
    d: int
    c: tuple[complex, ...]
    qs: tuple[complex, ...]
    site: tuple[np.ndarray, ...]  # per site: shape (a, d+1, d+1)
    v0: np.ndarray = field(repr=False)
    vR: np.ndarray = field(repr=False)


def build_model(c, qs, a: int, d: int, vR=None) -> MpsModel:
    """Build the site matrices for m = len(c) generators at bond dimension d+1.

    ``c`` are the generator coefficients, ``qs`` the predecessor-uniform
    weights (qs[0] is conventionally 1 and never enters), ``a`` the generator
    order and ``d`` the maximum degree.  The default right boundary selects
    the degree-d monomial; pass ``vR`` to override (e.g. a standard basis
    vector e_k for a lower monomial degree, or polynomial coefficients).
    """
    c = tuple(complex(x) for x in c)
    qs = tuple(complex(q) for q in qs)
    if len(qs) != len(c):
        raise ValueError(f"{len(c)} coefficients but {len(qs)} weights")
    if not c:
        raise ValueError("need at least one generator")
    if a < 2:
        raise ValueError(f"generator order must be >= 2, got {a}")
    if d < 0:
        raise ValueError(f"degree must be >= 0, got {d}")
    if any(q == 0 for q in qs):
        raise ValueError("weights q_j must be nonzero")
    if not all(np.isfinite(x.real) and np.isfinite(x.imag) for x in c):
        raise ValueError("coefficients must be finite")

    tables: dict[complex, QBinomTable] = {}
    sites = []
    for cj, qj in zip(c, qs):
        table = tables.get(qj)
        if table is None:
            table = tables[qj] = QBinomTable(d, qj)
        mats = np.zeros((a, d + 1, d + 1), dtype=complex)
        for lo in range(d + 1):
            cpow = 1
            for hi in range(lo, d + 1):
                delta = hi - lo
                mats[delta % a, lo, hi] = cpow * table.entry(hi, delta)
                cpow = cpow * cj
        mats.setflags(write=False)
        sites.append(mats)

    v0 = np.zeros(d + 1, dtype=complex)
    v0[0] = 1
    if vR is None:
        right = np.zeros(d + 1, dtype=complex)
        right[d] = 1
    else:
        right = np.asarray(vR, dtype=complex).copy()
        if right.shape != (d + 1,):
            raise ValueError(f"vR must have length {d + 1}, got shape {right.shape}")
    v0.setflags(write=False)
    right.setflags(write=False)
    return MpsModel(len(c), a, d, c, qs, tuple(sites), v0, right)


def _check_residues(model: MpsModel, r) -> tuple[int, ...]:
    r = tuple(int(x) for x in r)
    if len(r) != model.m:
        raise ValueError(f"residue tuple has length {len(r)}, expected {model.m}")
    if any(not 0 <= x < model.a for x in r):
        raise ValueError(f"residues must lie in 0..{model.a - 1}, got {r}")
    return r


def contract(model: MpsModel, r, vR=None) -> complex:
    """Amplitude for the residue tuple ``r`` by a left-to-right sweep.

    Uses the model's right boundary unless ``vR`` is given.  O(m * d^2).
    """
    r = _check_residues(model, r)
    v = model.v0
    for j, rj in enumerate(r):
        v = v @ model.site[j][rj]
    right = model.vR if vR is None else np.asarray(vR, dtype=complex)
    return complex(v @ right)


def contract_polynomial(model: MpsModel, poly, r) -> complex:
    """Amplitude of P(h) for P with coefficients poly = (a_0, ..., a_d).

    Same sweep as :func:`contract` with the right boundary replaced by the
    coefficient vector; requires len(poly) == d + 1.
    """
    right = np.asarray(tuple(poly), dtype=complex)
    if right.shape != (model.d + 1,):
        raise ValueError(
            f"polynomial must have {model.d + 1} coefficients, got {right.shape}"
        )
    return contract(model, r, vR=right)


def all_amplitudes(
    model: MpsModel,
    vR=None,
    cap: int = AMPLITUDE_CAP,
    prune: float | None = PRUNE_TOL,
) -> dict[tuple[int, ...], complex]:
    """Table of amplitudes for every residue tuple in {0, ..., a-1}^m.

    Walks the residue tree depth-first, reusing each prefix sweep, so the
    total cost is O(a^m * d^2).  Entries with |amplitude| < ``prune`` are
    dropped (pass ``prune=None`` to keep exact zeros).  Refuses a^m above
    ``cap``; query individual tuples with :func:`contract` instead.
    """
    total = model.a ** model.m
    if total > cap:
        raise SizeLimitError(
            f"a^m = {total} exceeds the cap of {cap}; "
            "query specific residue tuples with contract() instead"
        )
    right = model.vR if vR is None else np.asarray(vR, dtype=complex)
    if right.shape != (model.d + 1,):
        raise ValueError(f"vR must have length {model.d + 1}, got shape {right.shape}")
    out: dict[tuple[int, ...], complex] = {}

    def walk(j, v, prefix):
        if j == model.m:
            val = complex(v @ right)
            if prune is None or abs(val) >= prune:
                out[prefix] = val
            return
        site = model.site[j]
        for rj in range(model.a):
            w = v @ site[rj]
            if prune is not None and not w.any():
                continue  # exactly-zero subtree, every leaf below is 0
            walk(j + 1, w, prefix + (rj,))

    walk(0, model.v0, ())
    return out
