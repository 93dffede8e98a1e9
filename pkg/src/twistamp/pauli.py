"""Pauli generators in symplectic encoding and their commutation structure.

A generator on n sites of local dimension d is a pair of digit vectors
(u | w) over Z_d, standing for the operator X^u Z^w up to global phase (Y on
a qubit site is u = w = 1).  Commutation phases come from the symplectic
form: for qubits P Q = (-1)^(u_P.w_Q + w_P.u_Q) Q P; for prime d > 2 we use
the Heisenberg-Weyl convention X Z = e^(2*pi*i/d) Z X, giving the exponent
u_P.w_Q - w_P.u_Q mod d (which reduces to the qubit formula at d = 2).
Global phases never enter the commutation structure, so they are fixed to 1
in the encoding; absorb any desired phase into the Hamiltonian coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .twisting import WeightMatrix, root_of_unity


def _is_prime(d: int) -> bool:
    if d < 2:
        return False
    f = 2
    while f * f <= d:
        if d % f == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class PauliGen:
    """One generator as digit vectors (u | w) over Z_d on n = len(u) sites."""

    u: tuple[int, ...]
    w: tuple[int, ...]
    d: int = 2

    def __post_init__(self):
        u = tuple(int(x) for x in self.u)
        w = tuple(int(x) for x in self.w)
        if len(u) != len(w):
            raise ValueError(f"u has {len(u)} digits, w has {len(w)}")
        if self.d < 2:
            raise ValueError(f"local dimension must be >= 2, got {self.d}")
        if self.d > 2 and not _is_prime(self.d):
            raise ValueError(f"local dimension must be prime, got {self.d}")
        if any(not 0 <= x < self.d for x in u + w):
            raise ValueError(f"digits must lie in 0..{self.d - 1}")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "w", w)

    @property
    def n(self) -> int:
        return len(self.u)


def _check_compatible(gens):
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    n, d = gens[0].n, gens[0].d
    for g in gens[1:]:
        if g.n != n or g.d != d:
            raise ValueError(
                f"mixed generator dimensions: ({n} sites, d={d}) vs ({g.n} sites, d={g.d})"
            )
    return gens, n, d


def commutation_exponent(p: PauliGen, q: PauliGen) -> int:
    """Integer e with P Q = e^(2*pi*i*e/d) Q P, computed exactly mod d."""
    if p.n != q.n or p.d != q.d:
        raise ValueError("generators act on different systems")
    e = sum(a * b for a, b in zip(p.u, q.w)) - sum(a * b for a, b in zip(p.w, q.u))
    return e % p.d


def commutation_phase(p: PauliGen, q: PauliGen):
    """Commutation phase of two generators; exact +1/-1 ints for qubits."""
    e = commutation_exponent(p, q)
    if p.d == 2:
        return -1 if e else 1
    return root_of_unity(e, p.d)


def weight_matrix_from_paulis(gens) -> WeightMatrix:
    """Twisting matrix with omega[i][j] = commutation phase of (P_i, P_j)."""
    gens, _, d = _check_compatible(gens)
    m = len(gens)
    omega = [[complex(1)] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            omega[i][j] = complex(commutation_phase(gens[i], gens[j]))
            omega[j][i] = complex(commutation_phase(gens[j], gens[i]))
    return WeightMatrix(omega, order=d)


@dataclass(frozen=True)
class AnticommGraph:
    """Graph on generators with edges where the commutation phase is not 1."""

    m: int
    edges: tuple[tuple[int, int], ...]
    components: tuple[tuple[int, ...], ...]

    @property
    def c_max(self) -> int:
        return max(len(c) for c in self.components)


def _components(m, adjacency):
    seen = [False] * m
    comps = []
    for start in range(m):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for nb in adjacency[v]:
                if not seen[nb]:
                    seen[nb] = True
                    stack.append(nb)
        comps.append(tuple(sorted(comp)))
    return tuple(comps)


def _graph_from_edges(m, edges):
    adjacency = [[] for _ in range(m)]
    for i, j in edges:
        adjacency[i].append(j)
        adjacency[j].append(i)
    return AnticommGraph(m, tuple(edges), _components(m, adjacency))


def anticommutation_graph(gens) -> AnticommGraph:
    """Anticommutation graph of a generator list (exact digit arithmetic)."""
    gens, _, _ = _check_compatible(gens)
    m = len(gens)
    edges = [
        (i, j)
        for i in range(m)
        for j in range(i + 1, m)
        if commutation_exponent(gens[i], gens[j]) != 0
    ]
    return _graph_from_edges(m, edges)


def anticommutation_graph_from_weights(W: WeightMatrix, tol: float = 1e-12) -> AnticommGraph:
    """Same graph from an abstract weight matrix: edges where omega != 1."""
    rows = W.rows()
    edges = [
        (i, j)
        for i in range(W.m)
        for j in range(i + 1, W.m)
        if abs(rows[i][j] - 1) > tol
    ]
    return _graph_from_edges(W.m, edges)


def jordan_wigner(n: int) -> list[PauliGen]:
    """The 2n+1 mutually anticommuting generators on n qubits.

    gamma_{2k-1} = Z^(k-1) X I^(n-k), gamma_{2k} = Z^(k-1) Y I^(n-k) for
    k = 1..n, plus gamma_{2n+1} = Z^n.
    """
    if n < 1:
        raise ValueError(f"need n >= 1 qubits, got {n}")
    gens = []
    for k in range(n):
        z_prefix = tuple(1 if i < k else 0 for i in range(n))
        x_at_k = tuple(1 if i == k else 0 for i in range(n))
        gens.append(PauliGen(u=x_at_k, w=z_prefix))
        y_w = tuple(1 if i <= k else 0 for i in range(n))
        gens.append(PauliGen(u=x_at_k, w=y_w))
    gens.append(PauliGen(u=(0,) * n, w=(1,) * n))
    return gens


def realize_lambda(L) -> list[PauliGen]:
    """Qubit generators on n = m sites whose anticommutation pattern is L.

    L must be a symmetric binary matrix with zero diagonal; generator i gets
    u_i = e_i and w_i supported on columns j > i with w_i[j] = L[i][j].  The
    symplectic form of the result reproduces L exactly, so any prescribed
    sign pattern is realizable.
    """
    arr = np.array(L, dtype=int)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"L must be square, got shape {arr.shape}")
    if np.any((arr != 0) & (arr != 1)):
        raise ValueError("L must be binary")
    if np.any(np.diagonal(arr) != 0):
        raise ValueError("L must have zero diagonal")
    if not np.array_equal(arr, arr.T):
        raise ValueError("L must be symmetric")
    m = arr.shape[0]
    gens = []
    for i in range(m):
        u = tuple(1 if j == i else 0 for j in range(m))
        w = tuple(int(arr[i, j]) if j > i else 0 for j in range(m))
        gens.append(PauliGen(u=u, w=w))
    return gens


_SINGLE_QUBIT = {
    (0, 0): np.eye(2, dtype=complex),
    (1, 0): np.array([[0, 1], [1, 0]], dtype=complex),
    (1, 1): np.array([[0, -1j], [1j, 0]], dtype=complex),
    (0, 1): np.array([[1, 0], [0, -1]], dtype=complex),
}


def dense_matrix(g: PauliGen) -> np.ndarray:
    """Dense 2^n x 2^n matrix of a qubit generator.

    Each site contributes the standard I/X/Y/Z factor (Y for u = w = 1), so
    the result is Hermitian and squares to the identity.
    """
    if g.d != 2:
        raise ValueError("dense matrices are implemented for qubits only")
    mat = np.ones((1, 1), dtype=complex)
    for uj, wj in zip(g.u, g.w):
        mat = np.kron(mat, _SINGLE_QUBIT[(uj, wj)])
    return mat
