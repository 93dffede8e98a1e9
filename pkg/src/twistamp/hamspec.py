"""Hamiltonian specification files.

A spec is a JSON object in one of two forms.

Abstract form::

    {
      "m": 3, "a": 2,
      "omega": [[1, 2, 1], [2, 3, 1]],
      "coeffs": [1.0, [0.5, -0.25], 2]
    }

``omega`` lists 1-based pairs i < j with an integer exponent t, meaning the
weight e^(2*pi*i*t/a); unlisted pairs default to weight 1.  Exponents are
kept as integers end to end, so serializing and re-parsing reproduces the
weight matrix bit for bit.

Pauli form::

    {
      "n": 2, "d": 2,
      "terms": [["XI", 1.0], ["ZY", [0.0, 1.0]]]
    }

Qubit strings use the characters I, X, Y, Z.  For prime d > 2 each site is a
two-digit token "uw" (the X and Z exponents) and sites are joined by dots,
e.g. "10.02.21" on three sites.

Either form may carry optional "k" (power), "poly" (list of polynomial
coefficients, constant term first) and "queries" (list of residue digit
strings, or the string "all").  Coefficients are numbers or [re, im] pairs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .pauli import PauliGen, weight_matrix_from_paulis
from .twisting import WeightMatrix, weight_matrix_from_exponents


class SpecFormatError(ValueError):
    """The spec file is malformed."""


def parse_pauli_string(text: str, d: int = 2) -> PauliGen:
    """Parse a generator from its text form (see module docstring)."""
    if d == 2:
        u, w = [], []
        for ch in text:
            if ch == "I":
                u.append(0); w.append(0)
            elif ch == "X":
                u.append(1); w.append(0)
            elif ch == "Y":
                u.append(1); w.append(1)
            elif ch == "Z":
                u.append(0); w.append(1)
            else:
                raise SpecFormatError(f"bad Pauli character {ch!r} in {text!r}")
        if not u:
            raise SpecFormatError("empty Pauli string")
        return PauliGen(u=tuple(u), w=tuple(w))
    if d > 10:
        raise SpecFormatError("single-digit site tokens require d <= 10")
    u, w = [], []
    for token in text.split("."):
        if len(token) != 2 or not token.isdigit():
            raise SpecFormatError(f"bad qudit site token {token!r} in {text!r}")
        a_, b_ = int(token[0]), int(token[1])
        if a_ >= d or b_ >= d:
            raise SpecFormatError(f"site token {token!r} has digits >= d={d}")
        u.append(a_); w.append(b_)
    return PauliGen(u=tuple(u), w=tuple(w), d=d)


def format_pauli_string(g: PauliGen) -> str:
    """Inverse of :func:`parse_pauli_string`."""
    if g.d == 2:
        chars = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}
        return "".join(chars[(uj, wj)] for uj, wj in zip(g.u, g.w))
    return ".".join(f"{uj}{wj}" for uj, wj in zip(g.u, g.w))


def _parse_coeff(value) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if (
        isinstance(value, list)
        and len(value) == 2
        and all(isinstance(x, (int, float)) for x in value)
    ):
        return complex(value[0], value[1])
    raise SpecFormatError(f"bad coefficient {value!r}; use a number or [re, im]")


def _emit_coeff(z: complex) -> list[float]:
    return [z.real, z.imag]


@dataclass(frozen=True)
class HamiltonianSpec:
    """Parsed Hamiltonian description, either abstract or Pauli form."""

    form: str  # "abstract" | "pauli"
    a: int
    coeffs: tuple[complex, ...]
    exponents: tuple[tuple[int, int, int], ...] = ()  # 0-based (i, j, t), i < j
    gens: tuple[PauliGen, ...] = ()
    n: int = 0
    k: int | None = None
    poly: tuple[complex, ...] | None = None
    queries: tuple[tuple[int, ...], ...] | str | None = None  # tuples or "all"

    @property
    def m(self) -> int:
        return len(self.coeffs)

    def weight_matrix(self) -> WeightMatrix:
        if self.form == "abstract":
            return weight_matrix_from_exponents(
                self.m, self.a, {(i, j): t for i, j, t in self.exponents}
            )
        return weight_matrix_from_paulis(self.gens)

    def parse_query(self, digits: str) -> tuple[int, ...]:
        """One residue tuple from its digit-string form."""
        if len(digits) != self.m or not digits.isdigit():
            raise SpecFormatError(
                f"query {digits!r} must be {self.m} digits in 0..{self.a - 1}"
            )
        r = tuple(int(ch) for ch in digits)
        if any(x >= self.a for x in r):
            raise SpecFormatError(f"query {digits!r} has digits >= a={self.a}")
        return r

    @classmethod
    def from_dict(cls, data) -> "HamiltonianSpec":
        if not isinstance(data, dict):
            raise SpecFormatError("spec must be a JSON object")
        has_abstract = "omega" in data or "m" in data
        has_pauli = "terms" in data
        if has_abstract == has_pauli:
            raise SpecFormatError(
                "spec must have exactly one of the abstract form (m/a/omega/coeffs) "
                "or the Pauli form (n/d/terms)"
            )
        k = data.get("k")
        if k is not None and (not isinstance(k, int) or k < 0):
            raise SpecFormatError(f"k must be a non-negative integer, got {k!r}")
        poly = data.get("poly")
        if poly is not None:
            if not isinstance(poly, list) or not poly:
                raise SpecFormatError("poly must be a non-empty list of coefficients")
            poly = tuple(_parse_coeff(x) for x in poly)

        if has_pauli:
            try:
                n = int(data["n"])
                d = int(data.get("d", 2))
            except (KeyError, TypeError, ValueError) as exc:
                raise SpecFormatError(f"bad n/d fields: {exc}") from exc
            terms = data["terms"]
            if not isinstance(terms, list) or not terms:
                raise SpecFormatError("terms must be a non-empty list")
            gens, coeffs = [], []
            for item in terms:
                if not isinstance(item, list) or len(item) != 2:
                    raise SpecFormatError(f"bad term {item!r}; use [string, coeff]")
                try:
                    g = parse_pauli_string(item[0], d=d)
                except ValueError as exc:
                    raise SpecFormatError(str(exc)) from exc
                if g.n != n:
                    raise SpecFormatError(
                        f"term {item[0]!r} acts on {g.n} sites, spec says n={n}"
                    )
                gens.append(g)
                coeffs.append(_parse_coeff(item[1]))
            spec = cls(
                form="pauli", a=d, coeffs=tuple(coeffs), gens=tuple(gens), n=n,
                k=k, poly=poly,
            )
        else:
            try:
                m = int(data["m"])
                a = int(data["a"])
            except (KeyError, TypeError, ValueError) as exc:
                raise SpecFormatError(f"bad m/a fields: {exc}") from exc
            if m < 1 or a < 2:
                raise SpecFormatError(f"need m >= 1 and a >= 2, got m={m}, a={a}")
            coeffs = data.get("coeffs")
            if not isinstance(coeffs, list) or len(coeffs) != m:
                raise SpecFormatError(f"coeffs must be a list of exactly m={m} entries")
            entries = []
            seen = set()
            for item in data.get("omega", []):
                if (
                    not isinstance(item, list)
                    or len(item) != 3
                    or not all(isinstance(x, int) for x in item)
                ):
                    raise SpecFormatError(f"bad omega entry {item!r}; use [i, j, t]")
                i, j, t = item
                if not 1 <= i < j <= m:
                    raise SpecFormatError(
                        f"omega entry ({i}, {j}) must satisfy 1 <= i < j <= m={m}"
                    )
                if (i, j) in seen:
                    raise SpecFormatError(f"duplicate omega entry for pair ({i}, {j})")
                seen.add((i, j))
                entries.append((i - 1, j - 1, t % a))
            spec = cls(
                form="abstract", a=a,
                coeffs=tuple(_parse_coeff(x) for x in coeffs),
                exponents=tuple(sorted(entries)),
                k=k, poly=poly,
            )

        queries = data.get("queries")
        if queries is not None:
            if queries == "all":
                parsed = "all"
            elif isinstance(queries, list) and all(isinstance(s, str) for s in queries):
                parsed = tuple(spec.parse_query(s) for s in queries)
            else:
                raise SpecFormatError('queries must be a list of digit strings or "all"')
            object.__setattr__(spec, "queries", parsed)
        try:
            spec.weight_matrix()
        except ValueError as exc:
            raise SpecFormatError(f"invalid weight matrix: {exc}") from exc
        return spec

    def to_dict(self) -> dict:
        out: dict = {}
        if self.form == "abstract":
            out["m"] = self.m
            out["a"] = self.a
            out["omega"] = [[i + 1, j + 1, t] for i, j, t in self.exponents]
            out["coeffs"] = [_emit_coeff(z) for z in self.coeffs]
        else:
            out["n"] = self.n
            out["d"] = self.a
            out["terms"] = [
                [format_pauli_string(g), _emit_coeff(z)]
                for g, z in zip(self.gens, self.coeffs)
            ]
        if self.k is not None:
            out["k"] = self.k
        if self.poly is not None:
            out["poly"] = [_emit_coeff(z) for z in self.poly]
        if self.queries == "all":
            out["queries"] = "all"
        elif self.queries is not None:
            out["queries"] = ["".join(str(x) for x in r) for r in self.queries]
        return out

    @classmethod
    def load(cls, path) -> "HamiltonianSpec":
        try:
            with open(path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise SpecFormatError(f"cannot read spec file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise SpecFormatError(f"spec file is not valid JSON: {exc}") from exc
        return cls.from_dict(data)

    def dump(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")
