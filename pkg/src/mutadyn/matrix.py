"""k-substitution matrices of mutation laws.

Entry ``(u, v)`` of ``M^(k)`` is the expected number of k-tuples equal to
``u`` created when one symbol of an occurrence of ``v`` is mutated, summed
over the k windows that overlap the mutated position.  Column ``v`` thus
describes what a single mutation inside ``v`` does to the k-tuple counts.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import Alphabet, tuple_from_index, tuple_index
from .law import MutationLaw

DEFAULT_MAX_DIM = 4096


class ResourceCapError(RuntimeError):
    """A configured size cap would be exceeded."""


class DimensionCapError(ResourceCapError):
    pass


def default_max_dim() -> int:
    return int(os.environ.get("MUTADYN_MAX_DIM", DEFAULT_MAX_DIM))


@dataclass(frozen=True, eq=False)
class SubMatrix:
    k: int
    alphabet: Alphabet
    entries: np.ndarray  # object array of Fraction; [target u, source v]
    law_digest: str = ""

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]

    def column_sums(self) -> list[Fraction]:
        return column_sums(self.entries)

    def to_float(self) -> np.ndarray:
        return self.entries.astype(float)

    def __eq__(self, other):
        if not isinstance(other, SubMatrix):
            return NotImplemented
        return (self.k == other.k and self.alphabet == other.alphabet
                and np.array_equal(self.entries, other.entries))


def build_substitution_matrix(law: MutationLaw, k: int,
                              max_dim: int | None = None) -> SubMatrix:
    if k < 1:
        raise ValueError("k must be >= 1")
    d = law.d
    dim = d**k
    cap = default_max_dim() if max_dim is None else max_dim
    if dim > cap:
        raise DimensionCapError(f"matrix dimension {d}^{k} = {dim} exceeds cap {cap}")
    m = np.full((dim, dim), Fraction(0), dtype=object)
    for col in range(dim):
        v = tuple_from_index(col, k, d)
        column = m[:, col]
        for j, sym in enumerate(v):
            for rule in law.rules[sym]:
                eta, p = rule.replacement, rule.probability
                if j > 0:
                    # windows starting before the mutated symbol: keep the first k
                    window = (v[:j] + eta + v[j + 1:])[:k]
                    column[tuple_index(window, d)] += p
                else:
                    # windows starting inside eta, padded with v_1 ... v_{k-1}
                    tail = eta + v[1:]
                    for start in range(len(eta)):
                        column[tuple_index(tail[start:start + k], d)] += p
    return SubMatrix(k, law.alphabet, m, law.digest())


def column_sums(entries) -> list[Fraction]:
    entries = np.asarray(entries, dtype=object)
    return [sum(entries[:, j], Fraction(0)) for j in range(entries.shape[1])]


def _fmt(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def serialize_matrix(matrix: SubMatrix) -> str:
    """Line-keyed text; ``entries`` is row-major with one matrix row per line."""
    lines = [
        f"k = {matrix.k}",
        f"alphabet = {' '.join(matrix.alphabet.symbols)}",
        f"dimension = {matrix.dimension}",
        f"law = {matrix.law_digest}",
        "entries =",
    ]
    for row in matrix.entries:
        lines.append("  " + " ".join(_fmt(x) for x in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> SubMatrix:
    fields = {}
    rows = []
    in_entries = False
    for line in text.splitlines():
        if not line.strip():
            continue
        if in_entries and line.startswith(" "):
            rows.append([Fraction(x) for x in line.split()])
            continue
        key, _, value = line.partition("=")
        key = key.strip()
        if key == "entries":
            in_entries = True
            continue
        fields[key] = value.strip()
    dim = int(fields["dimension"])
    entries = np.empty((dim, dim), dtype=object)
    if len(rows) != dim or any(len(r) != dim for r in rows):
        raise ValueError("entries do not match the declared dimension")
    for i, r in enumerate(rows):
        entries[i, :] = r
    return SubMatrix(int(fields["k"]), Alphabet(tuple(fields["alphabet"].split())),
                     entries, fields.get("law", ""))
