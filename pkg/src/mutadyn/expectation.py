"""Exact expected k-tuple counts and frequencies.

One mutation step of a word of length m maps the expected count vector
through ``(M + (m - k) I) / m``; this holds for any law.  For fixed-length
laws the word length after j steps is deterministic, so n steps compose
into an exact product.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .core import count_vector
from .law import FIXED, MutationLaw, classify
from .matrix import SubMatrix, build_substitution_matrix

MAX_STEPS = 100_000


def step_expected_count(matrix: SubMatrix, ct: Sequence, m: int) -> list[Fraction]:
    """Expected k-tuple counts after one mutation step of a length-m word."""
    k = matrix.k
    if m < k:
        raise ValueError(f"word length {m} is shorter than k={k}")
    ct = [Fraction(c) for c in ct]
    entries = matrix.entries
    dim = matrix.dimension
    shift = m - k
    return [
        (sum((entries[u, v] * ct[v] for v in range(dim) if ct[v]), Fraction(0))
         + shift * ct[u]) / m
        for u in range(dim)
    ]


def _integer_form(matrix: SubMatrix) -> tuple[list[list[int]], int]:
    den = math.lcm(*(x.denominator for x in matrix.entries.flat))
    num = [[int(x * den) for x in row] for row in matrix.entries]
    return num, den


def _product_steps(law: MutationLaw, word: Sequence[int], k: int, n: int,
                   matrix: SubMatrix | None):
    # yields (step, length, numerators, denominator); no reduction in between,
    # the denominator only gains log2(length * den) bits per step
    cls = classify(law)
    if cls.kind != FIXED:
        raise ValueError(
            "the product recursion needs a fixed-length law; "
            f"this law is {cls.kind}")
    m = len(word)
    if m < k:
        raise ValueError(f"word length {m} is shorter than k={k}")
    if n < 0:
        raise ValueError("step count must be >= 0")
    if n > MAX_STEPS:
        raise ValueError(f"step count {n} exceeds the limit {MAX_STEPS}")
    if matrix is None:
        matrix = build_substitution_matrix(law, k)
    elif matrix.k != k:
        raise ValueError(f"matrix is for k={matrix.k}, not k={k}")
    num, den = _integer_form(matrix)
    grow = int(cls.tau) - 1
    dim = len(num)
    vec = [int(c) for c in count_vector(word, k, law.d)]
    denom = 1
    yield 0, m, vec, denom
    for j in range(n):
        length = m + j * grow
        shift = (length - k) * den
        vec = [sum(num[u][v] * vec[v] for v in range(dim) if vec[v]) + shift * vec[u]
               for u in range(dim)]
        denom *= length * den
        yield j + 1, length + grow, vec, denom


def expected_frequency_trajectory(law: MutationLaw, word: Sequence[int], k: int, n: int,
                                  matrix: SubMatrix | None = None):
    """Yield ``(step, length, E[fr])`` for steps 0..n of a fixed-length law."""
    for step, length, vec, denom in _product_steps(law, word, k, n, matrix):
        yield step, length, [Fraction(x, denom * length) for x in vec]


def expected_count_fixed(law: MutationLaw, word: Sequence[int], k: int, n: int,
                         matrix: SubMatrix | None = None) -> list[Fraction]:
    """Exact ``E[ct^(k)]`` after n steps of a fixed-length law."""
    for _, _, vec, denom in _product_steps(law, word, k, n, matrix):
        pass
    return [Fraction(x, denom) for x in vec]


def expected_frequency_fixed(law: MutationLaw, word: Sequence[int], k: int, n: int,
                             matrix: SubMatrix | None = None) -> list[Fraction]:
    """Exact ``E[fr^(k)]`` after n steps of a fixed-length law.

    Raises ``ValueError`` for laws whose replacement lengths vary: the
    word length after j steps is then random and the one-step maps no
    longer compose.
    """
    for _, length, vec, denom in _product_steps(law, word, k, n, matrix):
        pass
    return [Fraction(x, denom * length) for x in vec]
