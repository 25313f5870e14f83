"""Alphabets, words and cyclic k-tuple count/frequency vectors.

Words are plain tuples of symbol indices; the :class:`Alphabet` owns the
mapping between user-facing tokens and indices.  k-tuples are ranked in
lexicographic order of their index sequences, so the tuple
``(i_0, ..., i_{k-1})`` sits at ``sum(i_j * d**(k-1-j))``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

Word = tuple[int, ...]


@dataclass(frozen=True)
class Alphabet:
    """Ordered, duplicate-free set of symbol tokens."""

    symbols: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        symbols = tuple(str(s) for s in self.symbols)
        if not symbols:
            raise ValueError("alphabet must contain at least one symbol")
        if len(set(symbols)) != len(symbols):
            raise ValueError(f"alphabet symbols must be distinct: {symbols}")
        for s in symbols:
            if not s or "," in s or any(c.isspace() for c in s):
                raise ValueError(f"invalid symbol token {s!r}")
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(symbols)})

    @property
    def d(self) -> int:
        return len(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def index(self, token: str) -> int:
        try:
            return self._index[token]
        except KeyError:
            raise ValueError(f"symbol {token!r} not in alphabet {self.symbols}") from None

    @property
    def single_char(self) -> bool:
        return all(len(s) == 1 for s in self.symbols)

    def encode(self, tokens: Iterable[str]) -> Word:
        return tuple(self.index(t) for t in tokens)

    def decode(self, word: Sequence[int]) -> list[str]:
        return [self.symbols[i] for i in word]

    def parse_word(self, text: str) -> Word:
        """Parse a word written as concatenated single-char tokens or as a
        comma-separated token list."""
        text = text.strip()
        if not text:
            return ()
        if "," in text or not self.single_char:
            tokens = [t.strip() for t in text.split(",")]
            if any(not t for t in tokens):
                raise ValueError(f"empty token in word {text!r}")
        else:
            tokens = list(text)
        return self.encode(tokens)

    def format_word(self, word: Sequence[int]) -> str:
        sep = "" if self.single_char else ","
        return sep.join(self.decode(word))

    def tuples(self, k: int) -> list[Word]:
        """All k-tuples in rank order."""
        return [tuple_from_index(r, k, self.d) for r in range(self.d**k)]


def tuple_index(u: Sequence[int], d: int) -> int:
    """Lexicographic rank of the index tuple ``u`` over an alphabet of size d."""
    rank = 0
    for i in u:
        if not 0 <= i < d:
            raise ValueError(f"symbol index {i} out of range for alphabet of size {d}")
        rank = rank * d + i
    return rank


def tuple_from_index(rank: int, k: int, d: int) -> Word:
    if not 0 <= rank < d**k:
        raise ValueError(f"rank {rank} out of range for {k}-tuples over {d} symbols")
    out = [0] * k
    for j in range(k - 1, -1, -1):
        rank, out[j] = divmod(rank, d)
    return tuple(out)


def token_tuple_index(u: Sequence[str], alphabet: Alphabet) -> int:
    """Rank of a k-tuple given as tokens, e.g. ``"GA"`` over ``A G T C`` is 4."""
    if isinstance(u, str) and not alphabet.single_char:
        u = u.split(",")
    return tuple_index(alphabet.encode(u), alphabet.d)


def count_vector(word: Sequence[int], k: int, d: int) -> np.ndarray:
    """Cyclic k-tuple counts of ``word`` as an int64 array of length d**k.

    There are exactly ``len(word)`` cyclic windows; a word shorter than k
    has the zero count vector.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    counts = np.zeros(d**k, dtype=np.int64)
    m = len(word)
    if k > m:
        return counts
    w = np.asarray(word, dtype=np.int64)
    if w.min() < 0 or w.max() >= d:
        raise ValueError("word contains an index outside the alphabet")
    # rank of window i = sum_j w[(i+j) mod m] * d**(k-1-j)
    ranks = np.zeros(m, dtype=np.int64)
    for j in range(k):
        ranks = ranks * d + np.roll(w, -j)
    np.add.at(counts, ranks, 1)
    return counts


def frequency_vector(word: Sequence[int], k: int, d: int) -> list[Fraction]:
    """Exact cyclic k-tuple frequencies; all zero when k > len(word)."""
    counts = count_vector(word, k, d)
    m = len(word)
    if k > m:
        return [Fraction(0)] * len(counts)
    return [Fraction(int(c), m) for c in counts]
