"""Brute-force exact distribution of a mutation system after n steps.

Every (position, rule) pair of every reachable word is expanded with its
exact probability and identical words are merged after each step.  This is
the ground truth that the matrix formulas are checked against, so it
deliberately shares nothing with :mod:`mutadyn.matrix` beyond the law and
the count vector.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import Word, count_vector
from .law import MutationLaw
from .matrix import ResourceCapError

DEFAULT_MAX_OUTCOMES = 1_000_000


class OracleCapError(ResourceCapError):
    pass


@dataclass(frozen=True)
class OutcomeDistribution:
    outcomes: tuple[tuple[Word, Fraction], ...]  # sorted by (length, word)
    steps: int

    def as_dict(self) -> dict[Word, Fraction]:
        return dict(self.outcomes)

    def total(self) -> Fraction:
        return sum((p for _, p in self.outcomes), Fraction(0))

    def expected_length(self) -> Fraction:
        return sum((p * len(w) for w, p in self.outcomes), Fraction(0))

    def __len__(self):
        return len(self.outcomes)


def one_step(law: MutationLaw, word: Sequence[int]) -> dict[Word, Fraction]:
    word = tuple(word)
    m = len(word)
    if m == 0:
        raise ValueError("word must be nonempty")
    out: dict[Word, Fraction] = {}
    for i, sym in enumerate(word):
        for rule in law.rules[sym]:
            child = word[:i] + rule.replacement + word[i + 1:]
            out[child] = out.get(child, Fraction(0)) + rule.probability / m
    return out


def enumerate_distribution(law: MutationLaw, word: Sequence[int], n: int,
                           max_outcomes: int = DEFAULT_MAX_OUTCOMES) -> OutcomeDistribution:
    if n < 0:
        raise ValueError("step count must be >= 0")
    if len(word) == 0:
        raise ValueError("word must be nonempty")
    rule_counts = [len(rs) for rs in law.rules]
    frontier: dict[Word, Fraction] = {tuple(word): Fraction(1)}
    for step in range(n):
        pending = sum(sum(rule_counts[s] for s in w) for w in frontier)
        if pending > max_outcomes:
            raise OracleCapError(
                f"step {step + 1} would expand {pending} word-mass pairs "
                f"(cap {max_outcomes})")
        nxt: dict[Word, Fraction] = {}
        for w, p in frontier.items():
            for child, q in one_step(law, w).items():
                nxt[child] = nxt.get(child, Fraction(0)) + p * q
        frontier = nxt
    items = sorted(frontier.items(), key=lambda kv: (len(kv[0]), kv[0]))
    return OutcomeDistribution(tuple(items), n)


def _check_k(k):
    if k < 1:
        raise ValueError("k must be >= 1")


def expected_frequency(dist: OutcomeDistribution, k: int, d: int) -> list[Fraction]:
    """``E[fr^(k)]``: the expectation of the ratio count / length."""
    _check_k(k)
    acc = [Fraction(0)] * d**k
    for w, p in dist.outcomes:
        if k > len(w):
            continue
        weight = p / len(w)
        for idx, c in enumerate(count_vector(w, k, d)):
            if c:
                acc[idx] += weight * int(c)
    return acc


def expected_count(dist: OutcomeDistribution, k: int, d: int) -> list[Fraction]:
    _check_k(k)
    acc = [Fraction(0)] * d**k
    for w, p in dist.outcomes:
        for idx, c in enumerate(count_vector(w, k, d)):
            if c:
                acc[idx] += p * int(c)
    return acc


def normalized_expected_count(dist: OutcomeDistribution, k: int, d: int) -> list[Fraction]:
    """``E[ct^(k)] / E[|S(n)|]``; equals ``E[fr]`` when lengths are deterministic."""
    length = dist.expected_length()
    return [c / length for c in expected_count(dist, k, d)]


def oracle_expected_frequency(law: MutationLaw, word: Sequence[int], k: int, n: int,
                              max_outcomes: int = DEFAULT_MAX_OUTCOMES) -> list[Fraction]:
    _check_k(k)
    dist = enumerate_distribution(law, word, n, max_outcomes)
    return expected_frequency(dist, k, law.d)
