"""Seeded Monte Carlo evolution of mutation systems.

Reproducibility contract
------------------------
* A single trajectory with seed ``s`` draws from ``random.Random(s)``
  (Mersenne Twister, identical on every platform).
* Trial ``t`` of a Monte Carlo run with master seed ``S`` uses the seed
  ``mix64(S ^ (t * 0x9E3779B97F4A7C15 mod 2**64))``, where ``mix64`` is the
  SplitMix64 finalizer::

      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9   (mod 2**64)
      z = (z ^ (z >> 27)) * 0x94D049BB133111EB   (mod 2**64)
      z =  z ^ (z >> 31)

* Each step draws the position with ``randrange(len(word))`` and then a
  53-bit integer ``u = getrandbits(53)``; the first rule whose cumulative
  probability ``c`` satisfies ``u < c * 2**53`` is applied.  The thresholds
  ``ceil(c * 2**53)`` are exact integers computed from the rational law.
* Trials are reduced in fixed chunks of :data:`CHUNK` trials merged in
  trial order, so the summary is bit-identical for any worker count.
"""
from __future__ import annotations

import math
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import Word, count_vector
from .law import MutationLaw

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
CHUNK = 16
_BITS = 53


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def trial_seed(seed: int, trial: int) -> int:
    return mix64((seed & MASK64) ^ ((trial * GOLDEN_GAMMA) & MASK64))


class _Sampler:
    """Per-symbol integer thresholds for replacement sampling."""

    def __init__(self, law: MutationLaw):
        scale = 1 << _BITS
        self.table = []
        for rules in law.rules:
            cum = 0
            thresholds, words = [], []
            for r in rules:
                cum += r.probability
                # u < cum * 2**53  <=>  u < ceil(cum * 2**53) for integer u
                thresholds.append(-((-cum.numerator * scale) // cum.denominator))
                words.append(list(r.replacement))
            self.table.append((thresholds, words))

    def draw(self, symbol: int, rng: random.Random) -> list[int]:
        thresholds, words = self.table[symbol]
        if len(words) == 1:
            return words[0]
        u = rng.getrandbits(_BITS)
        for t, w in zip(thresholds, words):
            if u < t:
                return w
        return words[-1]


def mutation_step(word: Sequence[int], law: MutationLaw, rng: random.Random,
                  sampler: _Sampler | None = None) -> Word:
    """One mutation step: a uniform position is replaced by a sampled word."""
    if len(word) == 0:
        raise ValueError("word must be nonempty")
    if sampler is None:
        sampler = _Sampler(law)
    i = rng.randrange(len(word))
    return tuple(word[:i]) + tuple(sampler.draw(word[i], rng)) + tuple(word[i + 1:])


@dataclass(frozen=True)
class TrajectoryStats:
    final_length: int
    empirical_freq: np.ndarray
    lengths: tuple[int, ...] | None = None
    final_word: Word | None = None


def _run(law: MutationLaw, sampler: _Sampler, word: Sequence[int], n: int,
         rng: random.Random, lengths: list | None) -> list[int]:
    w = list(word)
    randrange = rng.randrange
    draw = sampler.draw
    for _ in range(n):
        i = randrange(len(w))
        w[i:i + 1] = draw(w[i], rng)
        if lengths is not None:
            lengths.append(len(w))
    return w


def _freq(w, k, d) -> np.ndarray:
    if k > len(w):
        return np.zeros(d**k)
    return count_vector(w, k, d) / len(w)


def simulate_trajectory(law: MutationLaw, word: Sequence[int], n: int, seed: int,
                        k: int = 1, record_lengths: bool = False,
                        keep_word: bool = False) -> TrajectoryStats:
    if len(word) == 0:
        raise ValueError("word must be nonempty")
    if n < 0:
        raise ValueError("step count must be >= 0")
    rng = random.Random(seed)
    lengths = [len(word)] if record_lengths else None
    w = _run(law, _Sampler(law), word, n, rng, lengths)
    return TrajectoryStats(len(w), _freq(w, k, law.d),
                           tuple(lengths) if lengths is not None else None,
                           tuple(w) if keep_word else None)


class Welford:
    """Running mean and sum of squared deviations; mergeable (Chan et al.)."""

    def __init__(self, dim: int):
        self.count = 0
        self.mean = np.zeros(dim)
        self.m2 = np.zeros(dim)

    def add(self, x):
        self.count += 1
        delta = x - self.mean
        self.mean = self.mean + delta / self.count
        self.m2 = self.m2 + delta * (x - self.mean)

    def merge(self, other: "Welford") -> "Welford":
        if other.count == 0:
            return self
        if self.count == 0:
            self.count, self.mean, self.m2 = other.count, other.mean.copy(), other.m2.copy()
            return self
        total = self.count + other.count
        delta = other.mean - self.mean
        self.mean = self.mean + delta * (other.count / total)
        self.m2 = self.m2 + other.m2 + delta**2 * (self.count * other.count / total)
        self.count = total
        return self

    def std(self) -> np.ndarray:
        if self.count < 2:
            return np.zeros_like(self.mean)
        return np.sqrt(self.m2 / (self.count - 1))


@dataclass(frozen=True)
class MonteCarloSummary:
    trials: int
    k: int
    steps: int
    mean: np.ndarray
    std: np.ndarray
    mean_drift: float
    drift_std: float


def _chunk(args):
    law, word, k, n, seed, start, stop = args
    sampler = _Sampler(law)
    freq = Welford(law.d**k)
    drift = Welford(1)
    m = len(word)
    for t in range(start, stop):
        rng = random.Random(trial_seed(seed, t))
        w = _run(law, sampler, word, n, rng, None)
        freq.add(_freq(w, k, law.d))
        drift.add(np.array([(len(w) - m) / n if n else math.nan]))
    return freq, drift


def monte_carlo_frequency(law: MutationLaw, word: Sequence[int], k: int, n: int,
                          trials: int, seed: int, threads: int = 1) -> MonteCarloSummary:
    """Mean and sample std of ``fr^(k)`` over independent n-step trajectories."""
    if len(word) < k:
        raise ValueError(f"word length {len(word)} is shorter than k={k}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if n < 0:
        raise ValueError("step count must be >= 0")
    jobs = [(law, tuple(word), k, n, seed, s, min(s + CHUNK, trials))
            for s in range(0, trials, CHUNK)]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_chunk, jobs))
    else:
        parts = [_chunk(job) for job in jobs]
    freq, drift = Welford(law.d**k), Welford(1)
    for f, dr in parts:
        freq.merge(f)
        drift.merge(dr)
    return MonteCarloSummary(trials, k, n, freq.mean, freq.std(),
                             float(drift.mean[0]), float(drift.std()[0]))


def empirical_distribution(law: MutationLaw, word: Sequence[int], n: int,
                           trials: int, seed: int) -> dict[Word, float]:
    """Relative frequencies of ``S(n)`` over ``trials`` seeded trajectories."""
    sampler = _Sampler(law)
    counts: Counter = Counter()
    for t in range(trials):
        rng = random.Random(trial_seed(seed, t))
        counts[tuple(_run(law, sampler, word, n, rng, None))] += 1
    return {w: c / trials for w, c in sorted(counts.items())}
