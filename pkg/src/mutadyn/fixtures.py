"""Small worked systems used throughout the tests and demos."""
from __future__ import annotations

from fractions import Fraction
from importlib import resources

from .law import MutationLaw, load_law

# 6x6 nonnegative matrix, every column sums to 5; blocks {0},{1},{2},{3,4},{5}
BLOCK_EXAMPLE = [
    [1, 0, 0, 0, 0, 0],
    [1, 5, 0, 0, 0, 0],
    [1, 0, 2, 0, 0, 0],
    [1, 0, 2, 2, 1, 0],
    [1, 0, 0, 3, 4, 0],
    [0, 0, 1, 0, 0, 5],
]


def data_path(name: str):
    return resources.files("mutadyn") / "data" / name


def load_fixture(name: str) -> MutationLaw:
    if not name.endswith(".law"):
        name += ".law"
    return load_law(data_path(name))


def running_law() -> MutationLaw:
    """0 -> 00 (2/3) | 01 (1/3);  1 -> 11 (3/4) | 00 (1/4)."""
    return MutationLaw.from_dict("01", {
        "0": {"00": Fraction(2, 3), "01": Fraction(1, 3)},
        "1": {"11": Fraction(3, 4), "00": Fraction(1, 4)},
    })


def tandem_law(a: int) -> MutationLaw:
    """0 -> 0^a and 1 -> 1^a with probability one."""
    return MutationLaw.from_dict("01", {"0": {"0" * a: 1}, "1": {"1" * a: 1}})


def flip_law(alpha) -> MutationLaw:
    """0 -> 1 w.p. alpha, 00 otherwise; symmetrically for 1.  Mean length 2 - alpha."""
    alpha = Fraction(alpha)
    return MutationLaw.from_dict("01", {
        "0": {"1": alpha, "00": 1 - alpha},
        "1": {"0": alpha, "11": 1 - alpha},
    })


def identity_law(symbols="01") -> MutationLaw:
    return MutationLaw.from_dict(symbols, {s: {s: 1} for s in symbols})


def noisy_duplication_law(probabilities=None, symbols="AGTC") -> MutationLaw:
    """a_t -> a_t b with probability ``probabilities[t][b]`` (uniform by default)."""
    d = len(symbols)
    if probabilities is None:
        probabilities = [[Fraction(1, d)] * d for _ in range(d)]
    return MutationLaw.from_dict(symbols, {
        s: {s + b: Fraction(p) for b, p in zip(symbols, row)}
        for s, row in zip(symbols, probabilities)
    })
