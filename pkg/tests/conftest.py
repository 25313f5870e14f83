from fractions import Fraction

import pytest
from hypothesis import strategies as st

from mutadyn.core import Alphabet
from mutadyn.fixtures import flip_law, identity_law, running_law, tandem_law
from mutadyn.law import MutationLaw, Rule

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def running():
    return running_law()


@pytest.fixture
def identity():
    return identity_law()


@pytest.fixture(params=[2, 3])
def tandem(request):
    return tandem_law(request.param)


@pytest.fixture
def flip_half():
    return flip_law(Fraction(1, 2))


def _words(d, min_len, max_len):
    return st.lists(st.integers(0, d - 1), min_size=min_len, max_size=max_len).map(tuple)


@st.composite
def general_laws(draw, max_d=3, max_len=3, max_rules=3):
    """Arbitrary valid laws: each symbol gets 1..max_rules distinct replacements."""
    d = draw(st.integers(1, max_d))
    rules = []
    for t in range(d):
        words = draw(st.lists(_words(d, 1, max_len), min_size=1, max_size=max_rules,
                              unique=True))
        weights = draw(st.lists(st.integers(1, 6), min_size=len(words), max_size=len(words)))
        total = sum(weights)
        rules += [Rule(t, w, Fraction(x, total)) for w, x in zip(words, weights)]
    return MutationLaw(Alphabet(tuple("abc"[:d])), rules)


@st.composite
def average_tau_laws(draw, max_d=3, max_len=4):
    """Laws whose expected replacement length is the same rational tau for every symbol.

    Each symbol mixes up to two (short, long) pairs straddling tau; the
    pair's probabilities are solved so its mean length is exactly tau.
    """
    d = draw(st.integers(1, max_d))
    tau = draw(st.fractions(min_value=1, max_value=max_len, max_denominator=6))
    lo, hi = int(tau), -(-tau.numerator // tau.denominator)
    rules = []
    for t in range(d):
        dist: dict = {}
        npairs = draw(st.integers(1, 2))
        pair_weights = draw(st.lists(st.integers(1, 4), min_size=npairs, max_size=npairs))
        for weight in pair_weights:
            share = Fraction(weight, sum(pair_weights))
            a = draw(st.integers(1, lo))
            b = draw(st.integers(hi, max_len))
            short = draw(_words(d, a, a))
            if a == b:
                dist[short] = dist.get(short, 0) + share
                continue
            p_long = (tau - a) / (b - a)
            long = draw(_words(d, b, b))
            dist[short] = dist.get(short, 0) + share * (1 - p_long)
            dist[long] = dist.get(long, 0) + share * p_long
        rules += [Rule(t, w, p) for w, p in dist.items() if p]
    return MutationLaw(Alphabet(tuple("abc"[:d])), rules), tau


@st.composite
def fixed_tau_laws(draw, max_d=2, max_tau=3):
    d = draw(st.integers(1, max_d))
    tau = draw(st.integers(1, max_tau))
    rules = []
    for t in range(d):
        words = draw(st.lists(_words(d, tau, tau), min_size=1, max_size=3, unique=True))
        weights = draw(st.lists(st.integers(1, 5), min_size=len(words), max_size=len(words)))
        rules += [Rule(t, w, Fraction(x, sum(weights))) for w, x in zip(words, weights)]
    return MutationLaw(Alphabet(tuple("abc"[:d])), rules)
