"""Acceptance criteria, one test each, at the stated tolerances.

Every test appends a PASS/FAIL line that is printed in the terminal summary.
Run alone with ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
"""
import io
import random
import time
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE_LINES
import paper_values as pv
from mutadyn.cli import dispatch
from mutadyn.core import Alphabet, count_vector
from mutadyn.expectation import expected_frequency_fixed
from mutadyn.fixtures import BLOCK_EXAMPLE, data_path, flip_law, running_law, tandem_law
from mutadyn.law import MutationLaw, Rule, classify
from mutadyn.matrix import build_substitution_matrix
from mutadyn.oracle import enumerate_distribution, oracle_expected_frequency
from mutadyn.simulate import empirical_distribution, monte_carlo_frequency
from mutadyn.spectral import (FAILS, HOLDS, check_convergence_conditions, condense,
                              left_absorption_vectors, limiting_expected_frequency,
                              right_perron_vectors)

ALPHAS = [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]


def verdict(label, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def inf_gap(a, b):
    return max(abs(float(x) - float(y)) for x, y in zip(a, b))


def test_c1_substitution_matrices_exact():
    t0 = time.perf_counter()
    checks = {
        "running k=1": build_substitution_matrix(running_law(), 1).entries.tolist()
        == pv.running_m1(),
        "running k=2": build_substitution_matrix(running_law(), 2).entries.tolist()
        == pv.running_m2(),
    }
    for a in (2, 3):
        checks[f"tandem a={a}"] = \
            build_substitution_matrix(tandem_law(a), 2).entries.tolist() == pv.tandem_m2(a)
    for al in ALPHAS:
        law = flip_law(al)
        checks[f"flip {al} k=2"] = \
            build_substitution_matrix(law, 2).entries.tolist() == pv.flip_m2(al)
        checks[f"flip {al} k=3"] = \
            build_substitution_matrix(law, 3).entries.tolist() == pv.flip_m3(al)
    elapsed = time.perf_counter() - t0
    bad = [name for name, ok in checks.items() if not ok]
    verdict("1 substitution matrices exact", not bad and elapsed < 1.0,
            f"{len(checks)} matrices, mismatches={bad}, {elapsed:.3f}s < 1s")


def _random_average_law(rng: random.Random):
    """Each symbol mixes 1..3 (short, long) word pairs, each pair with mean length tau."""
    d = rng.randint(1, 3)
    tau = min(Fraction(rng.randint(6, 24), rng.randint(1, 6)), Fraction(4))
    lo, hi = int(tau), -(-tau.numerator // tau.denominator)
    rules = []
    for t in range(d):
        npairs = rng.randint(1, 3)
        probs: dict = {}
        for _ in range(npairs):
            a, b = rng.randint(1, lo), rng.randint(hi, 4)
            short = tuple(rng.randrange(d) for _ in range(a))
            long = tuple(rng.randrange(d) for _ in range(b))
            p_long = Fraction(0) if a == b else (tau - a) / (b - a)
            probs[short] = probs.get(short, 0) + (1 - p_long) / npairs
            probs[long] = probs.get(long, 0) + p_long / npairs
        rules += [Rule(t, w, p) for w, p in probs.items() if p]
    return MutationLaw(Alphabet(tuple("abc"[:d])), rules), tau


def test_c2_column_sum_law():
    rng = random.Random(20261016)
    t0 = time.perf_counter()
    failures = 0
    for _ in range(200):
        law, tau = _random_average_law(rng)
        assert classify(law).tau == tau
        k = rng.randint(1, 3)
        sums = build_substitution_matrix(law, k).column_sums()
        failures += sums != [tau + k - 1] * law.d**k
    elapsed = time.perf_counter() - t0
    verdict("2 column sums equal tau+k-1", failures == 0 and elapsed < 10,
            f"200 random average-tau laws, {failures} failures, {elapsed:.2f}s < 10s")


def test_c3_product_recursion_vs_oracle():
    t0 = time.perf_counter()
    mismatches = []
    for word in ((0, 1), (0, 0, 1, 1, 1)):
        for k in (1, 2):
            for n in range(5):
                if expected_frequency_fixed(running_law(), word, k, n) != \
                        oracle_expected_frequency(running_law(), word, k, n):
                    mismatches.append((word, k, n))
    elapsed = time.perf_counter() - t0
    verdict("3 product recursion equals oracle", not mismatches and elapsed < 30,
            f"20 cases, mismatches={mismatches}, {elapsed:.2f}s < 30s")


def test_c4_limits():
    m2 = build_substitution_matrix(running_law(), 2)
    ct = count_vector((0, 0, 1, 1, 1), 2, 2)
    running = limiting_expected_frequency(m2, ct)
    tandem = limiting_expected_frequency(build_substitution_matrix(tandem_law(3), 2),
                                         [0, 1, 1, 0])
    flip = limiting_expected_frequency(build_substitution_matrix(flip_law(Fraction(1, 2)), 2),
                                       [0, 1, 1, 0])
    gaps = {k: inf_gap(expected_frequency_fixed(running_law(), (0, 0, 1, 1, 1), k, 5000), lim)
            for k, lim in ((1, pv.RUNNING_K1_LIMIT), (2, pv.RUNNING_K2_LIMIT))}
    ok = (running == pv.RUNNING_K2_LIMIT
          and inf_gap(running, pv.RUNNING_K2_DECIMAL) < 5e-4
          and tandem == [Fraction(1, 2), 0, 0, Fraction(1, 2)]
          and flip == [Fraction(3, 10), Fraction(1, 5), Fraction(1, 5), Fraction(3, 10)]
          and all(g < 1e-3 for g in gaps.values()))
    verdict("4 limits reproduce the published values", ok,
            f"running={' '.join(map(str, running))}, n=5000 gaps k=1 {gaps[1]:.2e} "
            f"k=2 {gaps[2]:.2e} < 1e-3")


def test_c5_block_fixture():
    b = condense(BLOCK_EXAMPLE)
    lefts = left_absorption_vectors(BLOCK_EXAMPLE, b)
    ok = (b.maximal_blocks == [(1,), (3, 4), (5,)]
          and right_perron_vectors(BLOCK_EXAMPLE, b) == list(pv.BLOCK_RIGHT.values())
          and lefts == list(pv.BLOCK_LEFT.values())
          and [sum(col) for col in zip(*lefts)] == [1] * 6)
    verdict("5 six-by-six fixture exact", ok, f"maximal classes {b.maximal_blocks}")


def test_c6_condition_checker():
    flip = check_convergence_conditions(
        build_substitution_matrix(flip_law(Fraction(1, 2)), 2), k=2, tau=Fraction(3, 2))
    spectrum = sorted(flip.eigenvalues, key=lambda z: -z.real)
    spec_gap = max(abs(z - w) for z, w in zip(spectrum, [2.5, 1.5, 1, 0]))
    tandem = check_convergence_conditions(build_substitution_matrix(tandem_law(3), 2), k=2)
    ok = (flip.s == 1 and flip.all_simple and flip.verdict == HOLDS and spec_gap < 1e-8
          and tandem.s == 2 and tandem.verdict == FAILS)
    verdict("6 convergence-condition checker", ok,
            f"flip s={flip.s} simple={flip.all_simple} spectrum gap {spec_gap:.1e}; "
            f"tandem s={tandem.s} {tandem.verdict}")


@pytest.fixture(scope="module")
def flip_monte_carlo():
    t0 = time.perf_counter()
    summary = monte_carlo_frequency(flip_law(Fraction(1, 2)), (0, 1), 2, 5000, trials=200,
                                    seed=4242, threads=1)
    return summary, time.perf_counter() - t0


def test_c7a_monte_carlo_frequency(flip_monte_carlo):
    summary, elapsed = flip_monte_carlo
    gap = inf_gap(summary.mean, [0.3, 0.2, 0.2, 0.3])
    verdict("7a Monte Carlo mean frequency near Perron vector", gap < 0.02 and elapsed < 120,
            f"gap {gap:.4f} < 0.02, {elapsed:.1f}s < 120s single-threaded")


def test_c7b_monte_carlo_drift(flip_monte_carlo):
    # stated target 3/4; tau - 1 for this law is 1/2 (mean replacement length 3/2)
    summary, _ = flip_monte_carlo
    tau = classify(flip_law(Fraction(1, 2))).tau
    verdict("7b Monte Carlo drift within 0.02 of 3/4", abs(summary.mean_drift - 0.75) < 0.02,
            f"drift {summary.mean_drift:.4f}; tau-1 = {tau - 1}, "
            f"|drift-(tau-1)| = {abs(summary.mean_drift - float(tau - 1)):.4f}")


def test_c8_one_step_ground_truth():
    exact = enumerate_distribution(running_law(), (0, 1), 1).as_dict()
    emp = empirical_distribution(running_law(), (0, 1), 1, 100_000, seed=8)
    tv = sum(abs(float(exact.get(w, 0)) - emp.get(w, 0)) for w in set(exact) | set(emp)) / 2
    verdict("8 one-step distribution exact; Monte Carlo TV < 0.01",
            exact == pv.ONE_STEP_01 and tv < 0.01, f"TV {tv:.4f}")


def test_c9_determinism(tmp_path):
    def once(csv_path):
        out = io.StringIO()
        code = dispatch(["simulate", "--law", str(data_path("flip_half.law")), "--word", "01",
                         "--k", "2", "--steps", "300", "--trials", "64", "--seed", "99",
                         "--emit-csv", str(csv_path)], out, io.StringIO())
        assert code == 0
        return out.getvalue().encode(), csv_path.read_bytes()

    csv_path = tmp_path / "run.csv"
    first = once(csv_path)
    second = once(csv_path)
    verdict("9 simulate output byte-identical across runs", first == second,
            f"{len(first[0])} stdout bytes, {len(first[1])} csv bytes")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
