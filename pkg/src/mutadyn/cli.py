"""Command-line interface.

Subcommands: check, build-matrix, expect, limit, simulate, oracle.
Exit codes: 0 success, 1 validation error, 2 resource cap exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from fractions import Fraction

from . import __version__
from .core import tuple_from_index
from .expectation import expected_frequency_trajectory, step_expected_count
from .law import FIXED, LawError, MutationLaw, classify, load_law
from .matrix import (DEFAULT_MAX_DIM, ResourceCapError, build_substitution_matrix,
                     serialize_matrix)
from .oracle import (DEFAULT_MAX_OUTCOMES, enumerate_distribution, expected_count,
                     expected_frequency, normalized_expected_count)
from .simulate import monte_carlo_frequency
from .spectral import spectral_report

EXIT_OK, EXIT_VALIDATION, EXIT_CAP = 0, 1, 2


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def fmt_q(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def fmt_f(x) -> str:
    if isinstance(x, complex):
        if x.imag == 0:
            return fmt_f(x.real)
        return f"{x.real:.17g}{x.imag:+.17g}j"
    return f"{float(x):.17g}"


def fmt_qs(values) -> str:
    return " ".join(fmt_q(v) for v in values)


def fmt_fs(values) -> str:
    return " ".join(fmt_f(v) for v in values)


def emit_report(config: list, result: list, fmt: str = "text") -> str:
    """Serialize ``(key, value)`` pairs deterministically.

    ``structured`` is flat ``key = value`` lines with config keys prefixed
    by ``config.``; ``text`` groups the same lines under two headers.
    """
    lines = []
    if fmt == "structured":
        lines += [f"config.{k} = {v}" for k, v in config]
        lines += [f"{k} = {v}" for k, v in result]
    else:
        lines.append("# config")
        lines += [f"{k} = {v}" for k, v in config]
        lines.append("# result")
        lines += [f"{k} = {v}" for k, v in result]
    return "\n".join(lines) + "\n"


def _tuple_labels(law: MutationLaw, k: int) -> list[str]:
    return [law.alphabet.format_word(tuple_from_index(r, k, law.d)) for r in range(law.d**k)]


def _load(args):
    try:
        return load_law(args.law)
    except FileNotFoundError:
        raise UsageError(f"law file not found: {args.law}") from None


def _word(args, law):
    if args.word is None:
        raise UsageError("--word is required")
    if not args.word.strip():
        raise UsageError("word must be nonempty")
    try:
        return law.alphabet.parse_word(args.word)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _check_k(args, m=None):
    if args.k < 1:
        raise UsageError("--k must be >= 1")
    if m is not None and m < args.k:
        raise UsageError(f"word length {m} is shorter than k={args.k}")


def _matrix(args, law):
    return build_substitution_matrix(law, args.k, max_dim=args.max_dim)


def _conditions(rep) -> list:
    c = rep.conditions
    out = [
        ("spectrum", fmt_fs(c.eigenvalues)),
        ("clusters", "; ".join(f"{fmt_f(cl.value)} mu_a={cl.algebraic} mu_g={cl.geometric}"
                               for cl in c.clusters)),
        ("unique_real_max", str(c.unique_real_max).lower()),
        ("verdict", c.verdict),
    ]
    out += [("reason", r) for r in c.reasons]
    return out


def cmd_check(args, config):
    law = _load(args)
    _check_k(args)
    cls = classify(law)
    result = [
        ("classification", cls.kind),
        ("tau", fmt_q(cls.tau) if cls.tau is not None else "none"),
        ("expected_lengths", fmt_qs(cls.expected_lengths)),
    ]
    if cls.tau is None:
        result.append(("matrix", f"skipped: column sums differ for a {cls.kind} law"))
        return result, None
    matrix = _matrix(args, law)
    sums = set(matrix.column_sums())
    result.append(("column_sum", " ".join(fmt_q(s) for s in sorted(sums))))
    rep = spectral_report(matrix, k=args.k)
    result += [
        ("blocks", " | ".join(" ".join(map(str, b)) for b in rep.blocks.blocks)),
        ("maximal", " | ".join(" ".join(map(str, b)) for b in rep.blocks.maximal_blocks)),
        ("s", str(rep.s)),
    ]
    result += _conditions(rep)
    return result, None


def cmd_build_matrix(args, config):
    law = _load(args)
    _check_k(args)
    return serialize_matrix(_matrix(args, law)), None


def cmd_expect(args, config):
    law = _load(args)
    word = _word(args, law)
    _check_k(args, len(word))
    if args.steps < 0:
        raise UsageError("--steps must be >= 0")
    cls = classify(law)
    labels = _tuple_labels(law, args.k)
    if cls.kind != FIXED:
        if args.steps != 1:
            raise UsageError(f"multi-step exact expectation needs a fixed-length law "
                             f"(law is {cls.kind}); use --steps 1 or the oracle")
        from .core import count_vector
        ct = step_expected_count(_matrix(args, law), count_vector(word, args.k, law.d),
                                 len(word))
        return [("tuples", " ".join(labels)), ("expected_count", fmt_qs(ct)),
                ("expected_count_decimal", fmt_fs(ct))], None
    matrix = _matrix(args, law)
    rows = []
    for step, length, fr in expected_frequency_trajectory(law, word, args.k, args.steps, matrix):
        if args.emit_csv:
            rows.append([step, length] + [fmt_f(x) for x in fr])
    result = [("tuples", " ".join(labels)), ("length", str(length)),
              ("expected_frequency", fmt_qs(fr)),
              ("expected_frequency_decimal", fmt_fs(fr))]
    csv_text = None
    if args.emit_csv:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["step", "length"] + labels)
        writer.writerows(rows)
        csv_text = buf.getvalue()
    return result, csv_text


def cmd_limit(args, config):
    law = _load(args)
    word = _word(args, law)
    _check_k(args, len(word))
    from .core import count_vector
    matrix = _matrix(args, law)
    ct = [int(c) for c in count_vector(word, args.k, law.d)]
    rep = spectral_report(matrix, ct=ct, m=len(word), k=args.k)
    result = [("tuples", " ".join(_tuple_labels(law, args.k))),
              ("rho", fmt_q(rep.rho)), ("s", str(rep.s))]
    for j, (b, r, ell, a) in enumerate(zip(rep.blocks.maximal_blocks, rep.right_vectors,
                                            rep.left_vectors, rep.alphas)):
        result += [(f"class_{j}", " ".join(map(str, b))), (f"right_{j}", fmt_qs(r)),
                   (f"left_{j}", fmt_qs(ell)), (f"alpha_{j}", fmt_q(a))]
    result += [("limit", fmt_qs(rep.limit)), ("limit_decimal", fmt_fs(rep.limit))]
    result += _conditions(rep)
    return result, None


def cmd_simulate(args, config):
    law = _load(args)
    word = _word(args, law)
    _check_k(args, len(word))
    if args.steps < 0 or args.trials < 1:
        raise UsageError("--steps must be >= 0 and --trials >= 1")
    summary = monte_carlo_frequency(law, word, args.k, args.steps, args.trials, args.seed,
                                    threads=args.threads)
    labels = _tuple_labels(law, args.k)
    result = [("tuples", " ".join(labels)), ("mean", fmt_fs(summary.mean)),
              ("std", fmt_fs(summary.std)), ("mean_drift", fmt_f(summary.mean_drift)),
              ("drift_std", fmt_f(summary.drift_std))]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["tuple", "mean", "std"])
    for label, mu, sd in zip(labels, summary.mean, summary.std):
        writer.writerow([label, fmt_f(mu), fmt_f(sd)])
    return result, buf.getvalue()


def cmd_oracle(args, config):
    law = _load(args)
    word = _word(args, law)
    _check_k(args, len(word))
    if args.steps < 0:
        raise UsageError("--steps must be >= 0")
    dist = enumerate_distribution(law, word, args.steps, max_outcomes=args.max_outcomes)
    result = [("outcomes", str(len(dist))), ("total", fmt_q(dist.total()))]
    result += [(f"p[{law.alphabet.format_word(w)}]", fmt_q(p)) for w, p in dist.outcomes]
    result += [
        ("tuples", " ".join(_tuple_labels(law, args.k))),
        ("expected_length", fmt_q(dist.expected_length())),
        ("expected_frequency", fmt_qs(expected_frequency(dist, args.k, law.d))),
        ("expected_count", fmt_qs(expected_count(dist, args.k, law.d))),
        ("normalized_expected_count", fmt_qs(normalized_expected_count(dist, args.k, law.d))),
    ]
    return result, None


COMMANDS = {
    "check": cmd_check,
    "build-matrix": cmd_build_matrix,
    "expect": cmd_expect,
    "limit": cmd_limit,
    "simulate": cmd_simulate,
    "oracle": cmd_oracle,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mutadyn", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"mutadyn {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help, word=True, steps=False):
        p = sub.add_parser(name, help=help)
        p.add_argument("--law", required=True, metavar="FILE")
        p.add_argument("--k", type=int, default=1)
        p.add_argument("--max-dim", type=int, default=None)
        p.add_argument("--format", choices=["text", "structured"], default="text")
        p.add_argument("--output", metavar="PATH")
        if word:
            p.add_argument("--word", required=True)
        if steps:
            p.add_argument("--steps", type=int, required=True)
        return p

    add("check", "classify a law and check its k-substitution matrix", word=False)
    add("build-matrix", "print the exact k-substitution matrix", word=False)
    p = add("expect", "exact expected k-tuple frequency after n steps", steps=True)
    p.add_argument("--emit-csv", metavar="PATH")
    add("limit", "limiting expected frequency and spectral report")
    p = add("simulate", "Monte Carlo k-tuple frequencies", steps=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--emit-csv", metavar="PATH")
    p = add("oracle", "exact outcome distribution by enumeration", steps=True)
    p.add_argument("--max-outcomes", type=int, default=DEFAULT_MAX_OUTCOMES)
    return parser


def _resolve(args) -> list:
    if args.max_dim is None:
        args.max_dim = int(os.environ.get("MUTADYN_MAX_DIM", DEFAULT_MAX_DIM))
    skip = {"command", "output", "format"}
    return [("command", args.command)] + [
        (key.replace("_", "-"), "" if val is None else str(val))
        for key, val in sorted(vars(args).items()) if key not in skip
    ]


def dispatch(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        config = _resolve(args)
        result, csv_text = COMMANDS[args.command](args, config)
        if isinstance(result, str):
            text = result
        else:
            text = emit_report(config, result, args.format)
        if getattr(args, "emit_csv", None) and csv_text is not None:
            with open(args.emit_csv, "w", encoding="utf-8", newline="") as fh:
                fh.write(csv_text)
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            stdout.write(text)
        return EXIT_OK
    except ResourceCapError as exc:
        print(f"mutadyn: resource cap exceeded: {exc}", file=stderr)
        return EXIT_CAP
    except (LawError, UsageError, ValueError, ArithmeticError, OSError) as exc:
        print(f"mutadyn: error: {exc}", file=stderr)
        return EXIT_VALIDATION


def main(argv=None):
    sys.exit(dispatch(argv))


if __name__ == "__main__":
    main()
