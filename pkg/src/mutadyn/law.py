"""Mutation laws: per-symbol distributions over nonempty replacement words.

Law files are line oriented::

    # comment
    alphabet: 0 1
    rule 0 -> 00 : 2/3
    rule 0 -> 01 : 1/3
    rule 1 -> 11 : 3/4
    rule 1 -> 00 : 1/4

Replacement words use the same conventions as :meth:`Alphabet.parse_word`.
"""
from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .core import Alphabet, Word

FIXED = "fixed-tau"
AVERAGE = "average-tau"
GENERAL = "general"


class LawError(ValueError):
    """Malformed or invalid mutation law."""


@dataclass(frozen=True)
class Rule:
    source: int
    replacement: Word
    probability: Fraction


@dataclass(frozen=True)
class LawClassification:
    kind: str
    tau: Fraction | None
    expected_lengths: tuple[Fraction, ...]

    def describe(self) -> str:
        if self.kind == GENERAL:
            return GENERAL
        return f"{self.kind}, tau={_fmt(self.tau)}"


def _fmt(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


class MutationLaw:
    """A validated mutation law over an alphabet.

    ``rules[t]`` is the tuple of :class:`Rule` for symbol index ``t``.
    Probabilities are exact and sum to exactly one per symbol.
    """

    def __init__(self, alphabet: Alphabet, rules: Iterable[Rule]):
        self.alphabet = alphabet
        per_symbol: list[list[Rule]] = [[] for _ in range(alphabet.d)]
        for rule in rules:
            if not 0 <= rule.source < alphabet.d:
                raise LawError(f"rule source index {rule.source} outside alphabet")
            if len(rule.replacement) == 0:
                raise LawError(
                    f"empty replacement for symbol {alphabet.symbols[rule.source]!r}")
            if any(not 0 <= i < alphabet.d for i in rule.replacement):
                raise LawError("replacement uses a symbol outside the alphabet")
            p = Fraction(rule.probability)
            if p < 0 or p > 1:
                raise LawError(f"probability {_fmt(p)} outside [0, 1]")
            if p == 0:
                continue
            if any(r.replacement == rule.replacement for r in per_symbol[rule.source]):
                raise LawError(
                    f"duplicate replacement "
                    f"{alphabet.format_word(rule.replacement)!r} for symbol "
                    f"{alphabet.symbols[rule.source]!r}")
            per_symbol[rule.source].append(Rule(rule.source, tuple(rule.replacement), p))
        for t, rs in enumerate(per_symbol):
            sym = alphabet.symbols[t]
            if not rs:
                raise LawError(f"symbol {sym!r} has no rule")
            total = sum(r.probability for r in rs)
            if total != 1:
                raise LawError(f"probability sum {_fmt(total)} != 1 for symbol {sym!r}")
        self.rules: tuple[tuple[Rule, ...], ...] = tuple(tuple(rs) for rs in per_symbol)

    @classmethod
    def from_dict(cls, alphabet: Alphabet | Sequence[str], table: dict) -> "MutationLaw":
        """Build from ``{token: {replacement_text: probability}}``."""
        if not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(tuple(alphabet))
        rules = []
        for tok, dist in table.items():
            t = alphabet.index(tok)
            for repl, p in dist.items():
                word = alphabet.parse_word(repl) if isinstance(repl, str) else tuple(repl)
                rules.append(Rule(t, word, Fraction(p)))
        return cls(alphabet, rules)

    @property
    def d(self) -> int:
        return self.alphabet.d

    def all_rules(self) -> list[Rule]:
        return [r for rs in self.rules for r in rs]

    def expected_lengths(self) -> tuple[Fraction, ...]:
        return tuple(sum(r.probability * len(r.replacement) for r in rs)
                     for rs in self.rules)

    def max_rules(self) -> int:
        return max(len(rs) for rs in self.rules)

    def digest(self) -> str:
        """Short content hash used to tag matrices built from this law."""
        return hashlib.sha256(serialize_law(self).encode()).hexdigest()[:16]

    def __eq__(self, other):
        if not isinstance(other, MutationLaw):
            return NotImplemented
        return (self.alphabet == other.alphabet
                and [set(rs) for rs in self.rules] == [set(rs) for rs in other.rules])

    def __repr__(self):
        return f"MutationLaw(alphabet={self.alphabet.symbols}, rules={len(self.all_rules())})"


def classify(law: MutationLaw) -> LawClassification:
    lengths = law.expected_lengths()
    replacement_lengths = {len(r.replacement) for r in law.all_rules()}
    if len(replacement_lengths) == 1:
        return LawClassification(FIXED, Fraction(replacement_lengths.pop()), lengths)
    if len(set(lengths)) == 1:
        return LawClassification(AVERAGE, lengths[0], lengths)
    return LawClassification(GENERAL, None, lengths)


_RULE_RE = re.compile(r"^rule\s+(\S+)\s*->\s*(.*?)\s*:\s*(\S+)\s*$")


def _parse_probability(text: str, lineno: int) -> Fraction:
    if not re.fullmatch(r"\d+(/\d+)?", text):
        raise LawError(f"line {lineno}: malformed rational {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise LawError(f"line {lineno}: malformed rational {text!r} (zero denominator)") from None


def parse_law(text: str) -> MutationLaw:
    alphabet = None
    rules = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("alphabet:"):
            if alphabet is not None:
                raise LawError(f"line {lineno}: alphabet declared twice")
            try:
                alphabet = Alphabet(tuple(line[len("alphabet:"):].split()))
            except ValueError as exc:
                raise LawError(f"line {lineno}: {exc}") from None
            continue
        match = _RULE_RE.match(line)
        if match is None:
            raise LawError(f"line {lineno}: cannot parse {raw.strip()!r}")
        if alphabet is None:
            raise LawError(f"line {lineno}: rule before alphabet declaration")
        src, repl, prob = match.groups()
        try:
            t = alphabet.index(src)
            word = alphabet.parse_word(repl)
        except ValueError as exc:
            raise LawError(f"line {lineno}: unknown symbol: {exc}") from None
        if not word:
            raise LawError(f"line {lineno}: empty replacement for symbol {src!r}")
        if (t, word) in seen:
            raise LawError(f"line {lineno}: duplicate rule {src} -> {repl}")
        seen.add((t, word))
        rules.append(Rule(t, word, _parse_probability(prob, lineno)))
    if alphabet is None:
        raise LawError("missing 'alphabet:' line")
    return MutationLaw(alphabet, rules)


def serialize_law(law: MutationLaw) -> str:
    lines = ["alphabet: " + " ".join(law.alphabet.symbols)]
    for t, rs in enumerate(law.rules):
        for r in rs:
            lines.append(f"rule {law.alphabet.symbols[t]} -> "
                         f"{law.alphabet.format_word(r.replacement)} : {_fmt(r.probability)}")
    return "\n".join(lines) + "\n"


def load_law(path) -> MutationLaw:
    with open(path, encoding="utf-8") as fh:
        return parse_law(fh.read())
