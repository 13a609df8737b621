"""Identification stage: count watermark hits and run the binomial test.

A unit is one occurrence of a candidate word together with its extracted
condition; a hit is a unit whose word equals the rule table's designated
word for that condition. Units under conditions the rule table does not
cover are excluded from both counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .conllu import Corpus
from .errors import InvalidP, NoSupport, ZeroN
from .features import extract_condition
from .lexicon import WatermarkLexicon
from .rules import RuleTable


@dataclass(frozen=True)
class VerificationReport:
    k: int
    n: int
    p: float
    p_value: float
    per_set: dict[int, tuple[int, int]]  # set_id -> (k, n)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "p": self.p,
            "p_value": self.p_value,
            "per_set": [
                {"id": sid, "k": kn[0], "n": kn[1]}
                for sid, kn in sorted(self.per_set.items())
            ],
        }


def count_units(
    corpus: Corpus, lexicon: WatermarkLexicon, rules: RuleTable
) -> tuple[int, int, dict[int, tuple[int, int]]]:
    """Count rule-covered units (n) and designated-word hits (k)."""
    k = n = 0
    per_set: dict[int, list[int]] = {}
    for sentence in corpus.sentences:
        for tok in sentence.tokens:
            hit = lexicon.match_token(tok.surface)
            if hit is None:
                continue
            set_id, _ = hit
            condition = extract_condition(sentence, tok.index, rules.feature)
            designated = rules.designated(set_id, condition)
            if designated is None:
                continue
            n += 1
            counters = per_set.setdefault(set_id, [0, 0])
            counters[1] += 1
            if tok.surface.lower() == designated:
                k += 1
                counters[0] += 1
    return k, n, {sid: (c[0], c[1]) for sid, c in per_set.items()}


def estimate_null_p(
    reference: Corpus, lexicon: WatermarkLexicon, rules: RuleTable
) -> float:
    """Fraction of reference units that already match the designated words.

    The reference should be pre-watermark, training-like text; this is
    the chance a natural unit looks like a watermark hit.
    """
    hits, units, _ = count_units(reference, lexicon, rules)
    if units == 0:
        raise NoSupport("reference corpus contains no rule-covered units")
    return hits / units


def _log_tails(k: int, n: int, p: float) -> tuple[float, float]:
    """(log Pr(X <= k), log Pr(X >= k)) by exact log-space summation.

    Terms are sorted before accumulation so equal tail multisets sum to
    bit-identical results regardless of which side they came from.
    """
    i = np.arange(n + 1)
    log_comb = gammaln(n + 1) - (gammaln(i + 1) + gammaln(n - i + 1))
    log_pmf = log_comb + i * math.log(p) + (n - i) * math.log(1.0 - p)

    def logsum(terms: np.ndarray) -> float:
        m = terms.max()
        return float(m + np.log(np.sort(np.exp(terms - m)).sum()))

    return logsum(log_pmf[: k + 1]), logsum(log_pmf[k:])


def binom_two_tail(k: int, n: int, p: float) -> float:
    """Two-tailed exact binomial p-value: 2 * min(Pr(X>=k), Pr(X<=k)).

    Mass is summed exactly in log space (no normal approximation), and
    the doubled tail is clamped to 1. Raises ZeroN for n < 1, InvalidP
    for p outside the open interval (0, 1).
    """
    if n < 1:
        raise ZeroN("binomial test needs n >= 1")
    if not 0 <= k <= n:
        raise ValueError(f"k must be within 0..{n}")
    if not 0.0 < p < 1.0:
        raise InvalidP(f"p must lie strictly between 0 and 1, got {p}")
    if p > 0.5:
        # Canonical orientation keeps the k <-> n-k symmetry exact.
        k, p = n - k, 1.0 - p
    lower, upper = _log_tails(k, n, p)
    p_value = 2.0 * math.exp(min(lower, upper))
    return min(1.0, p_value)


def verify(
    suspect: Corpus,
    reference: Corpus,
    lexicon: WatermarkLexicon,
    rules: RuleTable,
) -> VerificationReport:
    """Full identification pass: units, null probability, p-value."""
    k, n, per_set = count_units(suspect, lexicon, rules)
    p = estimate_null_p(reference, lexicon, rules)
    p_value = binom_two_tail(k, n, p)
    return VerificationReport(k=k, n=n, p=p, p_value=p_value, per_set=per_set)
