"""How hard the watermark is to reverse-engineer.

Two guarantees are quantified: a lower bound on the number of thinly
supported conditions an attacker observes (sparsity), and the chance a
naturally distributed condition looks perfectly imbalanced anyway.
Both feed the sparse-entry census that mirrors the attacker's viewpoint.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .conllu import Corpus
from .errors import NotNormalized, SpaceOverflow
from .features import Condition, FeatureSpec, extract_condition
from .lexicon import WatermarkLexicon

_MAX_SPACE_BITS = 63


def _space_size(feature_size: int, order: int) -> int:
    if feature_size > 1 and order * math.log2(feature_size) > _MAX_SPACE_BITS:
        raise SpaceOverflow(f"{feature_size}^{order} exceeds the representable count range")
    return feature_size ** order


@dataclass(frozen=True)
class SparsityReport:
    """Lower bound on conditions with support <= m among |F|^K total."""

    feature_size: int
    order: int
    sample_tokens: int
    threshold: int
    space: int
    bound: float
    precondition_holds: bool  # |F|^K > N
    observed_t: int | None = None

    def to_json(self) -> dict:
        return {
            "feature_size": self.feature_size,
            "order": self.order,
            "sample_tokens": self.sample_tokens,
            "threshold": self.threshold,
            "space": self.space,
            "bound": self.bound,
            "precondition_holds": self.precondition_holds,
            "observed_t": self.observed_t,
        }


def sparsity_bound(
    feature_size: int,
    order: int,
    sample_tokens: int,
    threshold: int,
    observed_t: int | None = None,
) -> SparsityReport:
    """Sparsity lower bound: at least |F|^K - N/(m+1) conditions have
    support <= m, provided |F|^K > N. Floored at 0."""
    if feature_size < 1 or order < 1 or threshold < 1 or sample_tokens < 0:
        raise ValueError("feature_size, order, threshold must be >= 1; sample_tokens >= 0")
    space = _space_size(feature_size, order)
    bound = max(0.0, space - sample_tokens / (threshold + 1))
    return SparsityReport(
        feature_size=feature_size,
        order=order,
        sample_tokens=sample_tokens,
        threshold=threshold,
        space=space,
        bound=bound,
        precondition_holds=space > sample_tokens,
        observed_t=observed_t,
    )


@dataclass(frozen=True)
class SupportCensus:
    """Support histogram over the full condition space.

    Conditions never observed count as support 0, which the sparsity
    bound requires.
    """

    histogram: dict[Condition, int]
    space: int

    @property
    def sample_tokens(self) -> int:
        return sum(self.histogram.values())

    def observed_t(self, m: int) -> int:
        """Number of conditions (out of the whole space) with support <= m."""
        thin = sum(1 for s in self.histogram.values() if s <= m)
        return self.space - len(self.histogram) + thin


def census_from_counts(condition_counts: dict[Condition, int], space: int) -> SupportCensus:
    return SupportCensus(dict(condition_counts), space)


def support_census(
    corpus: Corpus, lexicon: WatermarkLexicon, spec: FeatureSpec
) -> SupportCensus:
    """Tally candidate-unit support per condition, pooled across sets."""
    counts: Counter[Condition] = Counter()
    for sentence in corpus.sentences:
        for tok in sentence.tokens:
            if lexicon.match_token(tok.surface) is None:
                continue
            counts[extract_condition(sentence, tok.index, spec)] += 1
    return SupportCensus(dict(counts), _space_size(spec.labelset_size, spec.order))


def imbalance_prob(dist_column, m: int) -> float:
    """Probability that m draws from the column all land on one word."""
    if m < 1:
        raise ValueError("m must be >= 1")
    total = float(sum(dist_column))
    if abs(total - 1.0) > 1e-9:
        raise NotNormalized(f"column sums to {total}, expected 1")
    return float(sum(p ** m for p in dist_column))


@dataclass(frozen=True)
class ImbalanceReport:
    condition: Condition
    m: int
    probability: float


def suspected_entries(
    sample: Corpus,
    lexicon: WatermarkLexicon,
    spec: FeatureSpec,
    min_support: int = 1,
) -> tuple[int, dict[int, list[tuple[Condition, str, int]]]]:
    """The attacker's suspects: (set, condition) pairs where one single
    word was ever observed, with support >= min_support.

    Returns total count plus, per set, the (condition, word, support)
    detail. min_support separates "never seen enough" from "seen and
    perfectly imbalanced".
    """
    observed: dict[tuple[int, Condition], Counter] = {}
    for sentence in sample.sentences:
        for tok in sentence.tokens:
            hit = lexicon.match_token(tok.surface)
            if hit is None:
                continue
            set_id, _ = hit
            condition = extract_condition(sentence, tok.index, spec)
            observed.setdefault((set_id, condition), Counter())[tok.surface.lower()] += 1
    per_set: dict[int, list[tuple[Condition, str, int]]] = {}
    total = 0
    for (set_id, condition), words in observed.items():
        support = sum(words.values())
        if support < min_support or len(words) != 1:
            continue
        (word, _), = words.items()
        per_set.setdefault(set_id, []).append((condition, word, support))
        total += 1
    return total, per_set


def combinatorial_upper_bound(num_sets: int, feature_size: int, order: int) -> int:
    """All rule slots an uninformed attacker must consider."""
    if num_sets < 1 or feature_size < 1 or order < 1:
        raise ValueError("all inputs must be >= 1")
    return num_sets * _space_size(feature_size, order)
