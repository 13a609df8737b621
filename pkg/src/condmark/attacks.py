"""Adaptive-attack simulators: what a savvy imitator can recover.

The frequency attack ranks words by their frequency ratio between a
benign reference and the suspect output; unconditional watermarks light
up immediately, conditional ones with a preserved marginal do not. The
leakage attack assumes the attacker knows the lexicon and feature
construction and inspects conditional sparsity.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .conllu import Corpus
from .features import Condition, FeatureSpec
from .identifiability import suspected_entries
from .lexicon import WatermarkLexicon


@dataclass(frozen=True)
class SuspicionRanking:
    """Words ordered by frequency-ratio change between corpora.

    direction "decreased": ratio descending, suspected replaced words
    first. direction "increased": ratio ascending, suspected
    substitutions first.
    """

    entries: tuple[tuple[str, float], ...]
    direction: str


@dataclass(frozen=True)
class LeakageResult:
    suspected: frozenset[tuple[int, Condition, str]]
    true_rules: frozenset[tuple[int, Condition, str]]
    precision: float
    recall: float
    confusion_factor: float


def word_frequencies(corpus: Corpus) -> Counter:
    counts: Counter = Counter()
    for sentence in corpus.sentences:
        for tok in sentence.tokens:
            counts[tok.surface.lower()] += 1
    return counts


def top_words_union(reference: Corpus, suspect: Corpus, top: int = 100) -> set[str]:
    """Default attack vocabulary: union of both corpora's top words."""
    ref = word_frequencies(reference)
    sus = word_frequencies(suspect)
    pick = lambda c: {w for w, _ in c.most_common(top)}
    return pick(ref) | pick(sus)


def frequency_attack(
    reference: Corpus,
    suspect: Corpus,
    vocab: set[str],
    direction: str = "decreased",
) -> SuspicionRanking:
    """Rank vocab words by add-one-smoothed frequency ratio
    (reference+1)/(suspect+1)."""
    if not vocab:
        raise ValueError("vocab must be nonempty")
    if direction not in ("decreased", "increased"):
        raise ValueError("direction must be 'decreased' or 'increased'")
    ref = word_frequencies(reference)
    sus = word_frequencies(suspect)
    ratios = [(w, (ref[w] + 1) / (sus[w] + 1)) for w in vocab]
    reverse = direction == "decreased"
    # Word as secondary key keeps the ranking deterministic under ties.
    ratios.sort(key=lambda e: ((-e[1] if reverse else e[1]), e[0]))
    return SuspicionRanking(tuple(ratios), direction)


def leakage_attack(
    suspect: Corpus,
    lexicon: WatermarkLexicon,
    spec: FeatureSpec,
    min_support: int = 1,
) -> set[tuple[int, Condition, str]]:
    """Suspect every (set, condition) whose observed word choice is
    perfectly imbalanced; the dominant word completes the rule guess."""
    _, per_set = suspected_entries(suspect, lexicon, spec, min_support)
    return {
        (set_id, condition, word)
        for set_id, entries in per_set.items()
        for condition, word, _ in entries
    }


def score_leakage(
    suspected: set[tuple[int, Condition, str]],
    true_rules: set[tuple[int, Condition, str]],
) -> LeakageResult:
    """Precision/recall of the attacker's guesses against the real rules."""
    inter = suspected & true_rules
    precision = len(inter) / len(suspected) if suspected else 0.0
    recall = len(inter) / len(true_rules) if true_rules else 0.0
    return LeakageResult(
        suspected=frozenset(suspected),
        true_rules=frozenset(true_rules),
        precision=precision,
        recall=recall,
        confusion_factor=len(suspected) / max(1, len(inter)),
    )
