"""Conditional word-choice statistics estimated from a tagged corpus.

For every synonym set this produces the constants of the rule optimizer:
the matrix W of word probabilities per condition, the condition prior
vector c, and the raw counts behind both.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .conllu import Corpus
from .errors import EmptyCounts, FormatError, SetMismatch
from .features import Condition, FeatureSpec, extract_condition, format_condition, parse_condition
from .lexicon import WatermarkLexicon


@dataclass
class CondCounts:
    """Per synonym set: occurrence counts of each word under each condition.

    Conditions keep first-appearance order, which downstream artifacts
    rely on for deterministic serialization.
    """

    set_id: int
    num_words: int
    counts: dict[Condition, list[int]] = field(default_factory=dict)

    def add(self, condition: Condition, word_index: int, amount: int = 1):
        row = self.counts.get(condition)
        if row is None:
            row = [0] * self.num_words
            self.counts[condition] = row
        row[word_index] += amount


@dataclass(frozen=True)
class CondDistribution:
    """Normalized view of CondCounts: W columns sum to 1, c sums to 1."""

    set_id: int
    conditions: tuple[Condition, ...]
    W: np.ndarray  # shape (R, |C|), column-stochastic
    c: np.ndarray  # shape (|C|,), positive, sums to 1
    support: tuple[int, ...]

    def __post_init__(self):
        if self.W.shape != (self.W.shape[0], len(self.conditions)):
            raise ValueError("W shape inconsistent with conditions")
        if len(self.c) != len(self.conditions):
            raise ValueError("c length inconsistent with conditions")
        if np.any(self.W < 0) or np.any(np.abs(self.W.sum(axis=0) - 1.0) > 1e-12):
            raise ValueError("columns of W must be probability vectors")
        if np.any(self.c <= 0) or abs(float(self.c.sum()) - 1.0) > 1e-12:
            raise ValueError("c must be a positive probability vector")

    @property
    def num_words(self) -> int:
        return self.W.shape[0]

    @property
    def num_conditions(self) -> int:
        return len(self.conditions)


def count_conditions(
    corpus: Corpus, lexicon: WatermarkLexicon, spec: FeatureSpec
) -> list[CondCounts]:
    """Count, per synonym set, how often each word occurs under each condition.

    Tokens whose surface form is not in the lexicon are ignored.
    """
    per_set = {s.id: CondCounts(s.id, s.size) for s in lexicon}
    for sentence in corpus.sentences:
        for tok in sentence.tokens:
            hit = lexicon.match_token(tok.surface)
            if hit is None:
                continue
            set_id, word_index = hit
            condition = extract_condition(sentence, tok.index, spec)
            per_set[set_id].add(condition, word_index)
    return [per_set[s.id] for s in lexicon]


def merge_counts(a: CondCounts, b: CondCounts) -> CondCounts:
    """Pointwise sum of two count tables for the same set."""
    if a.set_id != b.set_id or a.num_words != b.num_words:
        raise SetMismatch(f"cannot merge counts for sets {a.set_id} and {b.set_id}")
    merged = CondCounts(a.set_id, a.num_words)
    for src in (a, b):
        for condition, row in src.counts.items():
            for widx, n in enumerate(row):
                if n:
                    merged.add(condition, widx, n)
    return merged


def to_distribution(counts: CondCounts) -> CondDistribution:
    """Normalize counts into (W, c); conditions keep first-appearance order."""
    if not counts.counts:
        raise EmptyCounts(f"set {counts.set_id} has no observed conditions")
    conditions = tuple(counts.counts)
    mat = np.array([counts.counts[c] for c in conditions], dtype=float).T  # (R, |C|)
    totals = mat.sum(axis=0)
    if np.any(totals <= 0):
        raise EmptyCounts(f"set {counts.set_id} has a zero-support condition")
    W = mat / totals
    c = totals / totals.sum()
    return CondDistribution(
        set_id=counts.set_id,
        conditions=conditions,
        W=W,
        c=c,
        support=tuple(int(t) for t in totals),
    )


def marginal(dist: CondDistribution) -> np.ndarray:
    """Corpus-wide word distribution for the set: W @ c."""
    return dist.W @ dist.c


# --- distribution file round trip -------------------------------------------

def distributions_to_json(
    spec: FeatureSpec,
    lexicon: WatermarkLexicon,
    counts: list[CondCounts],
) -> dict:
    """Self-contained JSON form of the per-set statistics.

    Carries the set's word list so the optimizer needs no lexicon file.
    """
    sets = []
    for cc in counts:
        if not cc.counts:
            continue
        dist = to_distribution(cc)
        words = lexicon.set_by_id(cc.set_id).words
        sets.append(
            {
                "id": cc.set_id,
                "words": list(words),
                "conditions": [format_condition(c) for c in dist.conditions],
                "counts": [list(cc.counts[c]) for c in dist.conditions],
                "W": [[float(x) for x in row] for row in dist.W],
                "c": [float(x) for x in dist.c],
                "support": list(dist.support),
            }
        )
    return {
        "feature": {
            "kind": spec.kind,
            "order": spec.order,
            "labelset_size": spec.labelset_size,
        },
        "sets": sets,
    }


def distributions_from_json(data: dict) -> tuple[FeatureSpec, list[tuple[CondDistribution, tuple[str, ...]]]]:
    """Inverse of distributions_to_json; returns (spec, [(dist, words), ...])."""
    feat = data["feature"]
    spec = FeatureSpec(feat["kind"], feat["order"], feat.get("labelset_size", 36))
    out = []
    for entry in data["sets"]:
        conditions = tuple(parse_condition(c) for c in entry["conditions"])
        try:
            dist = CondDistribution(
                set_id=entry["id"],
                conditions=conditions,
                W=np.array(entry["W"], dtype=float),
                c=np.array(entry["c"], dtype=float),
                support=tuple(entry["support"]),
            )
        except ValueError as exc:
            raise FormatError(f"set {entry['id']}: {exc}") from None
        out.append((dist, tuple(entry["words"])))
    return spec, out
