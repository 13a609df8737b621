"""Seeded synthetic corpus generation with known ground truth.

Every sentence plants exactly one candidate-word occurrence whose
condition is realized structurally: POS conditions get neighbor tokens
carrying the required tags, DEP conditions get an explicit head chain
with the required arc labels. That makes P(c) and P(w|c) of the output
exactly the configured ones up to sampling noise, which the statistical
acceptance checks rely on.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .conllu import Corpus, Sentence, Token
from .errors import InfeasibleSpec
from .features import (
    NONE_LABEL,
    Condition,
    FeatureSpec,
    format_condition,
    parse_condition,
    pos_offsets,
)
from .lexicon import WatermarkLexicon, load_lexicon

_FILLER_POS = "X"
_ANCHOR_POS = "NOUN"


@dataclass(frozen=True)
class SynthSpec:
    lexicon: WatermarkLexicon
    feature: FeatureSpec
    condition_priors: dict[Condition, float]
    word_given_condition: dict[int, dict[Condition, tuple[float, ...]]]
    filler_vocab: tuple[str, ...]
    tokens_per_sentence: tuple[int, int] = (4, 8)
    num_sentences: int = 1000
    seed: int = 0

    def __post_init__(self):
        validate_spec(self)


def _split_pos_context(condition: Condition, order: int):
    """Realization plan for a POS condition.

    Returns (left_labels, right_labels, pad_left_ok, pad_right_ok) where
    the label lists hold the real tags to plant (left farthest-first)
    and padding is only legal on a side without "[none]". Raises
    InfeasibleSpec when the padding pattern cannot occur: a missing near
    neighbor implies every farther one is missing too.
    """
    offsets = pos_offsets(order)
    left = [lab for off, lab in zip(offsets, condition) if off < 0]
    right = [lab for off, lab in zip(offsets, condition) if off > 0]
    lefts_missing = [lab == NONE_LABEL for lab in left]
    if lefts_missing != sorted(lefts_missing, reverse=True):
        raise InfeasibleSpec(f"condition {condition} pads an inner left neighbor")
    rights_missing = [lab == NONE_LABEL for lab in right]
    if rights_missing != sorted(rights_missing):
        raise InfeasibleSpec(f"condition {condition} pads an inner right neighbor")
    return (
        [l for l in left if l != NONE_LABEL],
        [l for l in right if l != NONE_LABEL],
        not any(lefts_missing),
        not any(rights_missing),
    )


def _dep_chain(condition: Condition) -> list[str]:
    """Arc labels of the head chain, anchor first; "[none]" only above."""
    labels = list(condition)
    if labels[0] == NONE_LABEL:
        raise InfeasibleSpec("a token always has an incoming arc; d1 cannot be [none]")
    missing = [lab == NONE_LABEL for lab in labels]
    if missing != sorted(missing):
        raise InfeasibleSpec(f"condition {condition} has [none] below a real arc")
    return [l for l in labels if l != NONE_LABEL]


def validate_spec(spec: SynthSpec):
    priors = spec.condition_priors
    if not priors:
        raise InfeasibleSpec("condition_priors is empty")
    total = sum(priors.values())
    if abs(total - 1.0) > 1e-9:
        raise InfeasibleSpec(f"condition priors sum to {total}, expected 1")
    for condition in priors:
        if len(condition) != spec.feature.order:
            raise InfeasibleSpec(f"condition {condition} is not order {spec.feature.order}")
        if spec.feature.kind == "pos":
            _split_pos_context(condition, spec.feature.order)
        else:
            _dep_chain(condition)
        if not any(condition in by_cond for by_cond in spec.word_given_condition.values()):
            raise InfeasibleSpec(f"no synonym set covers condition {condition}")
    known_ids = {s.id for s in spec.lexicon}
    for set_id, by_cond in spec.word_given_condition.items():
        if set_id not in known_ids:
            raise InfeasibleSpec(f"unknown set id {set_id}")
        size = spec.lexicon.set_by_id(set_id).size
        for condition, probs in by_cond.items():
            if len(probs) != size:
                raise InfeasibleSpec(f"set {set_id}: probability vector length != {size}")
            if abs(sum(probs) - 1.0) > 1e-9:
                raise InfeasibleSpec(f"set {set_id}, condition {condition}: vector must sum to 1")
    if not spec.filler_vocab:
        raise InfeasibleSpec("filler_vocab is empty")
    for w in spec.filler_vocab:
        if spec.lexicon.match_token(w) is not None:
            raise InfeasibleSpec(f"filler word {w!r} collides with the lexicon")
    lo, hi = spec.tokens_per_sentence
    if not 1 <= lo <= hi:
        raise InfeasibleSpec("tokens_per_sentence must be a nonempty range")


@dataclass
class GenerationReport:
    num_sentences: int = 0
    realized: dict[int, dict[Condition, list[int]]] = field(default_factory=dict)

    def record(self, set_id: int, condition: Condition, word_index: int, num_words: int):
        by_cond = self.realized.setdefault(set_id, {})
        row = by_cond.setdefault(condition, [0] * num_words)
        row[word_index] += 1

    def to_json(self) -> dict:
        return {
            "num_sentences": self.num_sentences,
            "realized": {
                str(sid): {format_condition(c): row for c, row in by_cond.items()}
                for sid, by_cond in sorted(self.realized.items())
            },
        }


def _chain_tokens(surfaces, tags):
    """Left-rooted chain: token 1 is the root, each token heads the next."""
    return tuple(
        Token(i + 1, surf, tag, i, "root" if i == 0 else "dep")
        for i, (surf, tag) in enumerate(zip(surfaces, tags))
    )


def _pos_sentence(word, plan, target_len, fillers, rng) -> Sentence:
    left, right, pad_left_ok, pad_right_ok = plan
    pad = max(0, target_len - (len(left) + 1 + len(right)))
    pad_left = pad_right = 0
    if pad_left_ok and pad_right_ok:
        pad_left, pad_right = pad // 2, pad - pad // 2
    elif pad_left_ok:
        pad_left = pad
    elif pad_right_ok:
        pad_right = pad

    def filler():
        return fillers[rng.integers(0, len(fillers))]

    surfaces, tags = [], []
    for _ in range(pad_left):
        surfaces.append(filler())
        tags.append(_FILLER_POS)
    for lab in left:
        surfaces.append(filler())
        tags.append(lab)
    surfaces.append(word)
    tags.append(_ANCHOR_POS)
    for lab in right:
        surfaces.append(filler())
        tags.append(lab)
    for _ in range(pad_right):
        surfaces.append(filler())
        tags.append(_FILLER_POS)
    return Sentence(_chain_tokens(surfaces, tags))


def _dep_sentence(word, chain, target_len, fillers, rng) -> Sentence:
    """Head chain positions 1..r (root first, anchor last), fillers after."""
    r = len(chain)
    tokens = []
    for i in range(1, r + 1):
        surface = word if i == r else fillers[rng.integers(0, len(fillers))]
        upos = _ANCHOR_POS if i == r else _FILLER_POS
        tokens.append(Token(i, surface, upos, i - 1, chain[r - i]))
    for i in range(r + 1, max(target_len, r) + 1):
        tokens.append(Token(i, fillers[rng.integers(0, len(fillers))], _FILLER_POS, 1, "dep"))
    return Sentence(tuple(tokens))


def generate_with_report(spec: SynthSpec) -> tuple[Corpus, GenerationReport]:
    """Deterministic generation; the report carries realized counts."""
    rng = np.random.default_rng(spec.seed)
    report = GenerationReport()
    source = f"synth:seed={spec.seed}"
    if spec.num_sentences == 0:
        return Corpus((), source=source), report

    conditions = list(spec.condition_priors)
    priors = np.array([spec.condition_priors[c] for c in conditions])
    priors = priors / priors.sum()
    eligible = [
        [sid for sid in sorted(spec.word_given_condition) if c in spec.word_given_condition[sid]]
        for c in conditions
    ]
    word_cum = {
        (sid, c): np.cumsum(probs)
        for sid, by_cond in spec.word_given_condition.items()
        for c, probs in by_cond.items()
    }
    if spec.feature.kind == "pos":
        plans = [_split_pos_context(c, spec.feature.order) for c in conditions]
    else:
        chains = [_dep_chain(c) for c in conditions]

    cond_idx = rng.choice(len(conditions), size=spec.num_sentences, p=priors)
    lengths = rng.integers(
        spec.tokens_per_sentence[0], spec.tokens_per_sentence[1] + 1, size=spec.num_sentences
    )
    set_u = rng.random(spec.num_sentences)
    word_u = rng.random(spec.num_sentences)

    sentences = []
    for i in range(spec.num_sentences):
        ci = int(cond_idx[i])
        condition = conditions[ci]
        sets_here = eligible[ci]
        set_id = sets_here[int(set_u[i] * len(sets_here))]
        cum = word_cum[(set_id, condition)]
        widx = min(int(np.searchsorted(cum, word_u[i], side="right")), len(cum) - 1)
        word = spec.lexicon.set_by_id(set_id).words[widx]
        if spec.feature.kind == "pos":
            sent = _pos_sentence(word, plans[ci], int(lengths[i]), spec.filler_vocab, rng)
        else:
            sent = _dep_sentence(word, chains[ci], int(lengths[i]), spec.filler_vocab, rng)
        sentences.append(sent)
        report.record(set_id, condition, widx, spec.lexicon.set_by_id(set_id).size)
    report.num_sentences = spec.num_sentences
    return Corpus(tuple(sentences), source=source), report


def generate(spec: SynthSpec) -> Corpus:
    corpus, _ = generate_with_report(spec)
    return corpus


# --- spec file round trip ----------------------------------------------------

def spec_to_json(spec: SynthSpec) -> dict:
    return {
        "seed": spec.seed,
        "num_sentences": spec.num_sentences,
        "tokens_per_sentence": list(spec.tokens_per_sentence),
        "feature": {
            "kind": spec.feature.kind,
            "order": spec.feature.order,
            "labelset_size": spec.feature.labelset_size,
        },
        "filler_vocab": list(spec.filler_vocab),
        "lexicon": spec.lexicon.to_json(),
        "condition_priors": {
            format_condition(c): p for c, p in spec.condition_priors.items()
        },
        "word_given_condition": {
            str(sid): {format_condition(c): list(v) for c, v in by_cond.items()}
            for sid, by_cond in spec.word_given_condition.items()
        },
    }


def spec_from_json(data: dict) -> SynthSpec:
    feat = data["feature"]
    return SynthSpec(
        lexicon=load_lexicon(json.dumps(data["lexicon"])),
        feature=FeatureSpec(feat["kind"], feat["order"], feat.get("labelset_size", 36)),
        condition_priors={
            parse_condition(c): float(p) for c, p in data["condition_priors"].items()
        },
        word_given_condition={
            int(sid): {parse_condition(c): tuple(v) for c, v in by_cond.items()}
            for sid, by_cond in data["word_given_condition"].items()
        },
        filler_vocab=tuple(data["filler_vocab"]),
        tokens_per_sentence=tuple(data["tokens_per_sentence"]),
        num_sentences=int(data["num_sentences"]),
        seed=int(data["seed"]),
    )
