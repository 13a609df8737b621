"""Watermarking stage: substitute designated words into tagged responses.

Conditions are read from the stored POS/DEP annotations, never from
surface forms, so substitution is order-independent and idempotent.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .conllu import Corpus, Sentence, Token
from .errors import FeatureMismatch, InvalidDesignation
from .features import FeatureSpec, extract_condition
from .lexicon import WatermarkLexicon
from .rules import RuleTable


@dataclass
class SetLog:
    candidates_seen: int = 0
    substituted: int = 0
    unchanged_by_rule: int = 0
    fallback_identity: int = 0


@dataclass
class ApplicationLog:
    """Counters over candidate tokens: every candidate is either
    substituted, already the designated word, or left alone because its
    condition has no rule."""

    candidates_seen: int = 0
    substituted: int = 0
    unchanged_by_rule: int = 0
    fallback_identity: int = 0
    per_set: dict[int, SetLog] = field(default_factory=dict)

    def record(self, set_id: int, outcome: str):
        slog = self.per_set.setdefault(set_id, SetLog())
        self.candidates_seen += 1
        slog.candidates_seen += 1
        setattr(self, outcome, getattr(self, outcome) + 1)
        setattr(slog, outcome, getattr(slog, outcome) + 1)

    def to_json(self) -> dict:
        return {
            "candidates_seen": self.candidates_seen,
            "substituted": self.substituted,
            "unchanged_by_rule": self.unchanged_by_rule,
            "fallback_identity": self.fallback_identity,
            "per_set": {
                str(sid): {
                    "candidates_seen": s.candidates_seen,
                    "substituted": s.substituted,
                    "unchanged_by_rule": s.unchanged_by_rule,
                    "fallback_identity": s.fallback_identity,
                }
                for sid, s in sorted(self.per_set.items())
            },
        }


def copy_case(original: str, replacement: str) -> str:
    """Transfer the original's casing pattern onto the replacement."""
    if len(original) > 1 and original.isupper():
        return replacement.upper()
    if original[:1].isupper():
        return replacement[:1].upper() + replacement[1:]
    return replacement


def _rebuild(token: Token, surface: str) -> Token:
    return Token(token.index, surface, token.upos, token.head, token.deprel)


def apply_rules(
    corpus: Corpus,
    lexicon: WatermarkLexicon,
    rules: RuleTable,
    expected_feature: FeatureSpec | None = None,
) -> tuple[Corpus, ApplicationLog]:
    """Apply a conditional rule table to every matching token.

    Conditions come from the original annotations; a candidate whose
    condition has no rule passes through unchanged (identity fallback).
    POS/head/deprel fields are never touched.
    """
    if expected_feature is not None and not rules.feature.same_extraction(expected_feature):
        raise FeatureMismatch(
            f"rule table was built for {rules.feature.kind}/order={rules.feature.order}"
        )
    log = ApplicationLog()
    new_sentences = []
    for sentence in corpus.sentences:
        new_tokens = list(sentence.tokens)
        for tok in sentence.tokens:
            hit = lexicon.match_token(tok.surface)
            if hit is None:
                continue
            set_id, _ = hit
            condition = extract_condition(sentence, tok.index, rules.feature)
            designated = rules.designated(set_id, condition)
            if designated is None:
                log.record(set_id, "fallback_identity")
                continue
            if designated == tok.surface.lower():
                log.record(set_id, "unchanged_by_rule")
                continue
            log.record(set_id, "substituted")
            new_tokens[tok.index - 1] = _rebuild(tok, copy_case(tok.surface, designated))
        new_sentences.append(Sentence(tuple(new_tokens), sentence.comments))
    return Corpus(tuple(new_sentences), corpus.source), log


def apply_unconditional(
    corpus: Corpus,
    lexicon: WatermarkLexicon,
    designated: dict[int, str],
) -> tuple[Corpus, ApplicationLog]:
    """Baseline watermark: replace every matched token by its set's
    designated word, condition-free."""
    for set_id, word in designated.items():
        try:
            members = lexicon.set_by_id(set_id).words
        except KeyError:
            raise InvalidDesignation(f"unknown set id {set_id}") from None
        if word.lower() not in members:
            raise InvalidDesignation(f"{word!r} is not a member of set {set_id}")
    log = ApplicationLog()
    new_sentences = []
    for sentence in corpus.sentences:
        new_tokens = list(sentence.tokens)
        for tok in sentence.tokens:
            hit = lexicon.match_token(tok.surface)
            if hit is None:
                continue
            set_id, _ = hit
            word = designated.get(set_id)
            if word is None:
                log.record(set_id, "fallback_identity")
                continue
            if word.lower() == tok.surface.lower():
                log.record(set_id, "unchanged_by_rule")
                continue
            log.record(set_id, "substituted")
            new_tokens[tok.index - 1] = _rebuild(tok, copy_case(tok.surface, word.lower()))
        new_sentences.append(Sentence(tuple(new_tokens), sentence.comments))
    return Corpus(tuple(new_sentences), corpus.source), log
