import pytest

from condmark.conllu import Corpus, Sentence, Token
from condmark.errors import FeatureMismatch, InvalidDesignation
from condmark.features import FeatureSpec
from condmark.rules import ObjectiveBreakdown, RuleTable
from condmark.watermark import apply_rules, apply_unconditional, copy_case
from conftest import corpus_of, pos_sentence

POS1 = FeatureSpec("pos", 1)


def rule_table(entries, feature=POS1):
    table = RuleTable(feature=feature, alpha=0.01)
    for set_id, rules in entries.items():
        table.entries[set_id] = rules
        table.objectives[set_id] = ObjectiveBreakdown(0.0, 0.0, 0.0)
    return table


def test_substitution_under_matching_condition(small_lexicon):
    # "... this particular area ?" -> "... this particular region ?"
    sent = pos_sentence([
        ("this", "DET"), ("particular", "ADJ"), ("area", "NOUN"), ("?", "PUNCT"),
    ])
    rules = rule_table({1: {("ADJ",): "region"}})
    out, log = apply_rules(corpus_of(sent), small_lexicon, rules)
    assert [t.surface for t in out.sentences[0].tokens] == [
        "this", "particular", "region", "?",
    ]
    assert log.substituted == 1 and log.candidates_seen == 1


def test_uncovered_condition_falls_back_to_identity(small_lexicon):
    sent = pos_sentence([("the", "DET"), ("area", "NOUN")])
    rules = rule_table({1: {("ADJ",): "region"}})
    out, log = apply_rules(corpus_of(sent), small_lexicon, rules)
    assert out.sentences[0].tokens[1].surface == "area"
    assert log.fallback_identity == 1 and log.substituted == 0


def test_case_pattern_preserved(small_lexicon):
    sent = pos_sentence([("this", "DET"), ("Region", "NOUN")])
    rules = rule_table({1: {("DET",): "area"}})
    out, _ = apply_rules(corpus_of(sent), small_lexicon, rules)
    assert out.sentences[0].tokens[1].surface == "Area"


def test_copy_case_patterns():
    assert copy_case("Region", "area") == "Area"
    assert copy_case("REGION", "area") == "AREA"
    assert copy_case("region", "area") == "area"
    assert copy_case("A", "b") == "B"


def test_non_surface_fields_untouched(small_lexicon, protect_sentence):
    rules = rule_table({1: {("DET",): "area"}})
    out, log = apply_rules(corpus_of(protect_sentence), small_lexicon, rules)
    assert log.substituted == 1
    before = protect_sentence.tokens
    after = out.sentences[0].tokens
    assert len(before) == len(after)
    for b, a in zip(before, after):
        assert (b.index, b.upos, b.head, b.deprel) == (a.index, a.upos, a.head, a.deprel)
    assert after[4].surface == "area"


def test_apply_is_idempotent(small_lexicon):
    sents = [
        pos_sentence([("this", "DET"), ("region", "NOUN"), ("helps", "VERB")]),
        pos_sentence([("area", "NOUN"), ("of", "ADP"), ("help", "NOUN")]),
        pos_sentence([("some", "DET"), ("aid", "NOUN")]),
    ]
    rules = rule_table({
        0: {("ADP",): "help", ("DET",): "aid"},
        1: {("DET",): "area", ("[none]",): "region"},
    })
    corpus = corpus_of(*sents)
    once, _ = apply_rules(corpus, small_lexicon, rules)
    twice, log = apply_rules(once, small_lexicon, rules)
    assert twice == once
    assert log.substituted == 0


def test_apply_deterministic(small_lexicon, protect_sentence):
    rules = rule_table({1: {("DET",): "area"}})
    corpus = corpus_of(protect_sentence)
    assert apply_rules(corpus, small_lexicon, rules) == apply_rules(corpus, small_lexicon, rules)


def test_feature_mismatch(small_lexicon):
    rules = rule_table({1: {("DET",): "area"}})
    with pytest.raises(FeatureMismatch):
        apply_rules(corpus_of(), small_lexicon, rules, expected_feature=FeatureSpec("dep", 1))


def test_log_counter_invariant(small_lexicon):
    sents = [
        pos_sentence([("this", "DET"), ("region", "NOUN")]),
        pos_sentence([("this", "DET"), ("area", "NOUN")]),
        pos_sentence([("an", "DET"), ("odd", "ADJ"), ("area", "NOUN")]),
    ]
    rules = rule_table({1: {("DET",): "area"}})
    _, log = apply_rules(corpus_of(*sents), small_lexicon, rules)
    assert log.candidates_seen == 3
    assert log.candidates_seen == log.substituted + log.unchanged_by_rule + log.fallback_identity
    assert log.substituted == 1 and log.unchanged_by_rule == 1 and log.fallback_identity == 1
    assert log.per_set[1].candidates_seen == 3


def help_aid_corpus():
    sents = [pos_sentence([("we", "PRON"), ("help", "VERB")]) for _ in range(3)]
    sents += [pos_sentence([("with", "ADP"), ("aid", "NOUN")]) for _ in range(2)]
    return corpus_of(*sents)


def test_unconditional_replaces_everywhere(small_lexicon):
    out, log = apply_unconditional(help_aid_corpus(), small_lexicon, {0: "aid"})
    surfaces = [t.surface for s in out.sentences for t in s.tokens]
    assert surfaces.count("help") == 0
    assert surfaces.count("aid") == 5
    assert log.substituted == 3 and log.unchanged_by_rule == 2


def test_unconditional_no_candidates(small_lexicon):
    corpus = corpus_of(pos_sentence([("nothing", "NOUN"), ("matched", "VERB")]))
    out, log = apply_unconditional(corpus, small_lexicon, {0: "aid"})
    assert out == corpus
    assert log.candidates_seen == 0


def test_unconditional_identity_designation(small_lexicon):
    corpus = corpus_of(*[pos_sentence([("with", "ADP"), ("aid", "NOUN")]) for _ in range(4)])
    out, log = apply_unconditional(corpus, small_lexicon, {0: "aid"})
    assert out == corpus
    assert log.substituted == 0 and log.unchanged_by_rule == 4


def test_unconditional_invalid_designation(small_lexicon):
    with pytest.raises(InvalidDesignation):
        apply_unconditional(help_aid_corpus(), small_lexicon, {0: "banana"})


def test_sets_without_designation_fall_back(small_lexicon):
    corpus = corpus_of(pos_sentence([("the", "DET"), ("region", "NOUN")]))
    out, log = apply_unconditional(corpus, small_lexicon, {0: "aid"})
    assert out.sentences[0].tokens[1].surface == "region"
    assert log.fallback_identity == 1
