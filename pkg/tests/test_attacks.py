import pytest

from condmark.attacks import (
    frequency_attack,
    leakage_attack,
    score_leakage,
    top_words_union,
    word_frequencies,
)
from condmark.features import FeatureSpec
from condmark.rules import ObjectiveBreakdown, RuleTable
from condmark.watermark import apply_rules, apply_unconditional
from conftest import corpus_of, pos_sentence

POS1 = FeatureSpec("pos", 1)


def help_corpus(helps, aids, fillers=2):
    sents = [pos_sentence([("we", "PRON"), ("help", "VERB")]) for _ in range(helps)]
    sents += [pos_sentence([("we", "PRON"), ("aid", "VERB")]) for _ in range(aids)]
    sents += [pos_sentence([("the", "DET"), ("sky", "NOUN")]) for _ in range(fillers)]
    return corpus_of(*sents)


def test_frequency_fixture():
    reference = help_corpus(3, 1, fillers=0)
    suspect = help_corpus(0, 4, fillers=0)
    ranking = frequency_attack(reference, suspect, {"help", "aid", "we"})
    ratios = dict(ranking.entries)
    assert ratios["help"] == pytest.approx(4.0)
    assert ratios["aid"] == pytest.approx(0.4)
    assert ranking.entries[0][0] == "help"


def test_frequency_identity():
    corpus = help_corpus(2, 2)
    ranking = frequency_attack(corpus, corpus, {"help", "aid", "we", "sky"})
    assert all(r == 1.0 for _, r in ranking.entries)


def test_frequency_absent_word_smoothed_to_one():
    corpus = help_corpus(1, 1)
    ranking = frequency_attack(corpus, corpus, {"banana"})
    assert ranking.entries == (("banana", 1.0),)


def test_frequency_direction_sorting():
    reference = help_corpus(5, 0, fillers=1)
    suspect = help_corpus(0, 5, fillers=1)
    vocab = {"help", "aid", "we", "the", "sky"}
    dec = frequency_attack(reference, suspect, vocab, "decreased")
    ratios = [r for _, r in dec.entries]
    assert ratios == sorted(ratios, reverse=True)
    inc = frequency_attack(reference, suspect, vocab, "increased")
    assert [r for _, r in inc.entries] == sorted(ratios)
    assert inc.entries[0][0] == "aid"


def test_frequency_exposes_unconditional_baseline(small_lexicon):
    reference = help_corpus(6, 2, fillers=10)
    suspect, _ = apply_unconditional(reference, small_lexicon, {0: "aid"})
    vocab = top_words_union(reference, suspect, top=10)
    ranking = frequency_attack(reference, suspect, vocab)
    top_word, top_ratio = ranking.entries[0]
    assert top_word == "help"
    non_lexicon = [r for w, r in ranking.entries if w not in ("help", "aid")]
    assert all(top_ratio > r for r in non_lexicon)


def test_vocab_required():
    corpus = help_corpus(1, 1)
    with pytest.raises(ValueError):
        frequency_attack(corpus, corpus, set())


def test_word_frequencies_case_folds():
    corpus = corpus_of(pos_sentence([("Help", "VERB"), ("HELP", "VERB")]))
    assert word_frequencies(corpus) == {"help": 2}


def make_rules(entries):
    table = RuleTable(feature=POS1, alpha=0.01)
    for sid, rules in entries.items():
        table.entries[sid] = rules
        table.objectives[sid] = ObjectiveBreakdown(0.0, 0.0, 0.0)
    return table


def test_leakage_recovers_true_rules(small_lexicon):
    rules = make_rules({1: {("DET",): "area", ("ADJ",): "region"}})
    clean = corpus_of(
        *[pos_sentence([("this", "DET"), ("region", "NOUN")]) for _ in range(4)],
        *[pos_sentence([("big", "ADJ"), ("area", "NOUN")]) for _ in range(4)],
    )
    marked, _ = apply_rules(clean, small_lexicon, rules)
    suspects = leakage_attack(marked, small_lexicon, POS1, 1)
    assert rules.rule_triples() <= suspects


def test_leakage_empty_corpus(small_lexicon):
    assert leakage_attack(corpus_of(), small_lexicon, POS1, 1) == set()


def test_score_identical_sets():
    rules = {(0, ("DET",), "area")}
    result = score_leakage(rules, rules)
    assert result.precision == result.recall == 1.0
    assert result.confusion_factor == 1.0


def test_score_disjoint_sets():
    result = score_leakage({(0, ("A",), "x")}, {(1, ("B",), "y")})
    assert result.precision == result.recall == 0.0


def test_score_superset():
    true = {(0, (f"c{i}",), "w") for i in range(10)}
    sus = true | {(9, (f"f{i}",), "w") for i in range(30)}
    result = score_leakage(sus, true)
    assert result.precision == pytest.approx(0.25)
    assert result.recall == 1.0
    assert result.confusion_factor == pytest.approx(4.0)


def test_score_empty_suspected():
    result = score_leakage(set(), {(0, ("A",), "x")})
    assert result.precision == 0.0 and result.recall == 0.0
