import json

import pytest
from hypothesis import settings

from condmark.conllu import Corpus, Sentence, Token
from condmark.lexicon import load_lexicon

settings.register_profile("suite", derandomize=True, max_examples=60, deadline=None)
settings.load_profile("suite")


def pos_sentence(pairs):
    """Build a sentence from (surface, upos) pairs with a left-rooted
    head chain; handy when only POS context matters."""
    tokens = tuple(
        Token(i + 1, surface, upos, i, "root" if i == 0 else "dep")
        for i, (surface, upos) in enumerate(pairs)
    )
    return Sentence(tokens)


def corpus_of(*sentences):
    return Corpus(tuple(sentences))


@pytest.fixture
def small_lexicon():
    return load_lexicon(json.dumps({
        "sets": [
            {"id": 0, "words": ["help", "aid"]},
            {"id": 1, "words": ["region", "area"]},
        ]
    }))


@pytest.fixture
def protect_sentence():
    # "We must protect this region ." with a hand-checked dependency tree:
    # region <-obj- protect (root).
    return Sentence((
        Token(1, "We", "PRON", 3, "nsubj"),
        Token(2, "must", "AUX", 3, "aux"),
        Token(3, "protect", "VERB", 0, "root"),
        Token(4, "this", "DET", 5, "det"),
        Token(5, "region", "NOUN", 3, "obj"),
        Token(6, ".", "PUNCT", 3, "punct"),
    ))
