import pytest
from hypothesis import given, strategies as st

from condmark.conllu import (
    Corpus,
    Sentence,
    Token,
    parse_conllu,
    render_plaintext,
    write_conllu,
)
from condmark.errors import CycleError, MalformedLine, MultipleRoots

FIXTURE = """\
# sent_id = 1
# text = We saw it .
1\tWe\twe\tPRON\tPRP\t_\t2\tnsubj\t_\t_
2\tsaw\tsee\tVERB\tVBD\t_\t0\troot\t_\t_
3\tit\tit\tPRON\tPRP\t_\t2\tobj\t_\t_
4\t.\t.\tPUNCT\t.\t_\t2\tpunct\t_\t_
"""


def test_parse_fixture():
    corpus = parse_conllu(FIXTURE)
    assert len(corpus) == 1
    sent = corpus.sentences[0]
    assert len(sent) == 4
    assert [t.surface for t in sent.tokens] == ["We", "saw", "it", "."]
    assert [t.upos for t in sent.tokens] == ["PRON", "VERB", "PRON", "PUNCT"]
    assert [t.head for t in sent.tokens] == [2, 0, 2, 2]
    assert [t.deprel for t in sent.tokens] == ["nsubj", "root", "obj", "punct"]
    assert sent.comments == ("# sent_id = 1", "# text = We saw it .")


def test_parse_empty_string():
    assert len(parse_conllu("")) == 0


def test_parse_xpos_column():
    corpus = parse_conllu(FIXTURE, use_xpos=True)
    assert [t.upos for t in corpus.sentences[0].tokens] == ["PRP", "VBD", "PRP", "."]


def test_parse_non_integer_head():
    bad = "1\tWe\t_\tPRON\t_\t_\tx\tnsubj\t_\t_\n"
    with pytest.raises(MalformedLine) as err:
        parse_conllu(bad)
    assert err.value.line_no == 1


def test_parse_non_integer_id():
    bad = "one\tWe\t_\tPRON\t_\t_\t0\troot\t_\t_\n"
    with pytest.raises(MalformedLine):
        parse_conllu(bad)


def test_parse_too_few_columns():
    with pytest.raises(MalformedLine) as err:
        parse_conllu("1\tWe\tPRON\n")
    assert "columns" in str(err.value)


def test_parse_skips_multiword_and_empty_nodes():
    text = (
        "1-2\tcannot\t_\t_\t_\t_\t_\t_\t_\t_\n"
        "1\tcan\t_\tAUX\t_\t_\t0\troot\t_\t_\n"
        "2\tnot\t_\tPART\t_\t_\t1\tadvmod\t_\t_\n"
        "2.1\tghost\t_\t_\t_\t_\t_\t_\t_\t_\n"
    )
    corpus = parse_conllu(text)
    assert [t.surface for t in corpus.sentences[0].tokens] == ["can", "not"]


def test_parse_two_sentences_split_on_blank():
    text = FIXTURE + "\n" + FIXTURE
    assert len(parse_conllu(text)) == 2


def test_multiple_roots_rejected():
    text = (
        "1\ta\t_\tX\t_\t_\t0\troot\t_\t_\n"
        "2\tb\t_\tX\t_\t_\t0\troot\t_\t_\n"
    )
    with pytest.raises(MultipleRoots):
        parse_conllu(text)


def test_cycle_rejected():
    text = (
        "1\ta\t_\tX\t_\t_\t0\troot\t_\t_\n"
        "2\tb\t_\tX\t_\t_\t3\tdep\t_\t_\n"
        "3\tc\t_\tX\t_\t_\t2\tdep\t_\t_\n"
    )
    with pytest.raises(CycleError):
        parse_conllu(text)


def test_head_out_of_range_rejected():
    with pytest.raises(ValueError):
        Sentence((Token(1, "a", "X", 0, "root"), Token(2, "b", "X", 9, "dep")))


def test_parse_handles_crlf():
    corpus = parse_conllu(FIXTURE.replace("\n", "\r\n"))
    assert [t.surface for t in corpus.sentences[0].tokens] == ["We", "saw", "it", "."]


def test_token_invariants():
    with pytest.raises(ValueError):
        Token(0, "a", "X", 1, "dep")
    with pytest.raises(ValueError):
        Token(2, "a", "X", 2, "dep")
    with pytest.raises(ValueError):
        Token(1, "", "X", 0, "root")


def test_round_trip_preserves_retained_fields():
    corpus = parse_conllu(FIXTURE)
    again = parse_conllu(write_conllu(corpus))
    assert again == corpus


def test_round_trip_is_idempotent_normalization():
    normalized = write_conllu(parse_conllu(FIXTURE))
    assert write_conllu(parse_conllu(normalized)) == normalized


def test_write_empty_corpus():
    assert write_conllu(Corpus(())) == ""


def test_comments_precede_tokens_with_hash():
    sent = Sentence((Token(1, "hi", "INTJ", 0, "root"),), ("note without hash",))
    out = write_conllu(Corpus((sent,)))
    lines = out.splitlines()
    assert lines[0] == "# note without hash"
    assert lines[1].startswith("1\thi")


def test_render_plaintext():
    corpus = parse_conllu(FIXTURE)
    assert render_plaintext(corpus) == "We saw it ."


def test_render_plaintext_empty():
    assert render_plaintext(Corpus(())) == ""


def test_render_plaintext_two_lines():
    corpus = parse_conllu(FIXTURE + "\n" + FIXTURE)
    assert render_plaintext(corpus) == "We saw it .\nWe saw it ."


@st.composite
def sentences(draw):
    n = draw(st.integers(min_value=1, max_value=8))
    # Heads drawn so that token i attaches somewhere to its left: always
    # acyclic with token 1 as the single root.
    surfaces = draw(st.lists(
        st.text(alphabet="abcxyz", min_size=1, max_size=5), min_size=n, max_size=n))
    tokens = []
    for i in range(1, n + 1):
        head = 0 if i == 1 else draw(st.integers(min_value=1, max_value=i - 1))
        tokens.append(Token(i, surfaces[i - 1], "X", head, "root" if i == 1 else "dep"))
    return Sentence(tuple(tokens))


@given(st.lists(sentences(), max_size=5))
def test_round_trip_random_corpora(sents):
    corpus = Corpus(tuple(sents))
    assert parse_conllu(write_conllu(corpus)) == corpus
