"""CoNLL-U corpus representation, parsing, and serialization.

Only the columns the toolkit consumes are retained: ID, FORM, UPOS (or
XPOS on request), HEAD, and DEPREL. Everything else round-trips as "_".
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CycleError, MalformedLine, MultipleRoots

N_COLUMNS = 10
MIN_COLUMNS = 8  # HEAD and DEPREL are columns 7 and 8


@dataclass(frozen=True, slots=True)
class Token:
    """One syntactic word: surface form plus its POS and dependency slot.

    `head` follows the CoNLL-U convention: 0 for the sentence root,
    otherwise the 1-based index of the governing token.
    """

    index: int
    surface: str
    upos: str
    head: int
    deprel: str

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f"token index must be >= 1, got {self.index}")
        if self.head < 0:
            raise ValueError(f"head must be >= 0, got {self.head}")
        if self.head == self.index:
            raise ValueError(f"token {self.index} cannot head itself")
        if not self.surface:
            raise ValueError("surface form must be non-empty")


@dataclass(frozen=True, slots=True)
class Sentence:
    """A validated token sequence: contiguous indices, single root, acyclic heads."""

    tokens: tuple[Token, ...]
    comments: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        object.__setattr__(self, "comments", tuple(self.comments))
        n = len(self.tokens)
        for pos, tok in enumerate(self.tokens, start=1):
            if tok.index != pos:
                raise ValueError(f"token indices must be 1..{n} contiguous")
            if tok.head > n:
                raise ValueError(f"head {tok.head} of token {pos} out of range")
        roots = [t.index for t in self.tokens if t.head == 0]
        if n and len(roots) != 1:
            raise MultipleRoots(f"expected exactly 1 root, found {len(roots)}")
        self._check_acyclic()

    def _check_acyclic(self):
        # Walk each head chain; a chain longer than the sentence means a loop.
        n = len(self.tokens)
        for tok in self.tokens:
            cur = tok.head
            steps = 0
            while cur != 0:
                cur = self.tokens[cur - 1].head
                steps += 1
                if steps > n:
                    raise CycleError(f"head links form a cycle at token {tok.index}")

    def __len__(self):
        return len(self.tokens)


@dataclass(frozen=True, slots=True)
class Corpus:
    sentences: tuple[Sentence, ...]
    source: str = ""

    def __post_init__(self):
        object.__setattr__(self, "sentences", tuple(self.sentences))

    def __len__(self):
        return len(self.sentences)

    def __iter__(self):
        return iter(self.sentences)


def _is_skippable_id(col: str) -> bool:
    # Multiword-token ranges ("3-4") and empty nodes ("3.1") carry no
    # head/POS information used here.
    return "-" in col or "." in col


def parse_conllu(text: str, use_xpos: bool = False) -> Corpus:
    """Parse CoNLL-U text into a Corpus.

    Sentences split on blank lines; '#' lines are kept as comments.
    `use_xpos` selects column 5 instead of column 4 as the POS label
    (useful with Penn-style tagsets).

    Raises MalformedLine, MultipleRoots, or CycleError on invalid input.
    """
    sentences: list[Sentence] = []
    tokens: list[Token] = []
    comments: list[str] = []

    def flush():
        nonlocal tokens, comments
        if tokens or comments:
            sentences.append(Sentence(tuple(tokens), tuple(comments)))
            tokens, comments = [], []

    pos_col = 4 if use_xpos else 3
    for line_no, line in enumerate(text.split("\n"), start=1):
        line = line.rstrip("\r")
        if not line.strip():
            flush()
            continue
        if line.startswith("#"):
            comments.append(line)
            continue
        cols = line.split("\t")
        if len(cols) < MIN_COLUMNS:
            raise MalformedLine(line_no, f"expected >= {MIN_COLUMNS} columns, got {len(cols)}")
        if _is_skippable_id(cols[0]):
            continue
        try:
            index = int(cols[0])
        except ValueError:
            raise MalformedLine(line_no, f"non-integer ID {cols[0]!r}") from None
        try:
            head = int(cols[6])
        except ValueError:
            raise MalformedLine(line_no, f"non-integer HEAD {cols[6]!r}") from None
        try:
            tokens.append(Token(index, cols[1], cols[pos_col], head, cols[7]))
        except ValueError as exc:
            raise MalformedLine(line_no, str(exc)) from None
    flush()
    return Corpus(tuple(sentences))


def write_conllu(corpus: Corpus) -> str:
    """Serialize a Corpus back to CoNLL-U; unused columns become "_"."""
    blocks = []
    for sent in corpus.sentences:
        lines = []
        for comment in sent.comments:
            lines.append(comment if comment.startswith("#") else "# " + comment)
        for tok in sent.tokens:
            cols = ["_"] * N_COLUMNS
            cols[0] = str(tok.index)
            cols[1] = tok.surface
            cols[3] = tok.upos
            cols[6] = str(tok.head)
            cols[7] = tok.deprel
            lines.append("\t".join(cols))
        blocks.append("\n".join(lines) + "\n")
    return "\n".join(blocks)


def render_plaintext(corpus: Corpus) -> str:
    """Render tokens joined by single spaces, one sentence per line."""
    return "\n".join(" ".join(t.surface for t in s.tokens) for s in corpus.sentences)
