"""Synonym-set vocabulary: groups of interchangeable words to watermark."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import FormatError, OverlapError, SizeError


@dataclass(frozen=True, slots=True)
class SynonymSet:
    id: int
    words: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "words", tuple(w.lower() for w in self.words))
        if len(self.words) < 2:
            raise SizeError(f"set {self.id} needs >= 2 words, got {len(self.words)}")
        if len(set(self.words)) != len(self.words):
            raise SizeError(f"set {self.id} contains duplicate words")

    @property
    def size(self) -> int:
        return len(self.words)


class WatermarkLexicon:
    """Immutable collection of synonym sets; no word belongs to two sets."""

    def __init__(self, sets):
        self.sets: tuple[SynonymSet, ...] = tuple(sets)
        index: dict[str, tuple[int, int]] = {}
        for s in self.sets:
            for widx, word in enumerate(s.words):
                if word in index:
                    raise OverlapError(word)
                index[word] = (s.id, widx)
        self._index = index
        self._by_id = {s.id: s for s in self.sets}
        if len(self._by_id) != len(self.sets):
            raise FormatError("duplicate set ids")

    def __iter__(self):
        return iter(self.sets)

    def __len__(self):
        return len(self.sets)

    def set_by_id(self, set_id: int) -> SynonymSet:
        return self._by_id[set_id]

    def match_token(self, surface: str):
        """Locate a surface form (case-folded) in the lexicon.

        Returns (set_id, word_index) or None when the word is unknown.
        """
        return self._index.get(surface.lower())

    def all_words(self) -> tuple[str, ...]:
        return tuple(self._index)

    def to_json(self) -> dict:
        return {"sets": [{"id": s.id, "words": list(s.words)} for s in self.sets]}


def load_lexicon(document: bytes | str) -> WatermarkLexicon:
    """Load and validate the lexicon JSON format.

    Raises FormatError on malformed JSON or schema, SizeError on
    undersized sets, OverlapError when a word appears in two sets.
    """
    if isinstance(document, bytes):
        document = document.decode("utf-8")
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict) or not isinstance(data.get("sets"), list):
        raise FormatError('expected an object with a "sets" list')
    sets = []
    for entry in data["sets"]:
        if not isinstance(entry, dict) or "id" not in entry or "words" not in entry:
            raise FormatError('each set needs "id" and "words"')
        if not isinstance(entry["id"], int) or not isinstance(entry["words"], list):
            raise FormatError('"id" must be an integer and "words" a list')
        if not all(isinstance(w, str) for w in entry["words"]):
            raise FormatError("words must be strings")
        sets.append(SynonymSet(entry["id"], tuple(entry["words"])))
    return WatermarkLexicon(sets)
