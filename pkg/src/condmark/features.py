"""Watermarking-condition extraction from sentence context.

A condition is an ordered tuple of K labels keyed off one anchor token:
either the POS labels of its neighbors or the dependency-relation labels
along its head chain. Missing context is padded with the pseudo label
"[none]".
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .conllu import Sentence
from .errors import InvalidIndex, SpaceOverflow

NONE_LABEL = "[none]"

Condition = tuple[str, ...]

# Counts representable as signed 64-bit keep every serialized artifact
# portable; larger spaces are refused rather than silently promoted.
_MAX_SPACE_BITS = 63


@dataclass(frozen=True, slots=True)
class FeatureSpec:
    """Which feature family and order to extract; labelset_size feeds the
    identifiability analysis only, never extraction."""

    kind: str  # "pos" | "dep"
    order: int
    labelset_size: int = 36

    def __post_init__(self):
        if self.kind not in ("pos", "dep"):
            raise ValueError(f"kind must be 'pos' or 'dep', got {self.kind!r}")
        if self.order < 1:
            raise ValueError("order must be >= 1")
        if self.labelset_size < 1:
            raise ValueError("labelset_size must be >= 1")

    def same_extraction(self, other: "FeatureSpec") -> bool:
        """True when both specs extract identical conditions."""
        return self.kind == other.kind and self.order == other.order


def pos_offsets(order: int) -> tuple[int, ...]:
    """Neighbor offsets read by a POS condition of the given order.

    Expansion alternates outward starting on the left: order 1 reads
    (-1), order 2 (-1, +1), order 3 (-2, -1, +1), order 4
    (-2, -1, +1, +2), and so on.
    """
    left = (order + 1) // 2
    right = order // 2
    return tuple(range(-left, 0)) + tuple(range(1, right + 1))


def pos_condition(sentence: Sentence, token_index: int, spec: FeatureSpec) -> Condition:
    """POS labels of the anchor's neighbors at the order's offsets."""
    if spec.kind != "pos":
        raise ValueError("spec.kind must be 'pos'")
    n = len(sentence.tokens)
    if not 1 <= token_index <= n:
        raise InvalidIndex(f"token index {token_index} out of 1..{n}")
    labels = []
    for off in pos_offsets(spec.order):
        j = token_index + off
        labels.append(sentence.tokens[j - 1].upos if 1 <= j <= n else NONE_LABEL)
    return tuple(labels)


def dep_condition(sentence: Sentence, token_index: int, spec: FeatureSpec) -> Condition:
    """Dependency-relation labels up the anchor's head chain.

    The first label is the anchor's own incoming arc; each further label
    comes from the next head up. Past the sentence root the chain yields
    "[none]".
    """
    if spec.kind != "dep":
        raise ValueError("spec.kind must be 'dep'")
    n = len(sentence.tokens)
    if not 1 <= token_index <= n:
        raise InvalidIndex(f"token index {token_index} out of 1..{n}")
    labels = []
    cur = token_index
    for _ in range(spec.order):
        if cur == 0:
            labels.append(NONE_LABEL)
            continue
        tok = sentence.tokens[cur - 1]
        labels.append(tok.deprel)
        cur = tok.head
    return tuple(labels)


def extract_condition(sentence: Sentence, token_index: int, spec: FeatureSpec) -> Condition:
    if spec.kind == "pos":
        return pos_condition(sentence, token_index, spec)
    return dep_condition(sentence, token_index, spec)


def condition_space_size(spec: FeatureSpec) -> int:
    """Total number of possible conditions, labelset_size ** order.

    The "[none]" padding label is not part of the labelset, matching the
    |F|^K convention used by the sparsity analysis.
    """
    if spec.labelset_size > 1 and spec.order * math.log2(spec.labelset_size) > _MAX_SPACE_BITS:
        raise SpaceOverflow(
            f"{spec.labelset_size}^{spec.order} exceeds the representable count range"
        )
    return spec.labelset_size ** spec.order


def format_condition(condition: Condition) -> str:
    """Serialize a condition for JSON artifacts: labels joined with '|'."""
    return "|".join(condition)


def parse_condition(text: str) -> Condition:
    return tuple(text.split("|"))
