"""Exception types shared across the toolkit."""


class CondmarkError(Exception):
    """Base class for all toolkit errors."""


# --- corpus parsing ---

class MalformedLine(CondmarkError):
    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


class MultipleRoots(CondmarkError):
    pass


class CycleError(CondmarkError):
    pass


class InvalidIndex(CondmarkError):
    pass


# --- lexicon ---

class FormatError(CondmarkError):
    pass


class OverlapError(CondmarkError):
    def __init__(self, word: str):
        super().__init__(f"word {word!r} appears in more than one synonym set")
        self.word = word


class SizeError(CondmarkError):
    pass


# --- statistics ---

class EmptyCounts(CondmarkError):
    pass


class SetMismatch(CondmarkError):
    pass


# --- optimization ---

class DimensionMismatch(CondmarkError):
    pass


class TooLarge(CondmarkError):
    pass


class EmptyCandidates(CondmarkError):
    pass


# --- watermark application ---

class FeatureMismatch(CondmarkError):
    pass


class InvalidDesignation(CondmarkError):
    pass


# --- verification ---

class NoSupport(CondmarkError):
    pass


class InvalidP(CondmarkError):
    pass


class ZeroN(CondmarkError):
    pass


# --- identifiability ---

class NotNormalized(CondmarkError):
    pass


class SpaceOverflow(CondmarkError):
    """Condition-space size exceeds the representable count range."""


# --- synthesis ---

class InfeasibleSpec(CondmarkError):
    pass
