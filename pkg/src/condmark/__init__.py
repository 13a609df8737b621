"""Conditional lexical watermarking for text-generation APIs.

Learn substitution rules that preserve marginal word frequencies while
shifting conditional word choices, apply them to tagged token streams,
verify suspected imitations with an exact binomial test, and measure how
hard the rules are to reverse-engineer.
"""

from .conllu import Corpus, Sentence, Token, parse_conllu, render_plaintext, write_conllu
from .features import (
    NONE_LABEL,
    Condition,
    FeatureSpec,
    condition_space_size,
    dep_condition,
    extract_condition,
    format_condition,
    parse_condition,
    pos_condition,
)
from .lexicon import SynonymSet, WatermarkLexicon, load_lexicon
from .stats import (
    CondCounts,
    CondDistribution,
    count_conditions,
    merge_counts,
    to_distribution,
)
from .rules import (
    ConvexityDiagnostic,
    ObjectiveBreakdown,
    OptimizerConfig,
    RuleCandidate,
    RuleTable,
    convexity_diagnostic,
    objective,
    optimize_set,
    rank_and_select,
    solve_exact,
    solve_local,
)
from .watermark import ApplicationLog, apply_rules, apply_unconditional
from .verify import (
    VerificationReport,
    binom_two_tail,
    count_units,
    estimate_null_p,
    verify,
)
from .identifiability import (
    ImbalanceReport,
    SparsityReport,
    SupportCensus,
    census_from_counts,
    combinatorial_upper_bound,
    imbalance_prob,
    sparsity_bound,
    support_census,
    suspected_entries,
)
from .attacks import (
    LeakageResult,
    SuspicionRanking,
    frequency_attack,
    leakage_attack,
    score_leakage,
    top_words_union,
)
from .synth import SynthSpec, generate, generate_with_report

__version__ = "0.1.0"
