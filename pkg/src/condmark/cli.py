"""Command-line surface for the watermarking pipeline.

Exit codes: 0 success, 1 verification inconclusive (too few covered
units), 2 usage or input-format error, 3 internal error. Every
subcommand is deterministic given its flags and seeds; reports are JSON
files plus a one-line TSV summary on stdout, with optional matplotlib
figures next to them.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import plotting
from .attacks import frequency_attack, leakage_attack, score_leakage, top_words_union
from .conllu import parse_conllu, render_plaintext, write_conllu
from .errors import (
    CondmarkError,
    CycleError,
    EmptyCandidates,
    FormatError,
    InfeasibleSpec,
    InvalidDesignation,
    MalformedLine,
    MultipleRoots,
    NoSupport,
    OverlapError,
    SizeError,
    ZeroN,
)
from .features import FeatureSpec, format_condition
from .identifiability import (
    ImbalanceReport,
    combinatorial_upper_bound,
    imbalance_prob,
    sparsity_bound,
    support_census,
    suspected_entries,
)
from .lexicon import load_lexicon
from .rules import OptimizerConfig, RuleTable, optimize_set, rank_and_select
from .stats import count_conditions, distributions_from_json, distributions_to_json
from .synth import generate_with_report, spec_from_json
from .verify import binom_two_tail, count_units, estimate_null_p
from .watermark import apply_rules, apply_unconditional

OK, INCONCLUSIVE, USAGE_ERROR, INTERNAL_ERROR = 0, 1, 2, 3

_FORMAT_ERRORS = (
    MalformedLine,
    CycleError,
    MultipleRoots,
    FormatError,
    OverlapError,
    SizeError,
    InfeasibleSpec,
    EmptyCandidates,
    InvalidDesignation,
    json.JSONDecodeError,
    FileNotFoundError,
    KeyError,
)


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as f:
        return f.read()


def _write(path: str, text: str):
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)


def _write_json(path: str, data: dict):
    _write(path, json.dumps(data, indent=2, sort_keys=True) + "\n")


def _load_json(path: str) -> dict:
    return json.loads(_read(path))


def _tsv(*fields):
    print("\t".join(str(f) for f in fields))


def _feature_from_args(args) -> FeatureSpec:
    return FeatureSpec(args.feature, args.order, args.labelset_size)


def _add_feature_flags(parser):
    parser.add_argument("--feature", choices=["pos", "dep"], required=True)
    parser.add_argument("--order", type=int, required=True)
    parser.add_argument("--labelset-size", type=int, default=36, dest="labelset_size")


def cmd_estimate(args) -> int:
    corpus = parse_conllu(_read(args.corpus), use_xpos=args.xpos)
    lexicon = load_lexicon(_read(args.lexicon))
    spec = _feature_from_args(args)
    counts = count_conditions(corpus, lexicon, spec)
    data = distributions_to_json(spec, lexicon, counts)
    _write_json(args.out, data)
    total_units = sum(sum(sum(row) for row in s["counts"]) for s in data["sets"])
    _tsv("estimate", args.feature, args.order, len(data["sets"]), total_units)
    return OK


def cmd_optimize(args) -> int:
    spec, dists = distributions_from_json(_load_json(args.dist))
    config = OptimizerConfig(
        alpha=args.alpha,
        exact_threshold=args.exact_threshold,
        restarts=args.restarts,
        max_sweeps=args.max_sweeps,
        seed=args.seed,
    )
    candidates = [optimize_set(dist, words, config) for dist, words in dists]
    table = rank_and_select(candidates, args.top_k, spec, args.alpha)
    _write_json(args.out, table.to_json())
    kept = sorted(table.entries)
    _tsv("optimize", args.alpha, args.top_k, len(candidates), ",".join(map(str, kept)))
    return OK


def cmd_watermark(args) -> int:
    corpus = parse_conllu(_read(args.corpus), use_xpos=args.xpos)
    lexicon = load_lexicon(_read(args.lexicon))
    if args.baseline:
        wordmap = {int(k): v for k, v in _load_json(args.baseline).items()}
        out, log = apply_unconditional(corpus, lexicon, wordmap)
        mode = "baseline"
    else:
        if not args.rules:
            raise FormatError("either --rules or --baseline is required")
        table = RuleTable.from_json(_load_json(args.rules))
        out, log = apply_rules(corpus, lexicon, table)
        mode = "conditional"
    _write(args.out, write_conllu(out))
    if args.plaintext:
        _write(args.plaintext, render_plaintext(out) + "\n")
    if args.log:
        _write_json(args.log, log.to_json())
    _tsv("watermark", mode, log.candidates_seen, log.substituted, log.fallback_identity)
    return OK


def cmd_verify(args) -> int:
    suspect = parse_conllu(_read(args.suspect), use_xpos=args.xpos)
    reference = parse_conllu(_read(args.reference), use_xpos=args.xpos)
    lexicon = load_lexicon(_read(args.lexicon))
    table = RuleTable.from_json(_load_json(args.rules))

    k, n, per_set = count_units(suspect, lexicon, table)
    report = {
        "k": k,
        "n": n,
        "p": None,
        "p_value": None,
        "per_set": [
            {"id": sid, "k": kn[0], "n": kn[1]} for sid, kn in sorted(per_set.items())
        ],
        "threshold": args.threshold,
        "min_n": args.min_n,
    }
    status = OK
    if n < args.min_n:
        report["verdict"] = "insufficient evidence"
        status = INCONCLUSIVE
    else:
        try:
            p = estimate_null_p(reference, lexicon, table)
        except NoSupport:
            report["verdict"] = "insufficient evidence"
            report["detail"] = "reference corpus has no rule-covered units"
            status = INCONCLUSIVE
        else:
            report["p"] = p
            try:
                p_value = binom_two_tail(k, n, p)
            except (ZeroN, CondmarkError) as exc:
                report["verdict"] = "insufficient evidence"
                report["detail"] = str(exc)
                status = INCONCLUSIVE
            else:
                report["p_value"] = p_value
                report["verdict"] = (
                    "watermarked" if p_value < args.threshold else "no-watermark"
                )
                if args.fig:
                    plotting.save_null_distribution(args.fig, k, n, p)
    _write_json(args.report, report)
    _tsv("verify", k, n, report["p"], report["p_value"], report["verdict"])
    return status


def cmd_analyze_sparsity(args) -> int:
    thresholds = [int(m) for m in args.thresholds.split(",")]
    census = None
    sample_tokens = args.sample_tokens
    if args.corpus:
        lexicon = load_lexicon(_read(args.lexicon))
        spec = FeatureSpec(args.feature, args.order, args.feature_size)
        census = support_census(parse_conllu(_read(args.corpus)), lexicon, spec)
        if sample_tokens is None:
            sample_tokens = census.sample_tokens
    if sample_tokens is None:
        raise FormatError("need --sample-tokens or --corpus")
    entries = []
    for m in thresholds:
        rep = sparsity_bound(
            args.feature_size,
            args.order,
            sample_tokens,
            m,
            observed_t=census.observed_t(m) if census else None,
        )
        entries.append(rep.to_json())
    out = {
        "feature_size": args.feature_size,
        "order": args.order,
        "sample_tokens": sample_tokens,
        "entries": entries,
    }
    _write_json(args.out, out)
    first = entries[0]
    _tsv("sparsity", args.feature_size, args.order, sample_tokens,
         first["bound"], first["observed_t"])
    return OK


def cmd_analyze_imbalance(args) -> int:
    _, dists = distributions_from_json(_load_json(args.dist))
    sets_out = []
    for dist, _words in dists:
        per_condition = []
        for j, condition in enumerate(dist.conditions):
            m = args.m if args.m is not None else dist.support[j]
            rep = ImbalanceReport(
                condition, m, imbalance_prob([float(x) for x in dist.W[:, j]], m)
            )
            per_condition.append({
                "condition": format_condition(rep.condition),
                "m": rep.m,
                "probability": rep.probability,
            })
        sets_out.append({"id": dist.set_id, "per_condition": per_condition})
    _write_json(args.out, {"sets": sets_out})
    count = sum(len(s["per_condition"]) for s in sets_out)
    _tsv("imbalance", args.m if args.m is not None else "support", count)
    return OK


def cmd_analyze_suspects(args) -> int:
    if (args.order is None) == (args.orders is None):
        raise FormatError("need exactly one of --order or --orders")
    corpus = parse_conllu(_read(args.corpus), use_xpos=args.xpos)
    lexicon = load_lexicon(_read(args.lexicon))
    if args.orders:
        # Growth view: suspected-entry counts across orders, with the
        # uninformed attacker's combinatorial ceiling for scale.
        orders = [int(k) for k in args.orders.split(",")]
        per_order = []
        for order in orders:
            spec = FeatureSpec(args.feature, order, args.labelset_size)
            total, _ = suspected_entries(corpus, lexicon, spec, args.min_support)
            per_order.append({
                "order": order,
                "suspected": total,
                "upper_bound": combinatorial_upper_bound(
                    len(lexicon), args.labelset_size, order
                ),
            })
        out = {
            "feature_kind": args.feature,
            "min_support": args.min_support,
            "per_order": per_order,
        }
        _write_json(args.out, out)
        if args.fig:
            plotting.save_suspect_counts(
                args.fig,
                [e["order"] for e in per_order],
                [e["suspected"] for e in per_order],
                "suspected entries per condition order",
            )
        _tsv("suspects", args.feature, args.orders, args.min_support,
             ",".join(str(e["suspected"]) for e in per_order))
        return OK
    spec = _feature_from_args(args)
    total, per_set = suspected_entries(corpus, lexicon, spec, args.min_support)
    out = {
        "feature": {"kind": spec.kind, "order": spec.order},
        "min_support": args.min_support,
        "suspected": total,
        "per_set": [
            {
                "id": sid,
                "entries": [
                    {"condition": format_condition(c), "word": w, "support": s}
                    for c, w, s in sorted(entries)
                ],
            }
            for sid, entries in sorted(per_set.items())
        ],
    }
    _write_json(args.out, out)
    if args.fig:
        labels = [e["id"] for e in out["per_set"]]
        counts = [len(e["entries"]) for e in out["per_set"]]
        plotting.save_suspect_counts(
            args.fig, labels, counts, f"suspected entries per set (order {spec.order})"
        )
    _tsv("suspects", spec.kind, spec.order, args.min_support, total)
    return OK


def cmd_attack_freq(args) -> int:
    reference = parse_conllu(_read(args.reference))
    suspect = parse_conllu(_read(args.suspect))
    if args.vocab:
        vocab = set(_load_json(args.vocab))
    else:
        vocab = top_words_union(reference, suspect, args.top)
    ranking = frequency_attack(reference, suspect, vocab, args.direction)
    out = {
        "direction": ranking.direction,
        "entries": [{"word": w, "ratio": r} for w, r in ranking.entries],
    }
    _write_json(args.out, out)
    if args.tsv:
        _write(args.tsv, "".join(f"{w}\t{r}\n" for w, r in ranking.entries))
    if args.fig:
        plotting.save_ratio_ranking(args.fig, ranking.entries, direction=ranking.direction)
    top_word, top_ratio = ranking.entries[0]
    _tsv("attack-freq", ranking.direction, len(ranking.entries), top_word, top_ratio)
    return OK


def cmd_attack_leak(args) -> int:
    suspect = parse_conllu(_read(args.suspect), use_xpos=args.xpos)
    lexicon = load_lexicon(_read(args.lexicon))
    spec = _feature_from_args(args)
    suspected = leakage_attack(suspect, lexicon, spec, args.min_support)
    out = {
        "feature": {"kind": spec.kind, "order": spec.order},
        "min_support": args.min_support,
        "suspected": [
            {"set": sid, "condition": format_condition(c), "word": w}
            for sid, c, w in sorted(suspected)
        ],
    }
    summary = ["attack-leak", spec.kind, spec.order, len(suspected)]
    if args.rules:
        table = RuleTable.from_json(_load_json(args.rules))
        result = score_leakage(suspected, table.rule_triples())
        out["precision"] = result.precision
        out["recall"] = result.recall
        out["confusion_factor"] = result.confusion_factor
        out["true_rules"] = len(result.true_rules)
        summary += [result.precision, result.recall]
    _write_json(args.out, out)
    _tsv(*summary)
    return OK


def cmd_synth(args) -> int:
    spec = spec_from_json(_load_json(args.spec))
    corpus, report = generate_with_report(spec)
    _write(args.out, write_conllu(corpus))
    if args.report:
        _write_json(args.report, report.to_json())
    _tsv("synth", spec.seed, spec.num_sentences, len(corpus))
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="condmark",
        description="Conditional lexical watermarking: estimate, optimize, "
        "watermark, verify, analyze, attack, synth.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("estimate", help="estimate conditional word statistics")
    p.add_argument("--corpus", required=True)
    p.add_argument("--lexicon", required=True)
    _add_feature_flags(p)
    p.add_argument("--xpos", action="store_true", help="read XPOS instead of UPOS")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("optimize", help="solve watermark rules from statistics")
    p.add_argument("--dist", required=True)
    p.add_argument("--alpha", type=float, default=0.01)
    p.add_argument("--top-k", type=int, default=10, dest="top_k")
    p.add_argument("--seed", type=int, default=int(os.environ.get("CONDMARK_SEED", "0")))
    p.add_argument("--exact-threshold", type=int, default=1 << 20, dest="exact_threshold")
    p.add_argument("--restarts", type=int, default=16)
    p.add_argument("--max-sweeps", type=int, default=100, dest="max_sweeps")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("watermark", help="apply rules to a tagged corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--lexicon", required=True)
    p.add_argument("--xpos", action="store_true", help="read XPOS instead of UPOS")
    p.add_argument("--rules")
    p.add_argument("--baseline", help="JSON map set_id -> designated word "
                   "(unconditional baseline instead of rules)")
    p.add_argument("--out", required=True)
    p.add_argument("--plaintext", help="also render plain text here")
    p.add_argument("--log", help="write application counters here")
    p.set_defaults(func=cmd_watermark)

    p = sub.add_parser("verify", help="test a suspect corpus for the watermark")
    p.add_argument("--suspect", required=True)
    p.add_argument("--reference", required=True)
    p.add_argument("--lexicon", required=True)
    p.add_argument("--rules", required=True)
    p.add_argument("--xpos", action="store_true", help="read XPOS instead of UPOS")
    p.add_argument("--min-n", type=int, default=20, dest="min_n")
    p.add_argument("--threshold", type=float, default=1e-6)
    p.add_argument("--report", required=True)
    p.add_argument("--fig", help="render the null distribution here")
    p.set_defaults(func=cmd_verify)

    analyze = sub.add_parser("analyze", help="identifiability analyses")
    asub = analyze.add_subparsers(dest="analysis", required=True)

    p = asub.add_parser("sparsity", help="thin-support condition bound")
    p.add_argument("--corpus")
    p.add_argument("--lexicon")
    p.add_argument("--feature", choices=["pos", "dep"], default="pos")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--feature-size", type=int, default=36, dest="feature_size")
    p.add_argument("--sample-tokens", type=int, dest="sample_tokens")
    p.add_argument("--thresholds", default="1")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_analyze_sparsity)

    p = asub.add_parser("imbalance", help="chance of naturally one-sided conditions")
    p.add_argument("--dist", required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_analyze_imbalance)

    p = asub.add_parser("suspects", help="sparse-entry census (attacker view)")
    p.add_argument("--corpus", required=True)
    p.add_argument("--lexicon", required=True)
    p.add_argument("--feature", choices=["pos", "dep"], required=True)
    p.add_argument("--order", type=int)
    p.add_argument("--orders", help="comma-separated orders for the growth view")
    p.add_argument("--labelset-size", type=int, default=36, dest="labelset_size")
    p.add_argument("--xpos", action="store_true", help="read XPOS instead of UPOS")
    p.add_argument("--min-support", type=int, default=1, dest="min_support")
    p.add_argument("--out", required=True)
    p.add_argument("--fig")
    p.set_defaults(func=cmd_analyze_suspects)

    attack = sub.add_parser("attack", help="adaptive-attack simulations")
    atsub = attack.add_subparsers(dest="attack_kind", required=True)

    p = atsub.add_parser("freq", help="frequency-ratio attack")
    p.add_argument("--reference", required=True)
    p.add_argument("--suspect", required=True)
    p.add_argument("--vocab", help="JSON list of words; default: union of top words")
    p.add_argument("--top", type=int, default=100)
    p.add_argument("--direction", choices=["decreased", "increased"], default="decreased")
    p.add_argument("--out", required=True)
    p.add_argument("--tsv", help="full ranking as word<TAB>ratio rows")
    p.add_argument("--fig")
    p.set_defaults(func=cmd_attack_freq)

    p = atsub.add_parser("leak", help="algorithm-leakage sparse-entry attack")
    p.add_argument("--suspect", required=True)
    p.add_argument("--lexicon", required=True)
    p.add_argument("--xpos", action="store_true", help="read XPOS instead of UPOS")
    _add_feature_flags(p)
    p.add_argument("--min-support", type=int, default=1, dest="min_support")
    p.add_argument("--rules", help="score precision/recall against this rule table")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_attack_leak)

    p = sub.add_parser("synth", help="generate a synthetic tagged corpus")
    p.add_argument("--spec", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--report")
    p.set_defaults(func=cmd_synth)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _FORMAT_ERRORS as exc:
        detail = f"missing key {exc}" if isinstance(exc, KeyError) else str(exc)
        print(f"condmark: {detail}", file=sys.stderr)
        return USAGE_ERROR
    except CondmarkError as exc:
        print(f"condmark: {exc}", file=sys.stderr)
        return INTERNAL_ERROR
    except Exception as exc:  # pragma: no cover - safety net
        print(f"condmark: internal error: {exc}", file=sys.stderr)
        return INTERNAL_ERROR


if __name__ == "__main__":
    sys.exit(main())
