"""Watermark-rule optimization.

Each synonym set gets a one-hot assignment X (condition -> designated
word) chosen to keep the marginal word distribution W@c intact while
pushing the conditional distributions away from their originals:

    minimize  ||W c - X c||^2  -  (alpha/|C|) * sum_j ||W[:,j] - X[:,j]||^2
    subject to one-hot columns of X.

The exact solver enumerates every assignment; the local solver runs
restarted coordinate descent for instances too large to enumerate.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, EmptyCandidates, TooLarge
from .features import Condition, FeatureSpec, format_condition, parse_condition
from .stats import CondDistribution

_CHUNK = 1 << 16


@dataclass(frozen=True)
class ObjectiveBreakdown:
    indistinguishable: float  # term I, >= 0
    distinct: float           # term II before the alpha/|C| scaling, >= 0
    total: float              # I - (alpha/|C|) * II


@dataclass(frozen=True)
class OptimizerConfig:
    alpha: float = 0.01
    exact_threshold: int = 1 << 20
    restarts: int = 16
    max_sweeps: int = 100
    seed: int = 0

    def __post_init__(self):
        if self.alpha < 0:
            raise ValueError("alpha must be >= 0")
        if self.restarts < 1 or self.max_sweeps < 1:
            raise ValueError("restarts and max_sweeps must be >= 1")


@dataclass(frozen=True)
class ConvexityDiagnostic:
    """Spectrum of the relaxed objective's Hessian, in closed form.

    The Hessian is 2*(c c^T kron I_R) - (2*alpha/|C|) I, so its
    eigenvalues are {2*lambda_i(c c^T) - 2*alpha/|C|}, each with
    multiplicity R, and lambda(c c^T) = {||c||^2, 0 x (|C|-1)}.
    """

    min_eigenvalue: float
    alpha_threshold: float
    convex: bool
    spectrum: tuple[tuple[float, int], ...]  # (eigenvalue, multiplicity)


@dataclass(frozen=True)
class RuleCandidate:
    """One optimized synonym set, ready for ranking."""

    set_id: int
    words: tuple[str, ...]
    conditions: tuple[Condition, ...]
    assignment: tuple[int, ...]  # designated word index per condition
    objective: ObjectiveBreakdown


@dataclass
class RuleTable:
    """The selected watermark: condition -> designated word, per set."""

    feature: FeatureSpec
    alpha: float
    entries: dict[int, dict[Condition, str]] = field(default_factory=dict)
    objectives: dict[int, ObjectiveBreakdown] = field(default_factory=dict)

    def designated(self, set_id: int, condition: Condition):
        rules = self.entries.get(set_id)
        if rules is None:
            return None
        return rules.get(condition)

    def rule_triples(self) -> set[tuple[int, Condition, str]]:
        """All (set_id, condition, word) rules, the attacker's target."""
        return {
            (set_id, condition, word)
            for set_id, rules in self.entries.items()
            for condition, word in rules.items()
        }

    def to_json(self) -> dict:
        return {
            "feature": {"kind": self.feature.kind, "order": self.feature.order},
            "alpha": self.alpha,
            "sets": [
                {
                    "id": set_id,
                    "rules": {format_condition(c): w for c, w in rules.items()},
                    "objective": {
                        "indistinguishable": self.objectives[set_id].indistinguishable,
                        "distinct": self.objectives[set_id].distinct,
                        "total": self.objectives[set_id].total,
                    },
                }
                for set_id, rules in self.entries.items()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "RuleTable":
        feat = data["feature"]
        table = cls(
            feature=FeatureSpec(feat["kind"], feat["order"], feat.get("labelset_size", 36)),
            alpha=float(data["alpha"]),
        )
        for entry in data["sets"]:
            rules = {parse_condition(c): w for c, w in entry["rules"].items()}
            obj = entry["objective"]
            table.entries[entry["id"]] = rules
            table.objectives[entry["id"]] = ObjectiveBreakdown(
                obj["indistinguishable"], obj["distinct"], obj["total"]
            )
        return table


def _as_assignment(dist: CondDistribution, x) -> np.ndarray:
    """Accept an assignment vector or a one-hot matrix; return the vector."""
    arr = np.asarray(x)
    if arr.ndim == 1:
        if len(arr) != dist.num_conditions:
            raise DimensionMismatch("assignment length != number of conditions")
        if arr.min() < 0 or arr.max() >= dist.num_words:
            raise DimensionMismatch("assignment indexes a word out of range")
        return arr.astype(int)
    if arr.shape != dist.W.shape:
        raise DimensionMismatch(f"X shape {arr.shape} != W shape {dist.W.shape}")
    colsums = arr.sum(axis=0)
    if not (np.all((arr == 0) | (arr == 1)) and np.all(colsums == 1)):
        raise DimensionMismatch("X columns must be one-hot")
    return arr.argmax(axis=0)


def objective(dist: CondDistribution, x, alpha: float) -> ObjectiveBreakdown:
    """Evaluate both objective terms for an assignment.

    `x` may be a length-|C| vector of word indices or an R x |C| one-hot
    matrix.
    """
    a = _as_assignment(dist, x)
    num_c = dist.num_conditions
    xc = np.zeros(dist.num_words)
    np.add.at(xc, a, dist.c)
    diff = dist.W @ dist.c - xc
    term_i = float(diff @ diff)
    cols = dist.W.copy()
    cols[a, np.arange(num_c)] -= 1.0
    term_ii = float((cols * cols).sum())
    return ObjectiveBreakdown(term_i, term_ii, term_i - (alpha / num_c) * term_ii)


def _column_penalties(dist: CondDistribution) -> np.ndarray:
    """psi[r, j] = ||W[:,j] - e_r||^2, the distinct term per column choice."""
    col_sq = (dist.W * dist.W).sum(axis=0)
    return col_sq[None, :] - 2.0 * dist.W + 1.0


def solve_exact(dist: CondDistribution, config: OptimizerConfig = OptimizerConfig()):
    """Global minimizer by enumeration of all R^|C| one-hot assignments.

    Ties break toward the lexicographically smallest sequence of
    designated word indices over the condition list. Raises TooLarge
    when the instance exceeds config.exact_threshold.
    """
    r, num_c = dist.num_words, dist.num_conditions
    total_assignments = r ** num_c
    if total_assignments > config.exact_threshold:
        raise TooLarge(f"{r}^{num_c} assignments exceed threshold {config.exact_threshold}")
    wc = dist.W @ dist.c
    psi = _column_penalties(dist)
    scale = config.alpha / num_c
    cols = np.arange(num_c)
    best_total = np.inf
    best_a = None
    for start in range(0, total_assignments, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total_assignments))
        assigns = np.stack(np.unravel_index(idx, (r,) * num_c), axis=1)
        xc = np.zeros((len(idx), r))
        np.add.at(xc, (np.arange(len(idx))[:, None], assigns), dist.c[None, :])
        diff = wc[None, :] - xc
        term_i = (diff * diff).sum(axis=1)
        term_ii = psi[assigns, cols[None, :]].sum(axis=1)
        totals = term_i - scale * term_ii
        j = int(np.argmin(totals))
        if totals[j] < best_total:
            best_total = float(totals[j])
            best_a = tuple(int(v) for v in assigns[j])
    return best_a, objective(dist, np.array(best_a), config.alpha)


def _improving_pair_swap(dist, wc, psi, scale, a, xc) -> bool:
    """Swap two conditions' designations when that lowers the total.

    Single-coordinate moves stall on pairs whose individual flips each
    distort the marginal but cancel jointly; the swap delta is O(1):
    the marginal moves by (c_j1 - c_j2) between the two words.
    """
    num_c = dist.num_conditions
    d = wc - xc
    for j1 in range(num_c):
        r1 = a[j1]
        for j2 in range(j1 + 1, num_c):
            r2 = a[j2]
            if r1 == r2:
                continue
            shift = dist.c[j1] - dist.c[j2]
            delta_i = -2.0 * shift * (d[r2] - d[r1]) + 2.0 * shift * shift
            delta_ii = psi[r2, j1] + psi[r1, j2] - psi[r1, j1] - psi[r2, j2]
            if delta_i - scale * delta_ii < -1e-15:
                a[j1], a[j2] = r2, r1
                xc[r1] += dist.c[j2] - dist.c[j1]
                xc[r2] += dist.c[j1] - dist.c[j2]
                return True
    return False


def _descend(dist, wc, psi, scale, a, max_sweeps, rng):
    """Local descent from assignment `a`, in place; returns total.

    Coordinate sweeps in randomized order re-designate one condition at
    a time; when a sweep stalls, one improving pairwise swap (if any)
    restarts the sweeps.
    """
    num_c = dist.num_conditions
    xc = np.zeros(dist.num_words)
    np.add.at(xc, a, dist.c)
    for _ in range(max_sweeps):
        changed = False
        for j in rng.permutation(num_c):
            cj = dist.c[j]
            xc[a[j]] -= cj
            base = wc - xc
            # With the other coordinates fixed, term I for choice r is
            # ||base||^2 - 2*cj*base[r] + cj^2; only base[r] varies.
            scores = -2.0 * cj * base - scale * psi[:, j]
            r_star = int(np.argmin(scores))
            if r_star != a[j]:
                a[j] = r_star
                changed = True
            xc[a[j]] += cj
        if not changed and not _improving_pair_swap(dist, wc, psi, scale, a, xc):
            break
    diff = wc - xc
    term_i = float(diff @ diff)
    term_ii = float(psi[a, np.arange(num_c)].sum())
    return term_i - scale * term_ii


def solve_local(dist: CondDistribution, config: OptimizerConfig = OptimizerConfig()):
    """Restarted seeded local search; deterministic given config.seed.

    Never beats solve_exact; matches it on almost all small instances.
    """
    rng = np.random.default_rng(config.seed)
    wc = dist.W @ dist.c
    psi = _column_penalties(dist)
    scale = config.alpha / dist.num_conditions
    best_total = np.inf
    best_a = None
    for _ in range(config.restarts):
        a = rng.integers(0, dist.num_words, size=dist.num_conditions)
        total = _descend(dist, wc, psi, scale, a, config.max_sweeps, rng)
        key = tuple(int(v) for v in a)
        if total < best_total or (total == best_total and key < best_a):
            best_total = total
            best_a = key
    return best_a, objective(dist, np.array(best_a), config.alpha)


def optimize_set(
    dist: CondDistribution,
    words: tuple[str, ...],
    config: OptimizerConfig = OptimizerConfig(),
) -> RuleCandidate:
    """Solve one set, exactly when enumerable, locally otherwise."""
    if dist.num_words ** dist.num_conditions <= config.exact_threshold:
        assignment, breakdown = solve_exact(dist, config)
    else:
        assignment, breakdown = solve_local(dist, config)
    return RuleCandidate(dist.set_id, tuple(words), dist.conditions, assignment, breakdown)


def convexity_diagnostic(dist: CondDistribution, alpha: float) -> ConvexityDiagnostic:
    """Closed-form Hessian spectrum of the continuous relaxation.

    The relaxation is convex iff alpha <= |C| * lambda_min(c c^T), which
    collapses to alpha = 0 whenever |C| > 1; the binary solvers do not
    depend on this, the diagnostic only reports it.
    """
    num_c = dist.num_conditions
    r = dist.num_words
    cnorm2 = float(dist.c @ dist.c)
    shift = 2.0 * alpha / num_c
    spectrum = [(2.0 * cnorm2 - shift, r)]
    lam_min_cct = cnorm2
    if num_c > 1:
        spectrum.append((-shift, r * (num_c - 1)))
        lam_min_cct = 0.0
    min_eig = min(v for v, _ in spectrum)
    return ConvexityDiagnostic(
        min_eigenvalue=min_eig,
        alpha_threshold=num_c * lam_min_cct,
        convex=min_eig >= -1e-12,
        spectrum=tuple(spectrum),
    )


def rank_and_select(
    candidates: list[RuleCandidate],
    top_k: int,
    feature: FeatureSpec,
    alpha: float,
) -> RuleTable:
    """Keep the top_k candidates with smallest indistinguishable term.

    Ties break by set id. This is the final watermark-construction step:
    optimize every set, then retain only the stealthiest assignments.
    """
    if not candidates:
        raise EmptyCandidates("no candidates to rank")
    if top_k < 1:
        raise ValueError("top_k must be >= 1")
    ranked = sorted(candidates, key=lambda c: (c.objective.indistinguishable, c.set_id))
    table = RuleTable(feature=feature, alpha=alpha)
    for cand in ranked[:top_k]:
        table.entries[cand.set_id] = {
            condition: cand.words[widx]
            for condition, widx in zip(cand.conditions, cand.assignment)
        }
        table.objectives[cand.set_id] = cand.objective
    return table
