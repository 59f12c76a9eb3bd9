"""Randomized equivalence testing of two specifications.

Shared clauses (equal up to normalization) are eliminated first, then the
remaining conjunctions of teacher (M) and student (S) formulas are
evaluated under many random assignments. Each decisive trial lands in one
of four quadrants (M&S, M&!S, !M&S, !M&!S); witnesses for inhabited
quadrants are kept to seed game blobs.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .ast import Expr, Signature, conjoin
from .evaluator import DEFAULT_CONFIG, EvalConfig, evaluate, gen_assignment
from .normalize import normalize, struct_key
from .rng import mix

QUADRANTS = ("MS", "MnS", "nMS", "nMnS")

DEFAULT_TRIALS = 2000
MAX_WITNESSES = 4
RETRY_FACTOR = 50  # cap on regenerations when an assume-filter is active


@dataclass(frozen=True)
class RandomCheckReport:
    trials: int
    counts: dict  # quadrant -> count
    witnesses: dict  # quadrant -> list of assignments (lowest trial index first)
    approx_trials: int
    discarded_trials: int  # trials lost to the assume-filter retry cap
    elapsed: float

    @property
    def decisive(self) -> int:
        return sum(self.counts.values())


def eliminate_common_clauses(m_clauses, s_clauses):
    """Drop clause pairs equal up to normalization (greedy one-to-one).

    Returns (remaining_m, remaining_s)."""
    out_m, out_s, _ = eliminate_common_clauses_full(m_clauses, s_clauses)
    return out_m, out_s


def eliminate_common_clauses_full(m_clauses, s_clauses):
    """Like eliminate_common_clauses but also returns the shared clauses
    (in their normalized form, one per matched pair)."""
    s_keys = [struct_key(normalize(c)) for c in s_clauses]
    s_left = list(s_clauses)
    out_m = []
    common = []
    for mc in m_clauses:
        norm = normalize(mc)
        k = struct_key(norm)
        if k in s_keys:
            i = s_keys.index(k)
            del s_keys[i]
            del s_left[i]
            common.append(norm)
        else:
            out_m.append(mc)
    return out_m, s_left, common


def run_random_check(
    m: Expr,
    s: Expr,
    sig: Signature,
    cfg: EvalConfig = DEFAULT_CONFIG,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    need_retval: bool = False,
    assume: Expr | None = None,
    max_witnesses: int = MAX_WITNESSES,
    shared: Expr | None = None,
) -> RandomCheckReport:
    """Evaluate m and s under `trials` random assignments.

    `assume` (typically the teacher's pre-condition, for post checks)
    filters assignments: failing ones are regenerated, up to RETRY_FACTOR
    * trials regenerations in total. Undefined results count as False;
    approximate (quantifier-truncated) results keep their value but are
    tallied in approx_trials.

    `shared` is a conjunction both sides have in common (from clause
    elimination): it is evaluated once per trial and conjoined into both
    results, so quadrant accounting always reflects the full formulas.
    """
    t0 = time.monotonic()
    counts = {q: 0 for q in QUADRANTS}
    witnesses: dict = {q: [] for q in QUADRANTS}
    approx_trials = 0
    discarded = 0
    retry_budget = RETRY_FACTOR * trials

    for i in range(trials):
        a = gen_assignment(sig, need_retval, cfg, mix(seed, i))
        if assume is not None:
            ok = evaluate(assume, a, cfg).as_bool()
            attempt = 1
            while not ok and retry_budget > 0:
                retry_budget -= 1
                a = gen_assignment(sig, need_retval, cfg, mix(mix(seed, i), attempt))
                attempt += 1
                ok = evaluate(assume, a, cfg).as_bool()
            if not ok:
                discarded += 1
                continue
        rm = evaluate(m, a, cfg)
        rs = evaluate(s, a, cfg)
        approx = rm.approx or rs.approx
        mv = rm.as_bool()
        sv = rs.as_bool()
        if shared is not None:
            rc = evaluate(shared, a, cfg)
            approx = approx or rc.approx
            cv = rc.as_bool()
            mv = mv and cv
            sv = sv and cv
        if approx:
            approx_trials += 1
        q = ("MS" if sv else "MnS") if mv else ("nMS" if sv else "nMnS")
        counts[q] += 1
        if len(witnesses[q]) < max_witnesses:
            witnesses[q].append(a)

    return RandomCheckReport(
        trials=trials,
        counts=counts,
        witnesses=witnesses,
        approx_trials=approx_trials,
        discarded_trials=discarded,
        elapsed=time.monotonic() - t0,
    )


def check_pair(
    m_clauses,
    s_clauses,
    sig: Signature,
    cfg: EvalConfig = DEFAULT_CONFIG,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    need_retval: bool = False,
    assume: Expr | None = None,
) -> RandomCheckReport:
    """Clause elimination + random check for one pre-pair or post-pair.

    Elimination applies only to the equivalence test; any `assume` filter
    keeps its full clause list. Shared clauses are still evaluated (once
    per trial) so quadrants reflect the full formulas."""
    m_rest, s_rest, common = eliminate_common_clauses_full(m_clauses, s_clauses)
    return run_random_check(
        conjoin(m_rest), conjoin(s_rest), sig, cfg, trials, seed,
        need_retval=need_retval, assume=assume,
        shared=conjoin(common) if common else None,
    )
