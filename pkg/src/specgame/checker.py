"""End-to-end specification comparison: both backends, fused, classified.

The pre-pair and post-pair are checked as two independent problems. For
the post check the teacher's pre-condition is assumed: random assignments
failing it are regenerated, and SMT quadrant queries carry it as a
background assertion. `retval` is treated as a free value of the return
type; the post-condition is a relation over (parameters, retval).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .ast import Expr, Signature, Specification, conjoin
from .evaluator import DEFAULT_CONFIG, EvalConfig
from .randomcheck import DEFAULT_TRIALS, check_pair
from .smt import SolverConfig, check_quadrants, find_solver
from .smt.solver import SolverProcessError
from .verdict import (
    SideVerdict,
    Verdict,
    classify,
    finding_from_report,
    finding_from_smt,
    fuse,
)

@dataclass(frozen=True)
class CheckConfig:
    eval_config: EvalConfig = DEFAULT_CONFIG
    trials: int = DEFAULT_TRIALS
    seed: int = 0
    use_smt: bool = True
    solver: SolverConfig = SolverConfig()

    def smt_available(self) -> bool:
        if not self.use_smt:
            return False
        return (self.solver.path or find_solver()) is not None


def check_side(
    m_clauses,
    s_clauses,
    sig: Signature,
    cfg: CheckConfig,
    need_retval: bool,
    assume: Expr | None = None,
) -> SideVerdict:
    report = check_pair(
        list(m_clauses), list(s_clauses), sig, cfg.eval_config,
        trials=cfg.trials, seed=cfg.seed, need_retval=need_retval, assume=assume,
    )
    findings = [finding_from_report(report)]
    if cfg.smt_available():
        m = conjoin(list(m_clauses))
        s = conjoin(list(s_clauses))
        try:
            statuses = check_quadrants(m, s, sig, cfg.solver,
                                       need_retval=need_retval, assume=assume)
            findings.append(finding_from_smt(statuses))
        except SolverProcessError:
            pass  # solver trouble degrades to random-only, never fails the check
    return classify(fuse(findings))


def check_specs(model: Specification, student: Specification,
                cfg: CheckConfig = CheckConfig()) -> Verdict:
    """Compare a student specification against the teacher's model."""
    sig = model.signature
    teacher_pre = conjoin(list(model.pres)) if model.pres else None
    pre = check_side(model.pres, student.pres, sig, cfg, need_retval=False)
    post = check_side(model.posts, student.posts, sig, cfg,
                      need_retval=True, assume=teacher_pre)
    return Verdict(pre=pre, post=post)
