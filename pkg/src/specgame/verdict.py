"""Fusing backend findings into a student-facing verdict and a blob plan.

Terminology: M is the teacher (model) formula, S the student formula.
Quadrants: MS = M&S, MnS = M&!S, nMS = !M&S, nMnS = !M&!S. A witness in
MnS refutes M=>S (student too weak is ruled out ... precisely: refutes
"M implies S"); a witness in nMS refutes S=>M.

Arbitration: a concrete witness (Sat) always wins, with SMT witnesses
preferred; otherwise an SMT Unsat proof; otherwise Unknown. A Sat/Unsat
conflict between backends indicates an encoding bug and raises.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field, replace

from .ast import Expr
from .randomcheck import QUADRANTS, RandomCheckReport
from .rng import SplitMix64

PROOF_TRIALS_FLOOR = 2000  # decisive trials needed to claim unproved equivalence


class BackendConflict(Exception):
    def __init__(self, quadrant: str, witness, detail: str = ""):
        self.quadrant = quadrant
        self.witness = witness
        super().__init__(
            f"backends disagree on quadrant {quadrant}: "
            f"sat witness {witness!r} vs unsat proof. {detail}")


@dataclass(frozen=True)
class QuadrantStatus:
    status: str  # "sat" | "unsat" | "unknown"
    witness: dict | None = None
    source: str | None = None  # "random" | "smt"


@dataclass(frozen=True)
class ImplicationStatus:
    status: str  # "valid" | "refuted" | "unknown"
    proved: bool = False  # True only for an smt Unsat proof
    witness: dict | None = None


@dataclass(frozen=True)
class BackendFinding:
    source: str  # "random" | "smt"
    quadrants: dict  # quadrant -> QuadrantStatus
    s_imp_m: ImplicationStatus
    m_imp_s: ImplicationStatus
    decisive_trials: int = 0  # random backend only
    extra_witnesses: dict = field(default_factory=dict)  # quadrant -> [assignments]


def finding_from_report(r: RandomCheckReport) -> BackendFinding:
    """Map a random-check report to a finding. Random testing can witness
    satisfiability but never certify unsatisfiability."""
    quads = {}
    for q in QUADRANTS:
        if r.counts[q] > 0:
            quads[q] = QuadrantStatus("sat", witness=r.witnesses[q][0], source="random")
        else:
            quads[q] = QuadrantStatus("unknown")
    def imp(refuting: str) -> ImplicationStatus:
        if r.counts[refuting] > 0:
            return ImplicationStatus("refuted", witness=r.witnesses[refuting][0])
        if r.decisive >= PROOF_TRIALS_FLOOR:
            return ImplicationStatus("valid", proved=False)
        return ImplicationStatus("unknown")
    return BackendFinding(
        source="random",
        quadrants=quads,
        s_imp_m=imp("nMS"),  # S true, M false refutes S => M
        m_imp_s=imp("MnS"),
        decisive_trials=r.decisive,
        extra_witnesses={q: list(r.witnesses[q]) for q in QUADRANTS},
    )


def finding_from_smt(quadrant_statuses: dict) -> BackendFinding:
    """Build a finding from four SmtStatus results keyed by quadrant."""
    quads = {}
    for q in QUADRANTS:
        st = quadrant_statuses[q]
        if st.is_sat:
            quads[q] = QuadrantStatus("sat", witness=st.model, source="smt")
        elif st.is_unsat:
            quads[q] = QuadrantStatus("unsat", source="smt")
        else:
            quads[q] = QuadrantStatus("unknown")
    def imp(refuting: str) -> ImplicationStatus:
        st = quads[refuting]
        if st.status == "sat":
            return ImplicationStatus("refuted", witness=st.witness)
        if st.status == "unsat":
            return ImplicationStatus("valid", proved=True)
        return ImplicationStatus("unknown")
    return BackendFinding(
        source="smt", quadrants=quads,
        s_imp_m=imp("nMS"), m_imp_s=imp("MnS"),
    )


@dataclass(frozen=True)
class FusedResult:
    quadrants: dict  # quadrant -> QuadrantStatus
    s_imp_m: ImplicationStatus
    m_imp_s: ImplicationStatus
    decisive_trials: int
    extra_witnesses: dict
    backend_trace: dict  # quadrant -> source that decided it


def fuse(findings) -> FusedResult:
    """Merge findings; Sat (with witness) > smt Unsat > Unknown."""
    findings = list(findings)
    if not findings:
        raise ValueError("fuse requires at least one finding")
    quads = {}
    trace = {}
    extra: dict = {q: [] for q in QUADRANTS}
    for q in QUADRANTS:
        sats = [f for f in findings if f.quadrants[q].status == "sat"]
        unsats = [f for f in findings if f.quadrants[q].status == "unsat"]
        if sats and unsats:
            raise BackendConflict(q, sats[0].quadrants[q].witness)
        if sats:
            # prefer the smt witness when both backends found one
            best = next((f for f in sats if f.source == "smt"), sats[0])
            quads[q] = best.quadrants[q]
            trace[q] = best.source
        elif unsats:
            quads[q] = unsats[0].quadrants[q]
            trace[q] = unsats[0].source
        else:
            quads[q] = QuadrantStatus("unknown")
            trace[q] = "none"
        for f in findings:
            extra[q].extend(f.extra_witnesses.get(q, []))

    decisive = max((f.decisive_trials for f in findings), default=0)

    def imp_for(refuting: str, candidates) -> ImplicationStatus:
        if quads[refuting].status == "sat":
            return ImplicationStatus("refuted", witness=quads[refuting].witness)
        proved = [c for c in candidates if c.status == "valid" and c.proved]
        if proved:
            return proved[0]
        if quads[refuting].status == "unsat":
            return ImplicationStatus("valid", proved=True)
        if decisive >= PROOF_TRIALS_FLOOR:
            return ImplicationStatus("valid", proved=False)
        return ImplicationStatus("unknown")

    return FusedResult(
        quadrants=quads,
        s_imp_m=imp_for("nMS", [f.s_imp_m for f in findings]),
        m_imp_s=imp_for("MnS", [f.m_imp_s for f in findings]),
        decisive_trials=decisive,
        extra_witnesses=extra,
        backend_trace=trace,
    )


@dataclass(frozen=True)
class SideVerdict:
    """Verdict for one side (pre or post) of the comparison."""

    status: str  # Equivalent | TooStrong | TooWeak | Incomparable | Undetermined
    proved: bool
    quadrants: dict  # quadrant -> QuadrantStatus
    extra_witnesses: dict
    backend_trace: dict


def classify(fused: FusedResult) -> SideVerdict:
    sm, ms = fused.s_imp_m, fused.m_imp_s
    if sm.status == "refuted" and ms.status == "refuted":
        status, proved = "Incomparable", True
    elif sm.status == "valid" and ms.status == "refuted":
        status, proved = "TooStrong", sm.proved
    elif ms.status == "valid" and sm.status == "refuted":
        status, proved = "TooWeak", ms.proved
    elif sm.status == "valid" and ms.status == "valid":
        status, proved = "Equivalent", sm.proved and ms.proved
    else:
        status, proved = "Undetermined", False
    return SideVerdict(
        status=status, proved=proved,
        quadrants=fused.quadrants,
        extra_witnesses=fused.extra_witnesses,
        backend_trace=fused.backend_trace,
    )


@dataclass(frozen=True)
class Verdict:
    pre: SideVerdict
    post: SideVerdict


# -- serialization ---------------------------------------------------------

def _render_value(v):
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return "[" + ", ".join(_render_value(x) for x in v) + "]"
    return str(v)


def render_witness(w: dict) -> dict:
    return {name: _render_value(v) for name, v in sorted(w.items())}


def side_to_json(side: SideVerdict, include_witnesses: bool) -> dict:
    quads = {}
    for q, st in side.quadrants.items():
        entry = {"status": st.status}
        if include_witnesses and st.witness is not None:
            entry["witness"] = render_witness(st.witness)
        quads[q] = entry
    return {
        "status": side.status,
        "proved": side.proved,
        "quadrants": quads,
        "backends": side.backend_trace,
    }


def verdict_to_json(v: Verdict, include_witnesses: bool = True) -> dict:
    return {
        "pre": side_to_json(v.pre, include_witnesses),
        "post": side_to_json(v.post, include_witnesses),
    }
