"""External SMT solver process driver.

One solver process per query script; a script may carry several check-sat
commands bracketed by push/pop (used to amortize process startup when
deciding all four quadrants of a specification pair). The protocol is
plain SMT-LIB v2 text: the script is written to a temp file, the solver
runs with a wall-clock timeout, stdout is parsed into statuses + models.
"""

from __future__ import annotations

import os
import shutil
import subprocess
import tempfile
from dataclasses import dataclass, field

from ..ast import Expr, Signature, VOID
from .encoder import (
    UnsupportedConstruct,
    _PREAMBLE,
    assertion_for,
    assertion_for_parts,
    declarations_for,
)
from .model import assignment_from_model, parse_sexprs, read_model, tokenize_sexpr


class SolverProcessError(Exception):
    pass


@dataclass(frozen=True)
class SolverConfig:
    path: str | None = None  # None: discover via env / PATH
    timeout_ms: int = 5000
    extra_args: tuple = ()

    def resolve_path(self) -> str:
        p = self.path or find_solver()
        if not p:
            raise SolverProcessError(
                "no SMT solver configured and none found on PATH")
        return p


@dataclass(frozen=True)
class SmtStatus:
    status: str  # "sat" | "unsat" | "unknown"
    model: dict | None = None  # assignment, when sat and a model was parsed
    reason: str | None = None  # timeout | solverUnknown | unsupported | processError

    @property
    def is_sat(self) -> bool:
        return self.status == "sat"

    @property
    def is_unsat(self) -> bool:
        return self.status == "unsat"


UNKNOWN_TIMEOUT = SmtStatus("unknown", reason="timeout")


def find_solver() -> str | None:
    """Locate a solver binary: $SPECGAME_SOLVER, then z3 / cvc5 on PATH."""
    env = os.environ.get("SPECGAME_SOLVER")
    if env and shutil.which(env):
        return shutil.which(env)
    for name in ("z3", "cvc5", "cvc4"):
        p = shutil.which(name)
        if p:
            return p
    return None


def _run_script(script: str, cfg: SolverConfig) -> str:
    path = cfg.resolve_path()
    with tempfile.NamedTemporaryFile("w", suffix=".smt2", delete=False) as f:
        f.write(script)
        fname = f.name
    try:
        try:
            proc = subprocess.run(
                [path, *cfg.extra_args, fname],
                capture_output=True, text=True,
                timeout=max(cfg.timeout_ms, 0) / 1000.0,
            )
        except subprocess.TimeoutExpired:
            raise TimeoutError
        except OSError as err:
            raise SolverProcessError(f"cannot run solver {path!r}: {err}")
        return proc.stdout
    finally:
        os.unlink(fname)


def _parse_responses(output: str, n_queries: int):
    """Split solver output into per-query (status, model-sexpr-or-None)."""
    tokens = tokenize_sexpr(output)
    results = []
    i = 0
    # walk tokens: bare status words at depth 0, s-exprs after sat statuses
    exprs = parse_sexprs(tokens)
    idx = 0
    while idx < len(exprs) and len(results) < n_queries:
        item = exprs[idx]
        idx += 1
        if item in ("sat", "unsat", "unknown"):
            model = None
            if idx < len(exprs) and isinstance(exprs[idx], list):
                nxt = exprs[idx]
                if nxt and nxt[0] == "error":
                    idx += 1  # get-model after unsat/unknown
                elif item == "sat":
                    model = nxt
                    idx += 1
            results.append((item, model))
        elif isinstance(item, list) and item and item[0] == "error":
            continue
        # anything else (echo noise) is skipped
    if len(results) != n_queries:
        raise SolverProcessError(
            f"expected {n_queries} responses, parsed {len(results)}; output was:\n"
            + output[:2000])
    return results


def _types_of(sig: Signature, need_retval: bool) -> dict:
    types = dict(sig.params)
    if need_retval and sig.return_type != VOID:
        types["retval"] = sig.return_type
    return types


def _run_assertions(
    assertions,
    sig: Signature,
    cfg: SolverConfig,
    need_retval: bool,
    symbols: dict,
    decls,
    background,
    get_models: bool = True,
):
    """Decide several prebuilt assertions in one solver process (push/pop).

    An assertion of None marks an unencodable query; it yields
    Unknown(unsupported) without touching the solver."""
    lines = ["(set-logic ALL)", _PREAMBLE.rstrip(), *decls, *background]
    live = []  # indices of encodable queries
    statuses: dict = {}
    for i, assertion in enumerate(assertions):
        if assertion is None:
            statuses[i] = SmtStatus("unknown", reason="unsupported")
            continue
        live.append(i)
        lines.append("(push 1)")
        lines.append(assertion)
        lines.append("(check-sat)")
        if get_models:
            lines.append("(get-model)")
        lines.append("(pop 1)")
    if live:
        script = "\n".join(lines) + "\n"
        try:
            output = _run_script(script, cfg)
        except TimeoutError:
            for i in live:
                statuses[i] = UNKNOWN_TIMEOUT
            return [statuses[i] for i in range(len(assertions))]
        except SolverProcessError:
            raise
        try:
            responses = _parse_responses(output, len(live))
        except Exception as err:
            raise SolverProcessError(f"unparseable solver output: {err}")
        types = _types_of(sig, need_retval)
        for i, (status, model_sexpr) in zip(live, responses):
            if status == "sat":
                model = None
                if model_sexpr is not None:
                    try:
                        model = assignment_from_model(
                            read_model(model_sexpr), symbols, types)
                    except Exception:
                        model = None  # sat stands even if the model resists parsing
                statuses[i] = SmtStatus("sat", model=model)
            elif status == "unsat":
                statuses[i] = SmtStatus("unsat")
            else:
                statuses[i] = SmtStatus("unknown", reason="solverUnknown")
    return [statuses[i] for i in range(len(assertions))]


def check_many(
    exprs,
    sig: Signature,
    cfg: SolverConfig = SolverConfig(),
    need_retval: bool = False,
    get_models: bool = True,
):
    """Decide satisfiability of several formulas over one signature.

    All queries share a single solver process via push/pop. Returns a list
    of SmtStatus, one per input formula."""
    symbols, decls, background = declarations_for(sig, need_retval)
    assertions = []
    for e in exprs:
        try:
            assertions.append(assertion_for(e, symbols))
        except UnsupportedConstruct:
            assertions.append(None)
    return _run_assertions(assertions, sig, cfg, need_retval,
                           symbols, decls, background, get_models)


QUADRANT_PARTS = {
    "MS": (True, True),
    "MnS": (True, False),
    "nMS": (False, True),
    "nMnS": (False, False),
}


def check_quadrants(
    m: Expr,
    s: Expr,
    sig: Signature,
    cfg: SolverConfig = SolverConfig(),
    need_retval: bool = False,
    assume: Expr | None = None,
) -> dict:
    """Decide the four quadrants of an (m, s) pair in one solver process.

    Quadrant membership is defined over effective truth (Undefined counts
    as False), so the negative sides use the classical negation of the
    encoded formula rather than an AST-level `!`. Returns quadrant ->
    SmtStatus."""
    symbols, decls, background = declarations_for(sig, need_retval)
    assertions = []
    for m_pos, s_pos in QUADRANT_PARTS.values():
        parts = [(m, m_pos), (s, s_pos)]
        if assume is not None:
            parts.insert(0, (assume, True))
        try:
            assertions.append(assertion_for_parts(parts, symbols))
        except UnsupportedConstruct:
            assertions.append(None)
    statuses = _run_assertions(assertions, sig, cfg, need_retval,
                               symbols, decls, background)
    return dict(zip(QUADRANT_PARTS, statuses))


def check_sat(e: Expr, sig: Signature, cfg: SolverConfig = SolverConfig(),
              need_retval: bool = False) -> SmtStatus:
    """Satisfiability of a single typechecked Bool formula."""
    if cfg.timeout_ms <= 0:
        return UNKNOWN_TIMEOUT
    return check_many([e], sig, cfg, need_retval)[0]


def check_implication(p: Expr, q: Expr, sig: Signature,
                      cfg: SolverConfig = SolverConfig(),
                      need_retval: bool = False) -> SmtStatus:
    """Check p => q by deciding p && not-effectively-q; Unsat means the
    implication is valid over effective truth."""
    if cfg.timeout_ms <= 0:
        return UNKNOWN_TIMEOUT
    symbols, decls, background = declarations_for(sig, need_retval)
    try:
        assertion = assertion_for_parts([(p, True), (q, False)], symbols)
    except UnsupportedConstruct:
        return SmtStatus("unknown", reason="unsupported")
    return _run_assertions([assertion], sig, cfg, need_retval,
                           symbols, decls, background)[0]
