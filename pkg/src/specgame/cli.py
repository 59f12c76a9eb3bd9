"""Command line interface.

    specgame check MODEL.spec STUDENT.spec [--trials N] [--solver PATH] [--json]
    specgame validate MODEL.spec
    specgame serve [--config FILE] [--host H] [--port P]
    specgame replay SESSION.log

Exit codes for check: 0 equivalent, 1 not equivalent, 2 undetermined,
3 input errors.
"""

from __future__ import annotations

import json
import sys
from dataclasses import replace

import click

from .checker import CheckConfig, check_specs
from .config import load_config
from .session import replay as replay_log, score_report_json
from .smt import SolverConfig
from .typecheck import load_spec
from .verdict import Verdict, verdict_to_json


def _load(path: str):
    try:
        with open(path) as f:
            source = f.read()
    except OSError as err:
        click.echo(f"error: {err}", err=True)
        sys.exit(3)
    spec, diags = load_spec(source)
    if diags:
        for d in diags:
            click.echo(f"{path}:{d}", err=True)
        sys.exit(3)
    return spec


def _verdict_table(v: Verdict) -> str:
    lines = []
    for side_name, side in (("pre", v.pre), ("post", v.post)):
        proved = "proved" if side.proved else "probabilistic"
        lines.append(f"{side_name:5} {side.status:13} ({proved})")
        quads = "  ".join(f"{q}:{st.status}" for q, st in side.quadrants.items())
        lines.append(f"      {quads}")
    return "\n".join(lines)


@click.group()
def main():
    """Specification checking and game backend."""


@main.command()
@click.argument("model_path")
@click.argument("student_path")
@click.option("--trials", type=int, default=2000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--solver", default=None, help="SMT solver binary path")
@click.option("--no-smt", is_flag=True, help="random-testing backend only")
@click.option("--json", "as_json", is_flag=True, help="machine-readable output")
def check(model_path, student_path, trials, seed, solver, no_smt, as_json):
    """Compare STUDENT against MODEL and print the verdict."""
    model = _load(model_path)
    student = _load(student_path)
    if student.signature != model.signature:
        click.echo("error: signatures differ", err=True)
        sys.exit(3)
    cfg = CheckConfig(trials=trials, seed=seed, use_smt=not no_smt,
                      solver=SolverConfig(path=solver))
    verdict = check_specs(model, student, cfg)
    if as_json:
        click.echo(json.dumps(verdict_to_json(verdict), indent=2, sort_keys=True))
    else:
        click.echo(_verdict_table(verdict))
    statuses = {verdict.pre.status, verdict.post.status}
    if statuses == {"Equivalent"}:
        sys.exit(0)
    if "Undetermined" in statuses and statuses <= {"Undetermined", "Equivalent"}:
        sys.exit(2)
    sys.exit(1)


@main.command()
@click.argument("model_path")
def validate(model_path):
    """Parse, typecheck, and self-check a model specification."""
    spec = _load(model_path)
    verdict = check_specs(spec, spec, CheckConfig(trials=500))
    if verdict.pre.status == "Equivalent" and verdict.post.status == "Equivalent":
        click.echo(f"{model_path}: ok "
                   f"({len(spec.pres)} pre, {len(spec.posts)} post clauses)")
        sys.exit(0)
    click.echo(f"{model_path}: self-check failed", err=True)
    click.echo(_verdict_table(verdict), err=True)
    sys.exit(1)


@main.command()
@click.argument("log_path")
def replay(log_path):
    """Re-simulate a recorded session action log and print the score."""
    try:
        with open(log_path) as f:
            lines = f.read().splitlines()
    except OSError as err:
        click.echo(f"error: {err}", err=True)
        sys.exit(3)
    try:
        report = replay_log(lines)
    except Exception as err:
        click.echo(f"error: {err}", err=True)
        sys.exit(3)
    click.echo(json.dumps(score_report_json(report), indent=2, sort_keys=True))


@main.command()
@click.option("--config", "config_path", default=None, help="TOML config file")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(config_path, host, port):
    """Run the HTTP/WebSocket service."""
    import uvicorn

    from .service import create_app

    app = create_app(load_config(config_path))
    uvicorn.run(app, host=host, port=port, log_level="info")


if __name__ == "__main__":
    main()
