"""TOML configuration for the service and checking backends.

Every tunable defaults to the documented value; a config file overrides
keys selectively. Example:

    [eval]
    quant_bound = 128
    int_range = [-100, 100]
    real_range = [-100.0, 100.0]
    max_array_len = 8
    null_probability = 0.1
    real_eq_epsilon = 1e-9

    [check]
    trials = 2000
    seed = 0
    use_smt = true

    [solver]
    path = "z3"
    timeout_ms = 5000
    extra_args = []

    [game]
    budget = 100
    health = 10

    [service]
    data_dir = "./data"
    teacher_tokens = ["dev-token"]
    hint_level = "behavior"      # "behavior" | "full"
    snapshot_every = 1
    max_concurrent_solvers = 4
"""

from __future__ import annotations

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, field

from .evaluator import EvalConfig
from .game import GameConfig
from .checker import CheckConfig
from .smt import SolverConfig


@dataclass(frozen=True)
class ServiceConfig:
    data_dir: str = "./data"
    teacher_tokens: tuple = ("dev-token",)
    hint_level: str = "behavior"
    snapshot_every: int = 1
    max_concurrent_solvers: int = 4


@dataclass(frozen=True)
class AppConfig:
    check: CheckConfig = CheckConfig()
    game: GameConfig = GameConfig()
    service: ServiceConfig = ServiceConfig()


def _eval_config(d: dict) -> EvalConfig:
    return EvalConfig(
        quant_bound=d.get("quant_bound", 128),
        int_range=tuple(d.get("int_range", (-100, 100))),
        real_range=tuple(d.get("real_range", (-100.0, 100.0))),
        max_array_len=d.get("max_array_len", 8),
        null_probability=d.get("null_probability", 0.1),
        real_eq_epsilon=d.get("real_eq_epsilon", 1e-9),
    )


def load_config(path: str | None = None) -> AppConfig:
    raw: dict = {}
    if path is not None:
        with open(path, "rb") as f:
            raw = tomllib.load(f)
    ev = _eval_config(raw.get("eval", {}))
    solver_raw = raw.get("solver", {})
    solver = SolverConfig(
        path=solver_raw.get("path"),
        timeout_ms=solver_raw.get("timeoutMs", solver_raw.get("timeout_ms", 5000)),
        extra_args=tuple(solver_raw.get("extraArgs", solver_raw.get("extra_args", ()))),
    )
    check_raw = raw.get("check", {})
    check = CheckConfig(
        eval_config=ev,
        trials=check_raw.get("trials", 2000),
        seed=check_raw.get("seed", 0),
        use_smt=check_raw.get("use_smt", True),
        solver=solver,
    )
    game_raw = raw.get("game", {})
    game = GameConfig(**{k: game_raw[k] for k in (
        "budget", "health", "blob_hp", "blob_speed", "spawn_spacing",
        "health_loss_red", "reward_red_destroyed", "penalty_blue_destroyed",
        "reward_blue_passed") if k in game_raw})
    svc_raw = raw.get("service", {})
    service = ServiceConfig(
        data_dir=svc_raw.get("data_dir", "./data"),
        teacher_tokens=tuple(svc_raw.get("teacher_tokens", ("dev-token",))),
        hint_level=svc_raw.get("hint_level", "behavior"),
        snapshot_every=svc_raw.get("snapshot_every", 1),
        max_concurrent_solvers=svc_raw.get("max_concurrent_solvers", 4),
    )
    return AppConfig(check=check, game=game, service=service)
