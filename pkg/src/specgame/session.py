"""Live game sessions: snapshots, action application, logging, replay.

A session owns one GameState. Actions are applied strictly between ticks
in arrival order; every applied action is appended to the log so a replay
of (plan, seed, log) reproduces the final report exactly.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field

from .blobs import BlobPlan, plan_from_json, plan_to_json
from .game import (
    Board,
    GameConfig,
    GameState,
    PlacementError,
    ScoreReport,
    default_board,
    final_score,
    new_session,
    place_tower,
    start_wave,
    tick,
)


def snapshot(state: GameState) -> dict:
    """Render-relevant view of the state. Never includes witnesses or any
    formula data."""
    return {
        "type": "snapshot",
        "tick": state.tick_count,
        "phase": state.phase,
        "budget": state.budget,
        "health": state.health,
        "score": state.score,
        "pending": len(state.spawn_queue),
        "blobs": [
            {"id": b.id, "side": b.side, "color": b.color, "marked": b.marked,
             "position": round(b.position, 6)}
            for b in state.blobs
        ],
        "towers": [
            {"id": t.id, "kind": t.kind, "cell": list(t.cell)} for t in state.towers
        ],
    }


def board_info(board: Board, cfg: GameConfig) -> dict:
    return {
        "type": "board",
        "inputPath": [list(p) for p in board.input_path],
        "outputPath": [list(p) for p in board.output_path],
        "inputScanner": board.input_scanner,
        "outputScanner": board.output_scanner,
        "buildableCells": sorted(list(c) for c in board.buildable_cells),
        "towers": {k: {"cost": t.cost, "range": t.range}
                   for k, t in cfg.towers.items()},
    }


def score_report_json(report: ScoreReport) -> dict:
    return {
        "type": "scoreReport",
        "score": report.score,
        "health": report.health,
        "maxScore": report.max_score,
        "outcomes": report.outcomes,
    }


class Session:
    def __init__(self, session_id: str, plan: BlobPlan,
                 cfg: GameConfig = GameConfig(), seed: int = 0,
                 board: Board = None):
        self.id = session_id
        self.plan = plan
        self.seed = seed
        self.cfg = cfg
        self.board = board or default_board()
        self.state = new_session(plan, self.board, cfg, seed)
        self.actions: list = []  # applied {tick, action, params} entries
        self._lock = threading.Lock()

    def apply(self, action: str, params: dict) -> GameState:
        """Apply a client action; raises PlacementError on invalid input."""
        with self._lock:
            if action == "placeTower":
                st = place_tower(self.state, params.get("kind", ""),
                                 tuple(params.get("cell", ())))
            elif action == "startWave":
                st = start_wave(self.state)
            else:
                raise PlacementError(f"unknown action {action!r}")
            self.state = st
            self.actions.append({"tick": st.tick_count, "action": action,
                                 "params": params})
            return st

    def advance(self) -> GameState:
        with self._lock:
            if self.state.phase == "wave":
                self.state = tick(self.state)
            return self.state

    @property
    def ended(self) -> bool:
        return self.state.phase == "ended"

    def report(self) -> ScoreReport:
        return final_score(self.state)

    def log_lines(self):
        """Serialized session: header line then one line per action."""
        header = {"type": "session", "plan": plan_to_json(self.plan),
                  "seed": self.seed}
        yield json.dumps(header)
        for a in self.actions:
            yield json.dumps(a)


def replay(lines, cfg: GameConfig = GameConfig(), board: Board = None) -> ScoreReport:
    """Re-simulate a recorded action log; returns the final ScoreReport."""
    it = iter(lines)
    header = json.loads(next(it))
    if header.get("type") != "session":
        raise ValueError("replay file must start with a session header line")
    plan = plan_from_json(header["plan"])
    actions = [json.loads(line) for line in it if line.strip()]
    state = new_session(plan, board or default_board(), cfg, header.get("seed", 0))
    pending = sorted(actions, key=lambda a: a["tick"])
    i = 0
    # building-phase actions first (tick 0 before the wave starts)
    while i < len(pending) and state.phase == "building":
        a = pending[i]
        if a["action"] == "startWave":
            state = start_wave(state)
        else:
            state = place_tower(state, a["params"].get("kind", ""),
                                tuple(a["params"].get("cell", ())))
        i += 1
    if state.phase == "building":
        state = start_wave(state)
    guard = 0
    while state.phase == "wave" and guard < 1_000_000:
        while i < len(pending) and pending[i]["tick"] <= state.tick_count:
            a = pending[i]
            if a["action"] == "placeTower":
                state = place_tower(state, a["params"].get("kind", ""),
                                    tuple(a["params"].get("cell", ())))
            i += 1
        state = tick(state)
        guard += 1
    return final_score(state)
