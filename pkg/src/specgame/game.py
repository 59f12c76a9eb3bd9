"""Deterministic tower-defense simulation.

Two lanes cross the board: input lane toward the CPU and output lane away
from it, each with a scanner. Blobs carry concrete witness assignments;
red blobs are corrupt data (they violate the teacher's formula), marked
blobs are those the student's scanner flags. Towers only ever shoot
marked blobs. The whole state machine is a pure function of (plan, board,
config, seed, action log): replays reproduce scores bit for bit.

All numeric tuning lives in GameConfig; the mechanics make no assumptions
about the numbers.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .blobs import BlobEntry, BlobPlan
from .rng import SplitMix64


@dataclass(frozen=True)
class Board:
    input_path: tuple  # waypoints, grid units
    output_path: tuple
    input_scanner: float  # path parameter in [0, 1]
    output_scanner: float
    buildable_cells: frozenset  # of (x, y)

    def path_length(self, side: str) -> float:
        pts = self.input_path if side == "input" else self.output_path
        total = 0.0
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            total += ((x1 - x0) ** 2 + (y1 - y0) ** 2) ** 0.5
        return total

    def point_at(self, side: str, t: float):
        """Board coordinates of path parameter t."""
        pts = self.input_path if side == "input" else self.output_path
        target = max(0.0, min(1.0, t)) * self.path_length(side)
        walked = 0.0
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            seg = ((x1 - x0) ** 2 + (y1 - y0) ** 2) ** 0.5
            if walked + seg >= target and seg > 0:
                f = (target - walked) / seg
                return (x0 + f * (x1 - x0), y0 + f * (y1 - y0))
            walked += seg
        return pts[-1]


def default_board() -> Board:
    # input lane runs left to the CPU at x=8, output lane continues right
    input_path = ((0.0, 4.0), (8.0, 4.0))
    output_path = ((8.0, 4.0), (16.0, 4.0))
    cells = {(x, y) for x in range(17) for y in (2, 3, 5, 6)}
    return Board(input_path, output_path, 0.35, 0.35, frozenset(cells))


@dataclass(frozen=True)
class TowerSpec:
    cost: int
    damage: int  # slow factor scaled by 100 for the slower kind
    range: float  # grid units
    cooldown: int  # ticks between shots


@dataclass(frozen=True)
class GameConfig:
    budget: int = 100
    health: int = 10
    blob_hp: int = 3
    blob_speed: float = 0.2  # grid units per tick
    spawn_spacing: int = 12  # ticks between spawns per lane
    health_loss_red: int = 1  # H_red
    reward_red_destroyed: int = 10  # R_red
    penalty_blue_destroyed: int = 15  # P_blue
    reward_blue_passed: int = 5  # R_pass
    towers: dict = field(default_factory=lambda: {
        "zapper": TowerSpec(cost=40, damage=2, range=2.5, cooldown=5),
        "splash": TowerSpec(cost=60, damage=1, range=2.0, cooldown=8),
        "slower": TowerSpec(cost=30, damage=50, range=2.0, cooldown=1),
    })


@dataclass(frozen=True)
class Blob:
    id: int
    side: str  # input | output
    color: str  # red | blue
    will_mark: bool  # scanner marks it when crossed
    marked: bool
    witness: dict
    position: float  # path parameter [0, 1]
    speed: float  # path parameter per tick
    hp: int
    slow_until: int = -1


@dataclass(frozen=True)
class Tower:
    id: int
    kind: str
    cell: tuple
    cooldown_until: int = 0


@dataclass(frozen=True)
class SpawnItem:
    tick: int
    side: str
    kind: str
    witness: dict
    mandatory: bool


@dataclass(frozen=True)
class GameState:
    tick_count: int
    board: Board
    config: GameConfig
    blobs: tuple  # of Blob, in flight
    towers: tuple  # of Tower
    budget: int
    health: int
    score: int
    spawn_queue: tuple  # of SpawnItem, sorted by tick
    next_blob_id: int
    phase: str  # building | wave | ended
    outcomes: dict  # kind -> {"destroyed": n, "reachedEnd": n}
    rng_seed: int


class PlacementError(Exception):
    pass


class InsufficientBudget(PlacementError):
    pass


class CellOccupied(PlacementError):
    pass


class NotBuildable(PlacementError):
    pass


def _kind_color(kind: str) -> str:
    return "red" if kind.startswith("red") else "blue"


def _kind_marked(kind: str) -> bool:
    return kind in ("redMarked", "blueMarked")


def new_session(plan: BlobPlan, board: Board = None,
                cfg: GameConfig = GameConfig(), seed: int = 0) -> GameState:
    """Realize a blob plan as a spawn schedule; mandatory blobs spawn first,
    fillers follow in seeded shuffle order."""
    board = board or default_board()
    rng = SplitMix64(seed)
    queue = []
    per_side_tick = {"input": 0, "output": 0}
    mandatory = [e for e in plan.entries if e.mandatory]
    fillers = [e for e in plan.entries if not e.mandatory]
    rng.shuffle(fillers)
    for entry in mandatory + fillers:
        t = per_side_tick[entry.side]
        per_side_tick[entry.side] += cfg.spawn_spacing
        queue.append(SpawnItem(t, entry.side, entry.kind, entry.witness,
                               entry.mandatory))
    queue.sort(key=lambda it: (it.tick, it.side))
    outcomes = {k: {"destroyed": 0, "reachedEnd": 0}
                for k in ("redUnmarked", "redMarked", "blueUnmarked", "blueMarked")}
    return GameState(
        tick_count=0, board=board, config=cfg,
        blobs=(), towers=(), budget=cfg.budget, health=cfg.health, score=0,
        spawn_queue=tuple(queue), next_blob_id=0,
        phase="building" if queue else "ended",
        outcomes=outcomes, rng_seed=seed,
    )


def place_tower(state: GameState, kind: str, cell) -> GameState:
    if state.phase not in ("building", "wave"):
        raise PlacementError("session has ended")
    spec = state.config.towers.get(kind)
    if spec is None:
        raise PlacementError(f"unknown tower kind {kind!r}")
    cell = tuple(cell)
    if cell not in state.board.buildable_cells:
        raise NotBuildable(f"cell {cell} is not buildable")
    if any(t.cell == cell for t in state.towers):
        raise CellOccupied(f"cell {cell} already has a tower")
    if spec.cost > state.budget:
        raise InsufficientBudget(f"{kind} costs {spec.cost}, budget {state.budget}")
    tower = Tower(id=len(state.towers), kind=kind, cell=cell)
    return replace(state, towers=state.towers + (tower,),
                   budget=state.budget - spec.cost)


def start_wave(state: GameState) -> GameState:
    if state.phase != "building":
        raise PlacementError(f"cannot start wave in phase {state.phase!r}")
    return replace(state, phase="wave")


def _blob_kind(b: Blob) -> str:
    return b.color + ("Marked" if b.will_mark else "Unmarked")


def tick(state: GameState) -> GameState:
    """Advance the wave by one fixed timestep."""
    if state.phase != "wave":
        return state
    cfg = state.config
    board = state.board
    t = state.tick_count

    # spawn
    blobs = list(state.blobs)
    remaining = []
    next_id = state.next_blob_id
    for item in state.spawn_queue:
        if item.tick <= t:
            plen = board.path_length(item.side)
            blobs.append(Blob(
                id=next_id, side=item.side, color=_kind_color(item.kind),
                will_mark=_kind_marked(item.kind), marked=False,
                witness=item.witness, position=0.0,
                speed=cfg.blob_speed / plen, hp=cfg.blob_hp,
            ))
            next_id += 1
        else:
            remaining.append(item)

    # move + scanner marking
    moved = []
    for b in blobs:
        speed = b.speed
        if b.slow_until > t:
            speed *= 0.5
        pos = b.position + speed
        marked = b.marked
        scanner = (board.input_scanner if b.side == "input"
                   else board.output_scanner)
        if not marked and pos >= scanner and b.will_mark:
            marked = True
        moved.append(replace(b, position=pos, marked=marked))
    blobs = moved

    # towers fire at the marked blob furthest along its lane (ties: lowest id)
    towers = list(state.towers)
    score = state.score
    new_towers = []
    for tower in towers:
        spec = cfg.towers[tower.kind]
        if tower.cooldown_until > t:
            new_towers.append(tower)
            continue
        in_range = []
        for b in blobs:
            if not b.marked or b.hp <= 0:
                continue
            bx, by = board.point_at(b.side, b.position)
            dx, dy = bx - tower.cell[0], by - tower.cell[1]
            if dx * dx + dy * dy <= spec.range ** 2:
                in_range.append(b)
        if not in_range:
            new_towers.append(tower)
            continue
        in_range.sort(key=lambda b: (-b.position, b.id))
        if tower.kind == "splash":
            targets = in_range
        else:
            targets = [in_range[0]]
        for target in targets:
            idx = next(i for i, b in enumerate(blobs) if b.id == target.id)
            if tower.kind == "slower":
                blobs[idx] = replace(blobs[idx], slow_until=t + 10)
            else:
                blobs[idx] = replace(blobs[idx], hp=blobs[idx].hp - spec.damage)
        new_towers.append(replace(tower, cooldown_until=t + spec.cooldown))
    towers = new_towers

    # resolve deaths and lane ends
    health = state.health
    outcomes = {k: dict(v) for k, v in state.outcomes.items()}
    surviving = []
    for b in blobs:
        if b.hp <= 0:
            outcomes[_blob_kind(b)]["destroyed"] += 1
            if b.color == "red":
                score += cfg.reward_red_destroyed
            else:
                score -= cfg.penalty_blue_destroyed
            continue
        if b.position >= 1.0:
            outcomes[_blob_kind(b)]["reachedEnd"] += 1
            if b.color == "red":
                health = max(0, health - cfg.health_loss_red)
            else:
                score += cfg.reward_blue_passed
            continue
        surviving.append(b)

    phase = "wave"
    if health <= 0 or (not remaining and not surviving):
        phase = "ended"

    return replace(
        state,
        tick_count=t + 1,
        blobs=tuple(surviving),
        towers=tuple(towers),
        health=health,
        score=score,
        spawn_queue=tuple(remaining),
        next_blob_id=next_id,
        phase=phase,
        outcomes=outcomes,
    )


def run_to_end(state: GameState, max_ticks: int = 100_000) -> GameState:
    if state.phase == "building":
        state = start_wave(state)
    ticks = 0
    while state.phase == "wave" and ticks < max_ticks:
        state = tick(state)
        ticks += 1
    return state


@dataclass(frozen=True)
class ScoreReport:
    score: int
    health: int
    outcomes: dict
    max_score: int


def max_achievable_score(state: GameState) -> int:
    """Best score over all blob outcomes: every marked red destroyed, every
    blue allowed to pass, unmarked red blobs are untargetable (no points)."""
    cfg = state.config
    best = 0
    counts = state.outcomes
    for kind, o in counts.items():
        n = o["destroyed"] + o["reachedEnd"]
        if kind == "redMarked":
            best += n * cfg.reward_red_destroyed
        elif kind in ("blueUnmarked", "blueMarked"):
            best += n * cfg.reward_blue_passed
        # redUnmarked contributes nothing: towers never target unmarked blobs
    return best


def final_score(state: GameState) -> ScoreReport:
    if state.phase != "ended":
        raise ValueError("session still running")
    return ScoreReport(
        score=state.score, health=state.health,
        outcomes=state.outcomes, max_score=max_achievable_score(state),
    )
