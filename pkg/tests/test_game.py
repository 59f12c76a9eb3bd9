import pytest

from specgame.blobs import BlobEntry, BlobPlan
from specgame.game import (
    CellOccupied,
    GameConfig,
    InsufficientBudget,
    NotBuildable,
    PlacementError,
    default_board,
    final_score,
    max_achievable_score,
    new_session,
    place_tower,
    run_to_end,
    start_wave,
    tick,
)


def plan_of(*entries):
    return BlobPlan(entries=tuple(entries), mix={})


def one_blob(kind, side="input", mandatory=True):
    return BlobEntry(kind, {"x": 0}, side, mandatory)


def test_mandatory_blob_in_spawn_queue():
    plan = plan_of(one_blob("redUnmarked"),
                   BlobEntry("blueUnmarked", {}, "input", False),
                   BlobEntry("blueUnmarked", {}, "input", False))
    st = new_session(plan, seed=0)
    mand = [it for it in st.spawn_queue if it.mandatory]
    assert len(mand) == 1
    assert mand[0].kind == "redUnmarked"
    assert mand[0].tick == 0  # mandatory blobs spawn first


def test_empty_plan_ends_immediately():
    st = new_session(plan_of(), seed=0)
    assert st.phase == "ended"
    assert final_score(st).score == 0


def test_spawn_queue_deterministic():
    entries = [BlobEntry("blueUnmarked", {"n": i}, "input", False) for i in range(8)]
    p = plan_of(*entries)
    assert new_session(p, seed=4).spawn_queue == new_session(p, seed=4).spawn_queue
    assert new_session(p, seed=4).spawn_queue != new_session(p, seed=5).spawn_queue


def test_lanes_spawn_independently():
    plan = plan_of(one_blob("blueUnmarked", "input"),
                   one_blob("blueUnmarked", "output"))
    st = new_session(plan, seed=0)
    assert [it.tick for it in st.spawn_queue] == [0, 0]


def test_place_tower_budget_arithmetic():
    st = new_session(plan_of(one_blob("redMarked")), seed=0)
    st = place_tower(st, "zapper", (4, 3))
    assert st.budget == 60
    assert len(st.towers) == 1 and st.towers[0].kind == "zapper"


def test_place_tower_errors():
    st = new_session(plan_of(one_blob("redMarked")), seed=0)
    st = place_tower(st, "zapper", (4, 3))
    with pytest.raises(CellOccupied):
        place_tower(st, "slower", (4, 3))
    with pytest.raises(NotBuildable):
        place_tower(st, "slower", (4, 4))  # lane cell
    with pytest.raises(InsufficientBudget):
        place_tower(place_tower(st, "slower", (5, 3)), "zapper", (6, 3))
    with pytest.raises(PlacementError):
        place_tower(st, "laser", (5, 3))


def test_start_wave_only_from_building():
    st = new_session(plan_of(one_blob("redMarked")), seed=0)
    st = start_wave(st)
    with pytest.raises(PlacementError):
        start_wave(st)


def test_zapper_destroys_marked_red():
    cfg = GameConfig()
    st = new_session(plan_of(one_blob("redMarked")), cfg=cfg, seed=0)
    st = place_tower(st, "zapper", (4, 3))  # range 2.5 covers the scanner area
    end = run_to_end(st)
    assert end.outcomes["redMarked"]["destroyed"] == 1
    assert end.score == cfg.reward_red_destroyed
    assert end.health == cfg.health


def test_unmarked_red_cannot_be_shot_and_costs_health():
    cfg = GameConfig()
    st = new_session(plan_of(one_blob("redUnmarked")), cfg=cfg, seed=0)
    st = place_tower(st, "zapper", (4, 3))
    end = run_to_end(st)
    assert end.outcomes["redUnmarked"]["reachedEnd"] == 1
    assert end.health == cfg.health - cfg.health_loss_red
    assert end.score == 0


def test_blue_passing_scores_reward():
    cfg = GameConfig()
    st = new_session(plan_of(one_blob("blueUnmarked")), cfg=cfg, seed=0)
    end = run_to_end(st)
    assert end.outcomes["blueUnmarked"]["reachedEnd"] == 1
    assert end.score == cfg.reward_blue_passed
    assert end.health == cfg.health


def test_destroying_marked_blue_is_penalized():
    cfg = GameConfig()
    st = new_session(plan_of(one_blob("blueMarked")), cfg=cfg, seed=0)
    st = place_tower(st, "zapper", (4, 3))
    end = run_to_end(st)
    assert end.outcomes["blueMarked"]["destroyed"] == 1
    assert end.score == -cfg.penalty_blue_destroyed


def test_no_towers_red_always_reaches_cpu():
    st = new_session(plan_of(one_blob("redMarked"), one_blob("redUnmarked")), seed=0)
    end = run_to_end(st)
    assert end.health < end.config.health


def test_marking_happens_at_scanner():
    st = start_wave(new_session(plan_of(one_blob("redMarked")), seed=0))
    st = tick(st)
    assert not st.blobs[0].marked  # before the scanner
    scanner = st.board.input_scanner
    while st.blobs and st.blobs[0].position < scanner:
        st = tick(st)
    assert st.blobs[0].marked


def test_slower_halves_speed():
    plain = run_to_end(new_session(plan_of(one_blob("blueMarked")), seed=0))
    slowed_start = place_tower(new_session(plan_of(one_blob("blueMarked")), seed=0),
                               "slower", (4, 3))
    slowed = run_to_end(slowed_start)
    assert slowed.tick_count > plain.tick_count


def test_splash_hits_all_marked_in_range():
    plan = plan_of(one_blob("redMarked"), one_blob("redMarked"))
    st = new_session(plan, cfg=GameConfig(blob_hp=1), seed=0)
    st = place_tower(st, "splash", (4, 3))
    end = run_to_end(st)
    assert end.outcomes["redMarked"]["destroyed"] == 2


def test_blob_conservation():
    entries = [one_blob(k, side, False)
               for k in ("redMarked", "redUnmarked", "blueMarked", "blueUnmarked")
               for side in ("input", "output")]
    st = new_session(plan_of(*entries), seed=3)
    st = place_tower(st, "zapper", (4, 3))
    end = run_to_end(st)
    total = sum(o["destroyed"] + o["reachedEnd"] for o in end.outcomes.values())
    assert total == len(entries)
    assert not end.blobs and not end.spawn_queue


def test_run_to_end_deterministic():
    entries = [one_blob(k, "input", False)
               for k in ("redMarked", "blueUnmarked", "redMarked", "blueMarked")]
    def run():
        st = new_session(plan_of(*entries), seed=9)
        st = place_tower(st, "zapper", (3, 3))
        st = place_tower(st, "slower", (5, 5))
        return run_to_end(st)
    a, b = run(), run()
    assert final_score(a) == final_score(b)
    assert a.tick_count == b.tick_count


def test_max_achievable_score():
    cfg = GameConfig()
    plan = plan_of(one_blob("redMarked"), one_blob("redUnmarked"),
                   one_blob("blueUnmarked"))
    end = run_to_end(new_session(plan, cfg=cfg, seed=0))
    best = max_achievable_score(end)
    # marked red worth destroying, blue worth passing, unmarked red worth nothing
    assert best == cfg.reward_red_destroyed + cfg.reward_blue_passed
    assert end.score <= best


def test_final_score_requires_ended():
    st = new_session(plan_of(one_blob("redMarked")), seed=0)
    with pytest.raises(ValueError):
        final_score(st)


def test_health_exhaustion_ends_session():
    cfg = GameConfig(health=1)
    plan = plan_of(one_blob("redUnmarked"), one_blob("redUnmarked"))
    end = run_to_end(new_session(plan, cfg=cfg, seed=0))
    assert end.phase == "ended"
    assert end.health == 0
