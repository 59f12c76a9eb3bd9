import pytest

from specgame.config import AppConfig, load_config
from specgame.store import DuplicateId, JsonStore, NotFound


def test_put_get_round_trip(tmp_path):
    store = JsonStore(str(tmp_path))
    store.put("exercises", "ex1", {"id": "ex1", "title": "t"})
    assert store.get("exercises", "ex1") == {"id": "ex1", "title": "t"}
    assert store.list_ids("exercises") == ["ex1"]


def test_duplicate_id_rejected(tmp_path):
    store = JsonStore(str(tmp_path))
    store.put("exercises", "ex1", {})
    with pytest.raises(DuplicateId):
        store.put("exercises", "ex1", {})
    store.put("exercises", "ex1", {"v": 2}, allow_overwrite=True)
    assert store.get("exercises", "ex1") == {"v": 2}


def test_not_found(tmp_path):
    store = JsonStore(str(tmp_path))
    with pytest.raises(NotFound):
        store.get("exercises", "missing")


def test_path_traversal_rejected(tmp_path):
    store = JsonStore(str(tmp_path))
    with pytest.raises(NotFound):
        store.get("exercises", "../secrets")


def test_reload_from_disk(tmp_path):
    JsonStore(str(tmp_path)).put("submissions", "s1", {"n": 1})
    fresh = JsonStore(str(tmp_path))
    assert fresh.list_ids("submissions") == ["s1"]
    assert fresh.get("submissions", "s1") == {"n": 1}


def test_new_id_unique():
    ids = {JsonStore.new_id() for _ in range(100)}
    assert len(ids) == 100


# -- configuration -----------------------------------------------------------

def test_defaults_without_file():
    cfg = load_config(None)
    assert cfg.check.trials == 2000
    assert cfg.check.eval_config.quant_bound == 128
    assert cfg.check.eval_config.int_range == (-100, 100)
    assert cfg.check.eval_config.null_probability == 0.1
    assert cfg.game.budget == 100
    assert cfg.game.health == 10
    assert cfg.service.hint_level == "behavior"
    assert cfg.service.teacher_tokens == ("dev-token",)


def test_toml_overrides(tmp_path):
    path = tmp_path / "app.toml"
    path.write_text("""
[eval]
quant_bound = 16
int_range = [-5, 5]

[check]
trials = 100
use_smt = false

[solver]
timeout_ms = 250

[game]
budget = 80

[service]
data_dir = "/tmp/fzdata"
teacher_tokens = ["secret"]
hint_level = "full"
""")
    cfg = load_config(str(path))
    assert cfg.check.trials == 100
    assert not cfg.check.use_smt
    assert cfg.check.eval_config.quant_bound == 16
    assert cfg.check.eval_config.int_range == (-5, 5)
    assert cfg.check.solver.timeout_ms == 250
    assert cfg.game.budget == 80
    assert cfg.game.health == 10  # untouched default
    assert cfg.service.teacher_tokens == ("secret",)
    assert cfg.service.hint_level == "full"


def test_partial_file_keeps_other_defaults(tmp_path):
    path = tmp_path / "app.toml"
    path.write_text("[check]\nseed = 9\n")
    cfg = load_config(str(path))
    assert cfg.check.seed == 9
    assert cfg.check.trials == 2000
