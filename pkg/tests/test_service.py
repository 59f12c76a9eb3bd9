import json

import pytest
from fastapi.testclient import TestClient

from specgame.astdoc import serialize_spec
from specgame.checker import CheckConfig
from specgame.config import AppConfig, ServiceConfig
from specgame.evaluator import EvalConfig
from specgame.service import create_app
from specgame.store import JsonStore
from specgame.typecheck import load_spec

from conftest import GETMAX_SRC, GETMAX_STRONG_SRC, GETMAX_WEAK_SRC

AUTH = {"Authorization": "Bearer dev-token"}


def fast_config(data_dir, hint_level="behavior"):
    """Small-domain check config keeps service tests quick but decisive."""
    return AppConfig(
        check=CheckConfig(
            eval_config=EvalConfig(int_range=(-3, 3), max_array_len=3,
                                   quant_bound=8),
            trials=2500, use_smt=False),
        service=ServiceConfig(data_dir=data_dir, snapshot_every=1),
    )


@pytest.fixture
def client(tmp_path):
    app = create_app(fast_config(str(tmp_path / "data")))
    with TestClient(app) as c:
        yield c


def create_getmax(client, exercise_id="getmax"):
    r = client.post("/api/exercises", headers=AUTH, json={
        "id": exercise_id, "title": "getMax", "description": "maximum element",
        "modelSpec": GETMAX_SRC})
    assert r.status_code == 201, r.text
    return r.json()


def test_create_requires_token(client):
    r = client.post("/api/exercises", json={"title": "t", "modelSpec": GETMAX_SRC})
    assert r.status_code == 401
    r = client.post("/api/exercises", headers={"Authorization": "Bearer wrong"},
                    json={"title": "t", "modelSpec": GETMAX_SRC})
    assert r.status_code == 401


def test_create_and_fetch_exercise(client):
    created = create_getmax(client)
    assert created["id"] == "getmax"
    assert created["selfCheck"]["pre"]["status"] == "Equivalent"
    r = client.get("/api/exercises/getmax")
    assert r.status_code == 200
    body = r.json()
    assert body["signature"].startswith("method getMax")
    assert "modelSpec" not in body
    assert body["signatureAst"]["params"] == [{"name": "a", "type": "int[]"}]
    assert client.get("/api/exercises").json()[0]["id"] == "getmax"


def test_model_spec_with_retval_in_pre_rejected(client):
    r = client.post("/api/exercises", headers=AUTH, json={
        "title": "bad", "modelSpec":
            "method f(x: int) -> int; pre(retval > 0); post(retval == x);"})
    assert r.status_code == 422
    assert "retval" in r.json()["detail"]["diagnostics"][0]["message"]


def test_duplicate_exercise_id_conflicts(client):
    create_getmax(client)
    r = client.post("/api/exercises", headers=AUTH, json={
        "id": "getmax", "title": "again", "modelSpec": GETMAX_SRC})
    assert r.status_code == 409


def test_unknown_exercise_404(client):
    assert client.get("/api/exercises/nope").status_code == 404
    r = client.post("/api/exercises/nope/submissions",
                    json={"studentSpec": GETMAX_SRC})
    assert r.status_code == 404


def test_submit_model_verbatim_is_equivalent(client):
    create_getmax(client)
    r = client.post("/api/exercises/getmax/submissions",
                    json={"studentSpec": GETMAX_SRC, "seed": 1})
    assert r.status_code == 200, r.text
    body = r.json()
    assert body["verdict"]["pre"]["status"] == "Equivalent"
    assert body["verdict"]["post"]["status"] == "Equivalent"
    kinds = set(body["blobSummary"]["input"]) | set(body["blobSummary"]["output"])
    assert kinds <= {"blueUnmarked", "redMarked"}


def test_submit_weakened_post_too_weak(client):
    create_getmax(client)
    r = client.post("/api/exercises/getmax/submissions",
                    json={"studentSpec": GETMAX_WEAK_SRC, "seed": 1})
    body = r.json()
    assert body["verdict"]["post"]["status"] == "TooWeak"
    assert "redUnmarked" in body["blobSummary"]["output"]


def test_submit_strengthened_pre_too_strong(client):
    create_getmax(client)
    r = client.post("/api/exercises/getmax/submissions",
                    json={"studentSpec": GETMAX_STRONG_SRC, "seed": 1})
    body = r.json()
    assert body["verdict"]["pre"]["status"] == "TooStrong"
    assert "blueMarked" in body["blobSummary"]["input"]


def test_submit_ast_document(client):
    create_getmax(client)
    spec, _ = load_spec(GETMAX_SRC)
    r = client.post("/api/exercises/getmax/submissions",
                    json={"studentAst": serialize_spec(spec), "seed": 1})
    assert r.status_code == 200
    assert r.json()["verdict"]["post"]["status"] == "Equivalent"


def test_submit_bad_ast_document(client):
    create_getmax(client)
    r = client.post("/api/exercises/getmax/submissions",
                    json={"studentAst": {"signature": {"name": "getMax",
                                                       "params": [],
                                                       "returnType": "int"}}})
    assert r.status_code == 422  # signature mismatch


def test_submit_with_diagnostics(client):
    create_getmax(client)
    r = client.post("/api/exercises/getmax/submissions",
                    json={"studentSpec": "method getMax(a: int[]) -> int; pre(x > );"})
    assert r.status_code == 422
    assert r.json()["detail"]["diagnostics"]


def test_witnesses_gated_by_hint_level(tmp_path):
    for level, expect in (("behavior", False), ("full", True)):
        cfg = fast_config(str(tmp_path / level), hint_level=level)
        cfg = AppConfig(check=cfg.check, game=cfg.game,
                        service=ServiceConfig(data_dir=str(tmp_path / level),
                                              hint_level=level))
        with TestClient(create_app(cfg)) as c:
            create_getmax(c)
            r = c.post("/api/exercises/getmax/submissions",
                       json={"studentSpec": GETMAX_WEAK_SRC, "seed": 1})
            has = "witness" in json.dumps(r.json())
            assert has is expect, level


def test_websocket_play_to_completion(client):
    create_getmax(client)
    sub = client.post("/api/exercises/getmax/submissions",
                      json={"studentSpec": GETMAX_SRC, "seed": 1}).json()
    with client.websocket_connect(f"/api/sessions/{sub['sessionId']}") as ws:
        board = ws.receive_json()
        assert board["type"] == "board"
        snap = ws.receive_json()
        assert snap["type"] == "snapshot" and snap["phase"] == "building"
        ws.send_text(json.dumps({"action": "placeTower",
                                 "params": {"kind": "zapper", "cell": [4, 3]}}))
        snap = ws.receive_json()
        assert snap["budget"] == 60
        ws.send_text(json.dumps({"action": "startWave", "params": {}}))
        report = None
        while True:
            msg = ws.receive_json()
            if msg["type"] == "scoreReport":
                report = msg
                break
            assert msg["type"] == "snapshot"
        assert report["health"] > 0  # no unmarked reds for an equivalent spec
    log = client.get(f"/api/sessions/{sub['sessionId']}/log")
    assert log.status_code == 200
    header = json.loads(log.json()["log"].splitlines()[0])
    assert header["type"] == "session"


def test_websocket_error_frame_on_bad_action(client):
    create_getmax(client)
    sub = client.post("/api/exercises/getmax/submissions",
                      json={"studentSpec": GETMAX_SRC, "seed": 1}).json()
    with client.websocket_connect(f"/api/sessions/{sub['sessionId']}") as ws:
        ws.receive_json()  # board
        ws.receive_json()  # snapshot
        ws.send_text(json.dumps({"action": "placeTower",
                                 "params": {"kind": "zapper", "cell": [4, 4]}}))
        err = ws.receive_json()
        assert err["type"] == "error" and "buildable" in err["error"]


def test_websocket_unknown_session(client):
    with client.websocket_connect("/api/sessions/nosuch") as ws:
        assert ws.receive_json()["type"] == "error"


def test_teacher_formula_never_leaks(client):
    create_getmax(client)
    bodies = [client.get("/api/exercises").text,
              client.get("/api/exercises/getmax").text]
    sub = client.post("/api/exercises/getmax/submissions",
                      json={"studentSpec": GETMAX_WEAK_SRC, "seed": 1})
    bodies.append(sub.text)
    with client.websocket_connect(f"/api/sessions/{sub.json()['sessionId']}") as ws:
        bodies.append(json.dumps(ws.receive_json()))
        bodies.append(json.dumps(ws.receive_json()))
    for body in bodies:
        assert "forall" not in body
        assert "a[i]" not in body
        assert "retval" not in body


def test_persistence_across_restart(tmp_path):
    data = str(tmp_path / "data")
    with TestClient(create_app(fast_config(data))) as c:
        create_getmax(c)
    # a fresh app over the same directory sees the exercise
    with TestClient(create_app(fast_config(data))) as c:
        r = c.get("/api/exercises/getmax")
        assert r.status_code == 200
        sub = c.post("/api/exercises/getmax/submissions",
                     json={"studentSpec": GETMAX_SRC, "seed": 2})
        assert sub.json()["verdict"]["post"]["status"] == "Equivalent"
