"""HTTP/WebSocket facade: exercise authoring, submission checking, play.

REST surface (JSON, versioned under /api):

    POST /api/exercises                    create (teacher token required)
    GET  /api/exercises                    list
    GET  /api/exercises/{id}               fetch (prose + signature only)
    POST /api/exercises/{id}/submissions   submit a student spec
    WS   /api/sessions/{id}                live game channel

The teacher's model specification never leaves the server: exercise GETs
expose only the prose and signature, and verdict payloads carry quadrant
statuses (witness values only at hint level "full").
"""

from __future__ import annotations

import asyncio
import json
import threading
import time
from dataclasses import replace

from fastapi import Depends, FastAPI, Header, HTTPException, WebSocket
from fastapi.websockets import WebSocketDisconnect
from pydantic import BaseModel

from .astdoc import AstDocError, parse_spec_doc, serialize_signature
from .blobs import plan_blobs, plan_to_json
from .checker import CheckConfig, check_specs
from .config import AppConfig
from .pretty import pretty_signature
from .session import Session, board_info, score_report_json, snapshot
from .store import DuplicateId, JsonStore, NotFound
from .typecheck import load_spec, typecheck
from .verdict import BackendConflict, verdict_to_json


class ExercisePayload(BaseModel):
    id: str | None = None
    title: str
    description: str = ""
    modelSpec: str  # DSL text: header + pre/post clauses
    checkOverrides: dict = {}


class SubmissionPayload(BaseModel):
    studentSpec: str | None = None  # DSL text ...
    studentAst: dict | None = None  # ... or AST document
    seed: int | None = None


def _diag_list(diags):
    return [{"line": d.line, "col": d.col, "message": d.message} for d in diags]


def create_app(config: AppConfig = AppConfig(), store: JsonStore = None) -> FastAPI:
    app = FastAPI(title="specgame", version="0.1.0")
    store = store or JsonStore(config.service.data_dir)
    sessions: dict = {}
    solver_gate = threading.Semaphore(config.service.max_concurrent_solvers)

    def require_teacher(authorization: str = Header(default="")):
        token = authorization.removeprefix("Bearer ").strip()
        if token not in config.service.teacher_tokens:
            raise HTTPException(401, "teacher token required")

    def load_exercise(exercise_id: str) -> dict:
        try:
            return store.get("exercises", exercise_id)
        except NotFound:
            raise HTTPException(404, f"exercise {exercise_id!r} not found")

    def run_check(model, student, seed=None):
        cfg = config.check if seed is None else replace(config.check, seed=seed)
        with solver_gate:
            return check_specs(model, student, cfg)

    @app.post("/api/exercises", status_code=201)
    def create_exercise(payload: ExercisePayload, _=Depends(require_teacher)):
        spec, diags = load_spec(payload.modelSpec)
        if diags:
            raise HTTPException(422, detail={"diagnostics": _diag_list(diags)})
        # self-check: the model must be equivalent to itself
        verdict = run_check(spec, spec)
        if verdict.pre.status != "Equivalent" or verdict.post.status != "Equivalent":
            raise HTTPException(422, detail={
                "error": "model specification failed its self-check",
                "selfCheck": verdict_to_json(verdict, include_witnesses=False),
            })
        rec_id = payload.id or JsonStore.new_id()
        record = {
            "id": rec_id,
            "title": payload.title,
            "description": payload.description,
            "signature": pretty_signature(spec.signature),
            "modelSpec": payload.modelSpec,
            "createdAt": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
            "checkOverrides": payload.checkOverrides,
            "selfCheck": verdict_to_json(verdict, include_witnesses=False),
        }
        try:
            store.put("exercises", rec_id, record)
        except DuplicateId as err:
            raise HTTPException(409, str(err))
        return _public_exercise(record) | {"selfCheck": record["selfCheck"]}

    def _public_exercise(record: dict) -> dict:
        spec, _ = load_spec(record["modelSpec"])
        return {
            "id": record["id"],
            "title": record["title"],
            "description": record["description"],
            "signature": record["signature"],
            "signatureAst": serialize_signature(spec.signature),
            "createdAt": record["createdAt"],
        }

    @app.get("/api/exercises")
    def list_exercises():
        out = []
        for rec_id in store.list_ids("exercises"):
            out.append(_public_exercise(store.get("exercises", rec_id)))
        return out

    @app.get("/api/exercises/{exercise_id}")
    def get_exercise(exercise_id: str):
        return _public_exercise(load_exercise(exercise_id))

    @app.post("/api/exercises/{exercise_id}/submissions")
    def submit(exercise_id: str, payload: SubmissionPayload):
        record = load_exercise(exercise_id)
        model, diags = load_spec(record["modelSpec"])
        assert not diags
        if payload.studentAst is not None:
            try:
                parsed = parse_spec_doc(payload.studentAst)
            except AstDocError as err:
                raise HTTPException(422, detail={"diagnostics": [
                    {"line": 0, "col": 0, "message": str(err)}]})
            student, tdiags = typecheck(parsed)
        elif payload.studentSpec is not None:
            student, tdiags = load_spec(payload.studentSpec)
        else:
            raise HTTPException(422, "studentSpec or studentAst required")
        if tdiags:
            raise HTTPException(422, detail={"diagnostics": _diag_list(tdiags)})
        if student.signature != model.signature:
            raise HTTPException(422, detail={"diagnostics": [
                {"line": 1, "col": 1,
                 "message": "submission signature does not match the exercise"}]})
        seed = payload.seed if payload.seed is not None else config.check.seed
        try:
            verdict = run_check(model, student, seed)
        except BackendConflict as err:
            raise HTTPException(500, detail={"error": "backend conflict",
                                             "trace": str(err)})
        plan = plan_blobs(verdict, seed=seed)
        session_id = JsonStore.new_id()
        sessions[session_id] = Session(session_id, plan, config.game, seed)
        sub_id = JsonStore.new_id()
        include_witnesses = config.service.hint_level == "full"
        verdict_json = verdict_to_json(verdict, include_witnesses=include_witnesses)
        store.put("submissions", sub_id, {
            "id": sub_id,
            "exerciseId": exercise_id,
            "studentSpec": payload.studentSpec,
            "studentAst": payload.studentAst,
            "verdict": verdict_json,
            "sessionSeed": seed,
            "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        })
        return {
            "submissionId": sub_id,
            "sessionId": session_id,
            "verdict": verdict_json,
            "blobSummary": {
                "input": sorted({e.kind for e in plan.entries if e.side == "input"}),
                "output": sorted({e.kind for e in plan.entries if e.side == "output"}),
                "count": len(plan.entries),
            },
        }

    @app.websocket("/api/sessions/{session_id}")
    async def session_channel(ws: WebSocket, session_id: str):
        await ws.accept()
        session = sessions.get(session_id)
        if session is None:
            await ws.send_json({"type": "error", "error": "unknown session"})
            await ws.close()
            return
        await ws.send_json(board_info(session.board, session.cfg))
        await ws.send_json(snapshot(session.state))
        tick_interval = 0.02
        try:
            while True:
                if session.ended:
                    await ws.send_json(score_report_json(session.report()))
                    break
                timeout = tick_interval if session.state.phase == "wave" else None
                try:
                    raw = await asyncio.wait_for(ws.receive_text(), timeout=timeout)
                except asyncio.TimeoutError:
                    raw = None
                if raw is not None:
                    try:
                        msg = json.loads(raw)
                        session.apply(msg.get("action", ""), msg.get("params", {}))
                        await ws.send_json(snapshot(session.state))
                    except (json.JSONDecodeError, Exception) as err:
                        await ws.send_json({"type": "error", "error": str(err)})
                        continue
                if session.state.phase == "wave":
                    session.advance()
                    await ws.send_json(snapshot(session.state))
            await ws.close()
        except WebSocketDisconnect:
            pass  # session survives; the client may reconnect

    @app.get("/api/sessions/{session_id}/log")
    def session_log(session_id: str):
        session = sessions.get(session_id)
        if session is None:
            raise HTTPException(404, "unknown session")
        return {"log": "\n".join(session.log_lines())}

    return app
