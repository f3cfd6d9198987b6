"""HTTP/JSON facade over proof sessions.

One FastAPI app per store.  Mutating endpoints carry an ``expected_version``
for optimistic concurrency; every response embeds the full refreshed view, so
clients never reason about deltas.  When a state directory is configured each
mutation is followed by an atomic write of the session XML.
"""

from __future__ import annotations

import functools
import json
import logging
import os
import secrets
import threading
from pathlib import Path
from typing import Any, Callable, Optional

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response

from .auto import auto_run, auto_step
from .errors import (NotApplicable, ParseError, ProofError, UnknownGiven,
                     UnknownGoal, VersionConflict)
from .formulas import Formula, subformula_at
from .kernel import StepDescriptor, applicable_steps, is_complete, open_goals
from .outline import render_outline
from .parser import parse
from .reexpress import applicable_equivalences
from .render import render
from .session import (Session, export_html, load_session, save_session,
                      session_do, session_new, session_redo, session_undo,
                      step_attributes, step_from_attributes)

log = logging.getLogger(__name__)


class _BadRequest(Exception):
    """Structurally invalid request body; reported as HTTP 400."""


class SessionStore:
    """In-memory session map with per-session write locks and optional
    directory persistence (one ``<id>.xml`` per session, written atomically)."""

    def __init__(self, state_dir: Optional[str] = None):
        self._sessions: dict[str, Session] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._mu = threading.Lock()
        self._dir = Path(state_dir) if state_dir else None
        if self._dir is not None:
            self._dir.mkdir(parents=True, exist_ok=True)
            for path in sorted(self._dir.glob("*.xml")):
                try:
                    self._sessions[path.stem] = load_session(path.read_bytes())
                except ProofError as e:
                    log.warning("skipping %s: %s", path.name, e)

    def create(self, session: Session) -> str:
        with self._mu:
            while True:
                sid = secrets.token_hex(16)
                if sid not in self._sessions:
                    break
            self._sessions[sid] = session
        self._persist(sid, session)
        return sid

    def get(self, sid: str) -> Optional[Session]:
        with self._mu:
            return self._sessions.get(sid)

    def mutate(self, sid: str, fn: Callable[[Session], tuple[Session, Any]]):
        """Run ``fn`` under the session's lock; ``fn`` returns the replacement
        session and an extra payload.  Returns None for an unknown id."""
        with self._mu:
            if sid not in self._sessions:
                return None
            lock = self._locks.setdefault(sid, threading.Lock())
        with lock:
            with self._mu:
                current = self._sessions[sid]
            replacement, payload = fn(current)
            with self._mu:
                self._sessions[sid] = replacement
            self._persist(sid, replacement)
            return replacement, payload

    def _persist(self, sid: str, session: Session) -> None:
        if self._dir is None:
            return
        tmp = self._dir / f".{sid}.tmp"
        tmp.write_bytes(save_session(session))
        os.replace(tmp, self._dir / f"{sid}.xml")


# -- view construction -------------------------------------------------------


def _formula_views(f: Formula) -> dict:
    return {"formula": render(f, "ascii"),
            "formula_unicode": render(f, "unicode"),
            "formula_html": render(f, "html")}


def build_view(session: Session) -> dict:
    goals = []
    for gid, leaf in open_goals(session.state):
        givens = [{"label": g.label, "origin": g.origin, **_formula_views(g.formula)}
                  for g in leaf.givens]
        goals.append({"id": gid,
                      "goal": render(leaf.goal, "ascii"),
                      "goal_unicode": render(leaf.goal, "unicode"),
                      "goal_html": render(leaf.goal, "html"),
                      "givens": givens,
                      "comments": list(leaf.comments)})
    return {"version": session.version,
            "complete": is_complete(session.state),
            "outline_html": render_outline(session.state, "html"),
            "open_goals": goals,
            "can_undo": session.can_undo,
            "can_redo": session.can_redo,
            "theorem": {
                "givens": [{"label": g.label, **_formula_views(g.formula)}
                           for g in session.theorem_givens],
                "goal": _formula_views(session.theorem_goal)}}


def _step_echo(step: StepDescriptor) -> dict:
    return dict(step_attributes(step))


# -- request plumbing --------------------------------------------------------


def _json_body(raw: bytes) -> dict:
    try:
        body = json.loads(raw)
    except (ValueError, UnicodeDecodeError):
        raise _BadRequest("request body is not valid JSON") from None
    if not isinstance(body, dict):
        raise _BadRequest("request body must be a JSON object")
    return body


def _require(body: dict, key: str, kind: type) -> Any:
    value = body.get(key)
    if not isinstance(value, kind) or isinstance(value, bool):
        raise _BadRequest(f"field {key!r} must be a {kind.__name__}")
    return value


def _error_response(exc: ProofError) -> JSONResponse:
    body: dict[str, Any] = {"error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, VersionConflict):
        status = 409
        body["version"] = exc.actual
    elif isinstance(exc, (UnknownGoal, UnknownGiven)):
        status = 404
    else:
        status = 422
        if isinstance(exc, ParseError):
            body["offset"] = exc.offset
    return JSONResponse(body, status_code=status)


_UNKNOWN_SESSION = {"error": "UnknownSession", "message": "no such session"}


def _not_found() -> JSONResponse:
    return JSONResponse(_UNKNOWN_SESSION, status_code=404)


def _snap_to_formula(f: Formula, path: tuple[int, ...]) -> tuple[int, ...]:
    """The longest prefix of ``path`` that addresses a formula node."""
    while True:
        node = subformula_at(f, path)
        if isinstance(node, Formula):
            return path
        path = path[:-1]


def _checked(expected: int, session: Session) -> None:
    if session.version != expected:
        raise VersionConflict(expected, session.version)


# -- application --------------------------------------------------------------


def create_app(state_dir: Optional[str] = None) -> FastAPI:
    store = SessionStore(state_dir)
    app = FastAPI(title="setproof")
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])
    app.state.store = store

    def guarded(fn):
        @functools.wraps(fn)
        async def handler(*args, **kwargs):
            try:
                return await fn(*args, **kwargs)
            except _BadRequest as e:
                return JSONResponse({"error": "BadRequest", "message": str(e)},
                                    status_code=400)
            except ProofError as e:
                return _error_response(e)
        return handler

    @app.post("/api/v1/sessions", status_code=201)
    @guarded
    async def create_session(request: Request):
        body = _json_body(await request.body())
        goal = parse(_require(body, "goal", str))
        raw_givens = body.get("givens", [])
        if not isinstance(raw_givens, list) or not all(isinstance(g, str) for g in raw_givens):
            raise _BadRequest("field 'givens' must be a list of strings")
        labels = body.get("labels")
        if labels is not None and (not isinstance(labels, list)
                                   or not all(isinstance(x, str) for x in labels)):
            raise _BadRequest("field 'labels' must be a list of strings")
        session = session_new([parse(g) for g in raw_givens], goal, labels=labels)
        sid = store.create(session)
        return JSONResponse({"id": sid, "view": build_view(session)},
                            status_code=201)

    @app.get("/api/v1/sessions/{sid}")
    @guarded
    async def get_session(sid: str):
        session = store.get(sid)
        if session is None:
            return _not_found()
        return {"view": build_view(session)}

    @app.get("/api/v1/sessions/{sid}/steps")
    @guarded
    async def list_steps(sid: str, goal: str = "0",
                         given: Optional[str] = None):
        session = store.get(sid)
        if session is None:
            return _not_found()
        templates = []
        for t in applicable_steps(session.state, goal, given):
            entry: dict[str, Any] = {"kind": t.kind, "needs": list(t.needs)}
            if t.given is not None:
                entry["given"] = t.given
            if t.given2 is not None:
                entry["given2"] = t.given2
            templates.append(entry)
        return {"templates": templates}

    @app.post("/api/v1/sessions/{sid}/steps")
    @guarded
    async def apply_step(sid: str, request: Request):
        body = _json_body(await request.body())
        expected = _require(body, "expected_version", int)
        goal = _require(body, "goal", str)
        raw_step = _require(body, "step", dict)
        attrs = {"goal": goal}
        for key, value in raw_step.items():
            if not isinstance(value, str):
                raise _BadRequest(f"step field {key!r} must be a string")
            attrs[key] = value
        step = step_from_attributes(attrs)

        def fn(current: Session):
            _checked(expected, current)
            return session_do(current, step), None

        result = store.mutate(sid, fn)
        if result is None:
            return _not_found()
        session, _ = result
        return {"view": build_view(session), "applied": _step_echo(step)}

    @app.post("/api/v1/sessions/{sid}/undo")
    @guarded
    async def undo(sid: str, request: Request):
        return await _history(sid, request, session_undo)

    @app.post("/api/v1/sessions/{sid}/redo")
    @guarded
    async def redo(sid: str, request: Request):
        return await _history(sid, request, session_redo)

    async def _history(sid: str, request: Request, op):
        body = _json_body(await request.body())
        expected = _require(body, "expected_version", int)

        def fn(current: Session):
            _checked(expected, current)
            return op(current), None

        result = store.mutate(sid, fn)
        if result is None:
            return _not_found()
        session, _ = result
        return {"view": build_view(session)}

    @app.post("/api/v1/sessions/{sid}/auto")
    @guarded
    async def auto(sid: str, request: Request):
        body = _json_body(await request.body())
        expected = _require(body, "expected_version", int)
        goal = _require(body, "goal", str)
        run = body.get("run", False)
        if not isinstance(run, bool):
            raise _BadRequest("field 'run' must be a boolean")
        max_steps = body.get("max_steps", 50)
        if not isinstance(max_steps, int) or isinstance(max_steps, bool) or max_steps < 1:
            raise _BadRequest("field 'max_steps' must be a positive integer")

        def fn(current: Session):
            _checked(expected, current)
            if run:
                _, applied = auto_run(current.state, goal, max_steps=max_steps)
            else:
                _, step = auto_step(current.state, goal)
                if step is None:
                    raise NotApplicable(
                        f"no automatic step applies to goal {goal}")
                applied = [step]
            for st in applied:
                current = session_do(current, st)
            return current, applied

        result = store.mutate(sid, fn)
        if result is None:
            return _not_found()
        session, applied = result
        return {"view": build_view(session),
                "applied": [_step_echo(st) for st in applied]}

    @app.get("/api/v1/sessions/{sid}/export")
    @guarded
    async def export(sid: str, format: str = "xml"):
        session = store.get(sid)
        if session is None:
            return _not_found()
        if format == "xml":
            return Response(save_session(session),
                            media_type="application/xml")
        if format == "html":
            return Response(export_html(session), media_type="text/html")
        return JSONResponse({"error": "BadRequest",
                             "message": f"unknown export format {format!r}"},
                            status_code=400)

    @app.post("/api/v1/sessions/import", status_code=201)
    @guarded
    async def import_session(request: Request):
        session = load_session(await request.body())
        sid = store.create(session)
        return JSONResponse({"id": sid, "view": build_view(session)},
                            status_code=201)

    @app.post("/api/v1/parse")
    @guarded
    async def parse_formula(request: Request):
        body = _json_body(await request.body())
        f = parse(_require(body, "formula", str))
        return {"ascii": render(f, "ascii"),
                "unicode": render(f, "unicode"),
                "html": render(f, "html")}

    @app.post("/api/v1/equivalences")
    @guarded
    async def equivalences(request: Request):
        body = _json_body(await request.body())
        f = parse(_require(body, "formula", str))
        raw_path = body.get("path", [])
        if not isinstance(raw_path, list) or not all(
                isinstance(i, int) and not isinstance(i, bool) and i >= 0
                for i in raw_path):
            raise _BadRequest("field 'path' must be a list of indices")
        path = _snap_to_formula(f, tuple(raw_path))
        options = []
        for rule, direction, preview in applicable_equivalences(f, path):
            options.append({"rule": rule.id, "name": rule.name,
                            "kind": rule.kind, "direction": direction,
                            "preview": render(preview, "ascii"),
                            "preview_unicode": render(preview, "unicode"),
                            "preview_html": render(preview, "html")})
        return {"path": list(path), "options": options}

    return app
