"""HTTP interface: stateless space analysis plus stateful game sessions.

All bodies use the same object syntax as the space file format. Sessions live
in memory, are mutated under a per-session lock, and expire after an idle
period; analyses are computed once per uploaded space and cached immutably.
"""
from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .analysis import AnalysisReport, analyze, table_export
from .errors import (
    BFMetricError,
    GameOverError,
    IllegalMove,
    IndexOutOfRange,
    SpaceTooLarge,
)
from .game import (
    Challenge,
    GameState,
    Response,
    apply_move,
    engine_move,
    legal_moves,
    new_game,
)
from .refine import DEFAULT_SPACE_LIMIT, RefinementTable, table_for
from .space import MetricSpace, from_document, to_document


def _clock_to_wire(clock):
    return "inf" if clock is None else clock


def _clock_from_wire(value):
    if value in ("inf", None):
        return None
    if isinstance(value, int) and value >= 0:
        return value
    raise ValueError(f"bad clock {value!r}")


def move_from_wire(doc) -> Challenge | Response:
    if not isinstance(doc, dict) or "type" not in doc:
        raise ValueError("move must be an object with a type")
    if doc["type"] == "challenge":
        return Challenge(
            point=doc["point"], side=doc.get("side", "L"), ordinal=doc.get("ordinal")
        )
    if doc["type"] == "response":
        return Response(point=doc["point"])
    raise ValueError(f"unknown move type {doc['type']!r}")


def state_to_wire(state: GameState) -> dict:
    return {
        "phase": state.phase,
        "to_move": state.to_move,
        "a": list(state.a),
        "b": list(state.b),
        "map": [list(p) for p in state.current.pairs] if state.current else None,
        "map_str": str(state.current) if state.current else None,
        "clock": _clock_to_wire(state.clock),
        "moves": [r.to_wire() for r in state.moves],
        "pending": state.pending.to_wire() if state.pending else None,
        "winner": state.winner,
    }


@dataclass
class SpaceEntry:
    id: str
    space: MetricSpace
    report: AnalysisReport
    table: RefinementTable


@dataclass
class Session:
    id: str
    space_id: str
    role: str  # the human's player
    hints: bool
    state: GameState
    lock: threading.Lock = field(default_factory=threading.Lock)
    last_access: float = field(default_factory=time.time)


def create_app(
    static_dir: str | None = None,
    space_limit: int = DEFAULT_SPACE_LIMIT,
    session_ttl: float = 3600.0,
    enable_dump: bool = False,
) -> FastAPI:
    app = FastAPI(title="bfmetric")
    spaces: dict[str, SpaceEntry] = {}
    sessions: dict[str, Session] = {}
    store_lock = threading.Lock()

    def error(status: int, name: str, detail: str, **extra):
        return JSONResponse(status_code=status, content={"error": name, "detail": detail, **extra})

    def purge_idle():
        now = time.time()
        with store_lock:
            for sid in [s for s, sess in sessions.items() if now - sess.last_access > session_ttl]:
                del sessions[sid]

    def session_payload(sess: Session) -> dict:
        entry = spaces[sess.space_id]
        out = {
            "id": sess.id,
            "space": sess.space_id,
            "role": sess.role,
            "hints": sess.hints,
            "state": state_to_wire(sess.state),
        }
        if sess.hints:
            out["hint"] = hint_payload(sess, entry.table)
        return out

    def hint_payload(sess: Session, table: RefinementTable) -> dict:
        state = sess.state
        if state.current is None:
            return {"rank": 0, "survive_forever": False, "non_losing_moves": []}
        rank = table.rank_of(state.current)
        hint = {
            "rank": "top" if rank.is_top else rank.level,
            "survive_forever": rank.is_top,
            "non_losing_moves": [],
        }
        if state.phase == "over" or state.to_move != sess.role:
            return hint
        good = []
        for move in legal_moves(state):
            nxt = apply_move(state, move)
            if isinstance(move, Response):
                beta = state.pending.ordinal
                if nxt.winner == "I":
                    ok = False
                elif beta is None:
                    ok = table.rank_of(nxt.current).is_top
                else:
                    ok = table.in_level(nxt.current, beta)
            else:
                # challenge is non-losing for Player I when no answer keeps II
                # inside the declared level
                beta = move.ordinal
                ok = True
                for resp in legal_moves(nxt):
                    after = apply_move(nxt, resp)
                    if after.winner == "I":
                        continue
                    r = table.rank_of(after.current)
                    if beta is None:
                        if r.is_top:
                            ok = False
                            break
                    elif r.is_top or r.level > beta:
                        ok = False
                        break
            if ok:
                good.append(move.to_wire())
        hint["non_losing_moves"] = good
        return hint

    def advance_engine(sess: Session):
        entry = spaces[sess.space_id]
        while sess.state.phase != "over" and sess.state.to_move != sess.role:
            move = engine_move(sess.state, entry.table)
            sess.state = apply_move(sess.state, move)

    @app.post("/spaces", status_code=201)
    async def post_space(request: Request):
        try:
            doc = await request.json()
        except Exception:
            return error(400, "ParseError", "body is not a well-formed document")
        try:
            space = from_document(doc)
        except SpaceTooLarge as e:
            return error(413, "SpaceTooLarge", str(e))
        except BFMetricError as e:
            return error(400, type(e).__name__, str(e))
        try:
            report = analyze(space, space_limit)
            table = table_for(space, space_limit)
        except SpaceTooLarge as e:
            return error(413, "SpaceTooLarge", str(e))
        sid = uuid.uuid4().hex[:12]
        with store_lock:
            spaces[sid] = SpaceEntry(id=sid, space=space, report=report, table=table)
        return {"id": sid, "report": report.to_dict()}

    @app.get("/spaces/{space_id}")
    async def get_space(space_id: str):
        entry = spaces.get(space_id)
        if entry is None:
            return error(404, "NotFound", f"no space {space_id}")
        return {"id": entry.id, **to_document(entry.space)}

    @app.get("/spaces/{space_id}/analysis")
    async def get_analysis(space_id: str):
        entry = spaces.get(space_id)
        if entry is None:
            return error(404, "NotFound", f"no space {space_id}")
        return {
            "id": entry.id,
            "report": entry.report.to_dict(),
            "refinement": entry.table.to_dict(),
        }

    @app.post("/games", status_code=201)
    async def post_game(request: Request):
        purge_idle()
        try:
            doc = await request.json()
        except Exception:
            return error(400, "ParseError", "body is not a well-formed document")
        entry = spaces.get(doc.get("space"))
        if entry is None:
            return error(404, "NotFound", f"no space {doc.get('space')!r}")
        try:
            clock = _clock_from_wire(doc.get("clock", "inf"))
            a = tuple(doc.get("a", ()))
            b = tuple(doc.get("b", ()))
            role = doc.get("role", "I")
            if role not in ("I", "II"):
                raise ValueError(f"bad role {role!r}")
            state = new_game(entry.space, a, b, clock)
        except (ValueError, IndexOutOfRange) as e:
            return error(400, "ParseError", str(e))
        sess = Session(
            id=uuid.uuid4().hex[:12],
            space_id=entry.id,
            role=role,
            hints=bool(doc.get("hints", False)),
            state=state,
        )
        with sess.lock:
            advance_engine(sess)
        with store_lock:
            sessions[sess.id] = sess
        return session_payload(sess)

    @app.get("/games/{game_id}")
    async def get_game(game_id: str):
        sess = sessions.get(game_id)
        if sess is None:
            return error(404, "NotFound", f"no game {game_id}")
        sess.last_access = time.time()
        return session_payload(sess)

    @app.post("/games/{game_id}/moves")
    async def post_move(game_id: str, request: Request):
        sess = sessions.get(game_id)
        if sess is None:
            return error(404, "NotFound", f"no game {game_id}")
        try:
            doc = await request.json()
            move = move_from_wire(doc)
        except Exception as e:
            return error(400, "ParseError", str(e))
        with sess.lock:
            sess.last_access = time.time()
            if sess.state.phase == "over":
                return error(409, "GameOver", f"game is over, winner Player {sess.state.winner}")
            if sess.state.to_move != sess.role:
                return error(409, "NotYourTurn", "the engine is to move")
            try:
                sess.state = apply_move(sess.state, move)
            except IllegalMove as e:
                return error(422, "IllegalMove", str(e), legal=e.legal)
            advance_engine(sess)
            return session_payload(sess)

    @app.delete("/games/{game_id}", status_code=204)
    async def delete_game(game_id: str):
        with store_lock:
            if game_id not in sessions:
                return error(404, "NotFound", f"no game {game_id}")
            del sessions[game_id]

    if enable_dump:

        @app.get("/dump")
        async def dump():
            return {
                "sessions": [session_payload(s) for s in sessions.values()],
                "spaces": [to_document(e.space) for e in spaces.values()],
            }

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
