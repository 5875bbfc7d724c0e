"""Record real service sessions as JSON fixtures for the UI tests.

Each fixture is a linear transcript: the space upload, the game creation,
then every move POST with its status and body, plus a final GET. The UI
tests replay these through the client with a scripted fetch, so they stay
faithful to the live wire format without needing a running server.
"""
import json
import pathlib
import sys

from fastapi.testclient import TestClient

from bfmetric.service import create_app
from bfmetric.space import generate, to_document

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"

P3 = to_document(generate("path", {"n": 3}))
TWO = to_document(generate("path", {"n": 2}))


def record(name, space_doc, game_req, scripted_moves):
    client = TestClient(create_app())
    transcript = {"space": space_doc, "exchanges": []}

    r = client.post("/spaces", json=space_doc)
    assert r.status_code == 201, r.text
    space_id = r.json()["id"]
    transcript["exchanges"].append(
        {"method": "POST", "path": "/spaces", "request": space_doc,
         "status": r.status_code, "response": r.json()}
    )

    game_req = {**game_req, "space": space_id}
    r = client.post("/games", json=game_req)
    assert r.status_code == 201, r.text
    gid = r.json()["id"]
    transcript["exchanges"].append(
        {"method": "POST", "path": "/games", "request": game_req,
         "status": r.status_code, "response": r.json()}
    )

    state = r.json()["state"]
    for move in scripted_moves:
        if state["phase"] == "over":
            break
        if move == "hint":
            # answer with the service's first non-losing move
            payload = client.get(f"/games/{gid}").json()
            move = payload["hint"]["non_losing_moves"][0]
        r = client.post(f"/games/{gid}/moves", json=move)
        transcript["exchanges"].append(
            {"method": "POST", "path": f"/games/{gid}/moves", "request": move,
             "status": r.status_code, "response": r.json()}
        )
        if r.status_code == 200:
            state = r.json()["state"]

    r = client.get(f"/games/{gid}")
    transcript["exchanges"].append(
        {"method": "GET", "path": f"/games/{gid}", "request": None,
         "status": r.status_code, "response": r.json()}
    )
    transcript["final_state"] = r.json()["state"]

    out = OUT / f"{name}.json"
    out.write_text(json.dumps(transcript, indent=2) + "\n")
    print(f"{name}: winner={state['winner']} rounds={len(state['moves'])} -> {out.name}")
    return transcript


def main():
    # 1. P3, human as Player I, clock 3: the one-round win from {0->1}
    t = record(
        "p3_human_i_win",
        P3,
        {"a": [0], "b": [1], "clock": 3, "role": "I", "hints": True},
        [
            # an illegal ordinal first: must 422 and leave the state intact
            {"type": "challenge", "ordinal": 7, "side": "L", "point": 2},
            {"type": "challenge", "ordinal": 0, "side": "L", "point": 2},
        ],
    )
    assert t["final_state"]["winner"] == "I"

    # 2. P3, human as Player II defending the surviving map {0->2}, clock 3
    t = record(
        "p3_human_ii_survival",
        P3,
        {"a": [0], "b": [2], "clock": 3, "role": "II", "hints": True},
        ["hint"] * 6,
    )
    assert t["final_state"]["winner"] in ("II", None)

    # 3. TWO, infinite clock, human as Player II from the empty map; includes
    # a duplicate-target slip that must 422 without corrupting the session
    t = record(
        "two_infinite_survival",
        TWO,
        {"a": [], "b": [], "clock": "inf", "role": "II", "hints": True},
        ["hint", {"type": "response", "point": 99}, "hint", "hint", "hint"],
    )
    assert t["final_state"]["winner"] == "II"


if __name__ == "__main__":
    sys.exit(main())
