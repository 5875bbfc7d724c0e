// Session state holder. The server is authoritative: the only "rules" here
// are structural pre-checks sourced from the last server snapshot (bounds of
// the ordinal stepper, points already used), which exist to catch slips
// before a round trip — anything they miss still comes back as a 422.

import type {
  ChallengeWire,
  GameStateWire,
  HintWire,
  MoveWire,
  Player,
  SessionWire,
  Side,
  SpaceDocument,
} from "./api.js";

export interface PebblePair {
  a: number;
  b: number;
  round: number; // 0 = base tuple
}

export interface SessionView {
  sessionId: string;
  role: Player;
  space: SpaceDocument;
  state: GameStateWire;
  hint: HintWire | null;
  lastError: string | null;
}

export function fromPayload(space: SpaceDocument, payload: SessionWire): SessionView {
  return {
    sessionId: payload.id,
    role: payload.role,
    space,
    state: payload.state,
    hint: payload.hint ?? null,
    lastError: null,
  };
}

export function applyPayload(view: SessionView, payload: SessionWire): SessionView {
  return { ...view, state: payload.state, hint: payload.hint ?? null, lastError: null };
}

export function withError(view: SessionView, message: string): SessionView {
  return { ...view, lastError: message };
}

/**
 * Rebuild the pebble pairs from the base tuples plus the move log alone.
 * Used both for rendering and as a fidelity check: the result must agree
 * with the server's `map` field on every refresh.
 */
export function pebblesFromLog(state: GameStateWire): PebblePair[] {
  const pairs: PebblePair[] = state.a.map((a, i) => ({ a, b: state.b[i], round: 0 }));
  state.moves.forEach((round, i) => {
    const ch = round.challenge;
    const a = ch.side === "L" ? ch.point : round.response;
    const b = ch.side === "L" ? round.response : ch.point;
    if (!pairs.some((p) => p.a === a && p.b === b)) {
      pairs.push({ a, b, round: i + 1 });
    }
  });
  return pairs;
}

/** True when the local replay matches the server's rendered map. */
export function logMatchesServerMap(state: GameStateWire): boolean {
  if (state.map === null) return true; // inconsistent base: server renders no map
  const local = pebblesFromLog(state)
    .map((p) => [p.a, p.b] as [number, number])
    .sort((x, y) => x[0] - y[0]);
  const server = [...state.map].sort((x, y) => x[0] - y[0]);
  return JSON.stringify(local) === JSON.stringify(server);
}

export type Rejection = { ok: false; reason: string };
export type Accepted = { ok: true; move: MoveWire };
export type Validation = Accepted | Rejection;

function reject(reason: string): Rejection {
  return { ok: false, reason };
}

/** Structural pre-check for a challenge, from the last server snapshot. */
export function validateChallenge(
  state: GameStateWire,
  n: number,
  point: number,
  side: Side,
  ordinal: number | null,
): Validation {
  if (state.phase !== "await_challenge") return reject("a response is pending");
  if (!Number.isInteger(point) || point < 0 || point >= n) {
    return reject(`point must lie in 0..${n - 1}`);
  }
  if (state.clock === "inf") {
    if (ordinal !== null) return reject("the unclocked game declares no ordinal");
    return { ok: true, move: { type: "challenge", side, point } };
  }
  if (ordinal === null || ordinal < 0 || ordinal >= state.clock) {
    return reject(`ordinal must lie strictly below ${state.clock}`);
  }
  return { ok: true, move: { type: "challenge", side, point, ordinal } };
}

/** Structural pre-check for a response, from the last server snapshot. */
export function validateResponse(state: GameStateWire, n: number, point: number): Validation {
  if (state.phase !== "await_response" || state.pending === null) {
    return reject("no challenge to answer");
  }
  if (!Number.isInteger(point) || point < 0 || point >= n) {
    return reject(`point must lie in 0..${n - 1}`);
  }
  const ch = state.pending;
  const used = usedOnAnswerSide(state, ch);
  if (used.has(point) && !agreesWithExisting(state, ch, point)) {
    return reject(`point ${point} is already matched`);
  }
  return { ok: true, move: { type: "response", point } };
}

function usedOnAnswerSide(state: GameStateWire, ch: ChallengeWire): Set<number> {
  const used = new Set<number>();
  for (const [a, b] of state.map ?? []) used.add(ch.side === "L" ? b : a);
  return used;
}

function agreesWithExisting(state: GameStateWire, ch: ChallengeWire, point: number): boolean {
  // answering with an already-used point is fine only when it re-states the
  // existing pair for the challenged point
  return (state.map ?? []).some(([a, b]) =>
    ch.side === "L" ? a === ch.point && b === point : b === ch.point && a === point,
  );
}

/** Number of points in the session's space. */
export function spaceSize(view: SessionView): number {
  return view.space.d.length;
}
