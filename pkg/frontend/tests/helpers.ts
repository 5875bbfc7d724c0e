// Shared harness: replays recorded service transcripts through the real
// client by scripting fetch to serve the recorded exchanges in order.

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { FetchLike, MoveWire, SessionWire, SpaceDocument } from "../src/api.js";
import type { GameStateWire } from "../src/api.js";

export interface Exchange {
  method: string;
  path: string;
  request: unknown;
  status: number;
  response: unknown;
}

export interface Transcript {
  space: SpaceDocument;
  exchanges: Exchange[];
  final_state: GameStateWire;
}

const here = dirname(fileURLToPath(import.meta.url));

export function loadTranscript(name: string): Transcript {
  const text = readFileSync(join(here, "fixtures", `${name}.json`), "utf-8");
  return JSON.parse(text) as Transcript;
}

/** Serves the recorded exchanges strictly in order, verifying each request. */
export function scriptedFetch(transcript: Transcript): FetchLike {
  const queue = [...transcript.exchanges];
  return async (url, init) => {
    const next = queue.shift();
    if (next === undefined) throw new Error(`unexpected request ${url}`);
    const method = init?.method ?? "GET";
    if (method !== next.method || url !== next.path) {
      throw new Error(`expected ${next.method} ${next.path}, got ${method} ${url}`);
    }
    if (next.request !== null) {
      const sent = JSON.parse(String(init?.body));
      if (JSON.stringify(sent) !== JSON.stringify(next.request)) {
        throw new Error(`request body diverged from the recording at ${url}`);
      }
    }
    return new Response(JSON.stringify(next.response), {
      status: next.status,
      headers: { "content-type": "application/json" },
    });
  };
}

export function humanMoves(transcript: Transcript): Exchange[] {
  return transcript.exchanges.filter((e) => e.path.endsWith("/moves"));
}

export function creationPayload(transcript: Transcript): SessionWire {
  const ex = transcript.exchanges.find((e) => e.path === "/games");
  return ex!.response as SessionWire;
}

export function recordedMove(ex: Exchange): MoveWire {
  return ex.request as MoveWire;
}
