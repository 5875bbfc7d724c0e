// Typed client for the game service. Every decision about legality or
// verdicts lives on the server; this module only moves JSON back and forth.

export type Side = "L" | "R";
export type Player = "I" | "II";
export type Clock = number | "inf";
export type Phase = "await_challenge" | "await_response" | "over";

export interface SpaceDocument {
  labels?: string[];
  d: string[][];
}

export interface ChallengeWire {
  type: "challenge";
  side: Side;
  point: number;
  ordinal?: number;
}

export interface ResponseWire {
  type: "response";
  point: number;
}

export type MoveWire = ChallengeWire | ResponseWire;

export interface RoundWire {
  challenge: ChallengeWire;
  response: number;
}

export interface GameStateWire {
  phase: Phase;
  to_move: Player | null;
  a: number[];
  b: number[];
  map: number[][] | null;
  map_str: string | null;
  clock: Clock;
  moves: RoundWire[];
  pending: ChallengeWire | null;
  winner: Player | null;
}

export interface HintWire {
  rank: number | "top";
  survive_forever: boolean;
  non_losing_moves: MoveWire[];
}

export interface SessionWire {
  id: string;
  space: string;
  role: Player;
  hints: boolean;
  state: GameStateWire;
  hint?: HintWire;
}

export interface AnalysisReportWire {
  scott_rank: number;
  alpha_star: number;
  group_order: number;
  ultrahomogeneous: boolean;
  [key: string]: unknown;
}

export interface ServiceError {
  error: string;
  detail: string;
  legal?: Record<string, unknown>;
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly body: ServiceError,
  ) {
    super(`${body.error}: ${body.detail}`);
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<globalThis.Response>;

async function unwrap<T>(resp: globalThis.Response): Promise<T> {
  const body = await resp.json();
  if (!resp.ok) throw new ApiError(resp.status, body as ServiceError);
  return body as T;
}

export class GameClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.fetchImpl(this.base + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    }).then((r) => unwrap<T>(r));
  }

  private get<T>(path: string): Promise<T> {
    return this.fetchImpl(this.base + path).then((r) => unwrap<T>(r));
  }

  uploadSpace(doc: SpaceDocument): Promise<{ id: string; report: AnalysisReportWire }> {
    return this.post("/spaces", doc);
  }

  getSpace(id: string): Promise<SpaceDocument & { id: string }> {
    return this.get(`/spaces/${id}`);
  }

  createGame(req: {
    space: string;
    a: number[];
    b: number[];
    clock: Clock;
    role: Player;
    hints?: boolean;
  }): Promise<SessionWire> {
    return this.post("/games", req);
  }

  getGame(id: string): Promise<SessionWire> {
    return this.get(`/games/${id}`);
  }

  submitMove(id: string, move: MoveWire): Promise<SessionWire> {
    return this.post(`/games/${id}/moves`, move);
  }

  async deleteGame(id: string): Promise<void> {
    const r = await this.fetchImpl(`${this.base}/games/${id}`, { method: "DELETE" });
    if (!r.ok) throw new ApiError(r.status, await r.json());
  }
}
