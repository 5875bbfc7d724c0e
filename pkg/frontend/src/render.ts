// Pure rendering model: SessionView in, plain BoardView description out.
// Nothing here decides legality or winners — those fields are copied from
// the server snapshot verbatim — so identical states always produce
// identical views (and identical digests).

import type { MoveWire } from "./api.js";
import { pebblesFromLog, spaceSize, type PebblePair, type SessionView } from "./state.js";

export interface HeatCell {
  row: number;
  col: number;
  value: string; // exact rational, as sent by the server
  /** 0..1 shade, value rank among the distinct distances (0 = diagonal) */
  shade: number;
}

export interface BoardView {
  labels: string[];
  cells: HeatCell[];
  pebbles: PebblePair[];
  clockText: string;
  moveLog: string[];
  banner: string | null;
  prompt: string | null;
  inputEnabled: boolean;
  hintLines: string[];
}

function rationalOrder(values: string[]): Map<string, number> {
  const distinct = [...new Set(values)];
  const asNumber = (v: string) => {
    const [p, q] = v.split("/");
    return Number(p) / (q === undefined ? 1 : Number(q));
  };
  distinct.sort((x, y) => asNumber(x) - asNumber(y));
  return new Map(distinct.map((v, i) => [v, i]));
}

function heatCells(d: string[][]): HeatCell[] {
  const order = rationalOrder(d.flat());
  const top = Math.max(1, order.size - 1);
  const cells: HeatCell[] = [];
  d.forEach((row, i) =>
    row.forEach((value, j) =>
      cells.push({ row: i, col: j, value, shade: (order.get(value) ?? 0) / top }),
    ),
  );
  return cells;
}

export function describeMove(move: MoveWire): string {
  if (move.type === "response") return `II answers ${move.point}`;
  const ord = move.ordinal === undefined ? "" : ` [${move.ordinal}]`;
  return `I plays (${move.side}, ${move.point})${ord}`;
}

export function renderBoard(view: SessionView): BoardView {
  const { state, role, hint } = view;
  const labels = view.space.labels ?? view.space.d.map((_, i) => `p${i}`);

  const moveLog = state.moves.map((round, i) => {
    const ch = round.challenge;
    const ord = ch.ordinal === undefined ? "" : ` [${ch.ordinal}]`;
    return `${i + 1}. I plays (${ch.side}, ${ch.point})${ord}; II answers ${round.response}`;
  });

  let banner: string | null = null;
  let prompt: string | null = null;
  if (state.phase === "over") {
    banner = `Player ${state.winner} wins`;
  } else if (state.to_move === role) {
    prompt =
      state.phase === "await_challenge"
        ? "Your move: pick a side, a point, and an ordinal below the clock"
        : `Answer the challenge (${state.pending!.side}, ${state.pending!.point})`;
  } else {
    prompt = "Waiting for the engine";
  }

  const hintLines: string[] = [];
  if (hint !== null) {
    hintLines.push(hint.rank === "top" ? "current map: survives forever" : `current map: rank ${hint.rank}`);
    if (hint.survive_forever) hintLines.push("Player II can survive forever");
    if (state.phase !== "over" && state.to_move === role) {
      hintLines.push(
        hint.non_losing_moves.length === 0
          ? "no non-losing moves"
          : `non-losing: ${hint.non_losing_moves.map(describeMove).join("; ")}`,
      );
    }
  }

  return {
    labels,
    cells: heatCells(view.space.d),
    pebbles: pebblesFromLog(state),
    clockText: state.clock === "inf" ? "clock: ∞" : `clock: ${state.clock}`,
    moveLog,
    banner,
    prompt,
    inputEnabled: state.phase !== "over" && state.to_move === role,
    hintLines,
  };
}

/** Stable FNV-1a digest of the rendered board, for snapshot comparisons. */
export function boardDigest(board: BoardView): string {
  const text = JSON.stringify(board);
  let hash = 0x811c9dc5;
  for (let i = 0; i < text.length; i++) {
    hash ^= text.charCodeAt(i);
    hash = Math.imul(hash, 0x01000193) >>> 0;
  }
  return hash.toString(16).padStart(8, "0");
}

export { spaceSize };
