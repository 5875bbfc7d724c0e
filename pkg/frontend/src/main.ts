// DOM glue: wires the form controls to the client and re-renders the board
// after every server round trip. All state lives in `view`; the DOM is
// rebuilt from the render model on each refresh (the boards are tiny).

import { ApiError, GameClient, type Clock, type Player, type Side, type SpaceDocument } from "./api.js";
import { boardDigest, renderBoard } from "./render.js";
import {
  applyPayload,
  fromPayload,
  spaceSize,
  validateChallenge,
  validateResponse,
  withError,
  type SessionView,
} from "./state.js";

const client = new GameClient("");
let view: SessionView | null = null;

const $ = (id: string) => document.getElementById(id) as HTMLElement;
const input = (id: string) => document.getElementById(id) as HTMLInputElement;

function el(tag: string, cls: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  node.className = cls;
  if (text !== undefined) node.textContent = text;
  return node;
}

function refresh() {
  const root = $("board");
  root.replaceChildren();
  if (view === null) return;
  const board = renderBoard(view);
  root.dataset.digest = boardDigest(board);

  const n = board.labels.length;
  const grid = el("div", "heatmap");
  grid.style.gridTemplateColumns = `repeat(${n + 1}, 2.2em)`;
  grid.append(el("span", "corner"));
  board.labels.forEach((l) => grid.append(el("span", "axis", l)));
  for (let i = 0; i < n; i++) {
    grid.append(el("span", "axis", board.labels[i]));
    for (let j = 0; j < n; j++) {
      const cell = board.cells[i * n + j];
      const node = el("span", "cell", cell.value);
      node.style.background = `hsl(210 70% ${90 - cell.shade * 55}%)`;
      grid.append(node);
    }
  }
  root.append(grid);

  const pebbles = el("div", "pebbles");
  board.pebbles.forEach((p) =>
    pebbles.append(el("span", p.round === 0 ? "pebble base" : "pebble", `${p.a}↔${p.b}`)),
  );
  root.append(pebbles);

  root.append(el("div", "clock", board.clockText));
  const log = el("ol", "movelog");
  board.moveLog.forEach((line) => log.append(el("li", "", line)));
  root.append(log);

  if (board.banner !== null) root.append(el("div", "banner", board.banner));
  if (board.prompt !== null) root.append(el("div", "prompt", board.prompt));
  board.hintLines.forEach((line) => root.append(el("div", "hint", line)));
  if (view.lastError !== null) root.append(el("div", "error", view.lastError));

  $("controls").toggleAttribute("hidden", !board.inputEnabled);
  const stepper = input("ordinal");
  if (view.state.clock !== "inf") {
    stepper.max = String(Math.max(0, Number(view.state.clock) - 1));
    stepper.disabled = false;
  } else {
    stepper.disabled = true;
  }
}

async function roundTrip(action: () => Promise<SessionView>) {
  try {
    view = await action();
  } catch (err) {
    if (view !== null && err instanceof ApiError) {
      // 422/409: the session itself is untouched; just surface the detail
      view = withError(view, err.message);
    } else {
      view = view === null ? null : withError(view, String(err));
      if (view === null) $("board").textContent = String(err);
    }
  }
  refresh();
}

async function startGame() {
  const doc = JSON.parse(input("space-doc").value) as SpaceDocument;
  await roundTrip(async () => {
    const up = await client.uploadSpace(doc);
    const payload = await client.createGame({
      space: up.id,
      a: parseTuple(input("tuple-a").value),
      b: parseTuple(input("tuple-b").value),
      clock: input("clock").value === "inf" ? "inf" : (Number(input("clock").value) as Clock),
      role: input("role").value as Player,
      hints: input("hints").checked,
    });
    return fromPayload(doc, payload);
  });
}

function parseTuple(text: string): number[] {
  return text.trim() === "" ? [] : text.split(",").map((s) => Number(s.trim()));
}

async function submitChallenge() {
  if (view === null) return;
  const ordinal = view.state.clock === "inf" ? null : Number(input("ordinal").value);
  const check = validateChallenge(
    view.state,
    spaceSize(view),
    Number(input("point").value),
    input("side").value as Side,
    ordinal,
  );
  if (!check.ok) {
    view = withError(view, check.reason);
    refresh();
    return;
  }
  await roundTrip(async () => applyPayload(view!, await client.submitMove(view!.sessionId, check.move)));
}

async function submitResponse() {
  if (view === null) return;
  const check = validateResponse(view.state, spaceSize(view), Number(input("point").value));
  if (!check.ok) {
    view = withError(view, check.reason);
    refresh();
    return;
  }
  await roundTrip(async () => applyPayload(view!, await client.submitMove(view!.sessionId, check.move)));
}

$("start").addEventListener("click", () => void startGame());
$("challenge").addEventListener("click", () => void submitChallenge());
$("respond").addEventListener("click", () => void submitResponse());
