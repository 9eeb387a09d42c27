// DOM wiring. All rules live on the server; this file only routes
// clicks to the controllers and repaints from snapshots.

import { ApiError, SessionApi } from "./api.js";
import {
  BOARD_HEIGHT,
  boardHtml,
  edgesSvg,
  hudHtml,
  vertexLayout,
} from "./board.js";
import { AdversaryGame, AlgorithmGame } from "./controller.js";
import type { AdversarySnapshot } from "./types.js";

const api = new SessionApi("");

const el = {
  controls: document.getElementById("controls")!,
  board: document.getElementById("board-area")!,
  hud: document.getElementById("hud-area")!,
  status: document.getElementById("status")!,
  actions: document.getElementById("actions")!,
};

type Mode = "algorithm" | "adversary";

let algorithmGame: AlgorithmGame | null = null;
let adversaryGame: AdversaryGame | null = null;
let picked: number[] = [];
let committing = false;

function status(text: string, kind: "info" | "win" | "loss" = "info"): void {
  el.status.className = `status ${kind}`;
  el.status.textContent = text;
}

function renderControls(): void {
  el.controls.innerHTML = `
    <label>n <input id="n-input" type="number" min="2" max="6" value="2"></label>
    <label>side
      <select id="mode-input">
        <option value="algorithm">play the algorithm</option>
        <option value="adversary">play the adversary</option>
      </select>
    </label>
    <button id="start-button">new game</button>`;
  document.getElementById("start-button")!.addEventListener("click", () => {
    const n = Number((document.getElementById("n-input") as HTMLInputElement).value);
    const mode = (document.getElementById("mode-input") as HTMLSelectElement).value as Mode;
    startGame(n, mode).catch((err) => status(String(err), "loss"));
  });
}

/** Repaint the board; existing vertices move with a CSS transition so
 * pillar flips are visible as row swaps. */
function paintSnapshot(snapshot: AdversarySnapshot): void {
  const existing = el.board.querySelectorAll<HTMLElement>(".vertex");
  if (existing.length === 2 * snapshot.n) {
    const layout = vertexLayout(snapshot);
    for (const node of existing) {
      const spot = layout.get(Number(node.dataset.pos))!;
      node.style.top = `${spot.y}px`;
      node.classList.toggle("top", spot.row === "top");
      node.classList.toggle("bottom", spot.row === "bottom");
    }
    el.board.querySelector("svg.edges")?.remove();
    const wrapper = el.board.querySelector(".board")!;
    wrapper.insertAdjacentHTML("afterbegin", edgesSvg(snapshot));
  } else {
    el.board.innerHTML = boardHtml(snapshot);
    el.board
      .querySelectorAll<HTMLElement>(".vertex")
      .forEach((node) =>
        node.addEventListener("click", () => onVertexClick(Number(node.dataset.pos))),
      );
  }
  el.hud.innerHTML = hudHtml(snapshot);
  el.board.style.minHeight = `${BOARD_HEIGHT}px`;
  for (const node of el.board.querySelectorAll<HTMLElement>(".vertex")) {
    node.classList.toggle("picked", picked.includes(Number(node.dataset.pos)));
  }
}

function renderAlgorithmActions(): void {
  el.actions.innerHTML = `
    <button id="commit-button">${committing ? "cancel output" : "commit an output"}</button>`;
  document.getElementById("commit-button")!.addEventListener("click", () => {
    committing = !committing;
    picked = [];
    status(
      committing
        ? "output mode: click the position you claim holds the repeated value"
        : "query mode: click two positions to compare them",
    );
    renderAlgorithmActions();
  });
}

async function onVertexClick(position: number): Promise<void> {
  if (!algorithmGame || algorithmGame.finished) return;
  if (committing) {
    const result = await algorithmGame.output(position);
    const witness = result.witness ? ` — defeating instance [${result.witness.join(", ")}]` : "";
    status(
      result.verdict === "correct"
        ? `output ${position}: correct in every consistent instance`
        : `output ${position}: wrong${witness}`,
      result.verdict === "correct" ? "win" : "loss",
    );
    el.actions.innerHTML = "";
    return;
  }
  picked = picked.includes(position) ? picked.filter((p) => p !== position) : [...picked, position];
  if (picked.length === 2) {
    const [i, j] = picked;
    picked = [];
    try {
      const snapshot = await algorithmGame.query(i, j);
      paintSnapshot(snapshot);
      status(`compared ${i} and ${j}: ${snapshot.edges.length ? "see board" : ""}`);
      const last = await lastAnswer(i, j);
      status(`(${i}, ${j}) → ${last}`);
    } catch (err) {
      status(err instanceof ApiError ? JSON.stringify(err.detail) : String(err), "loss");
    }
    return;
  }
  if (algorithmGame.snapshot) paintSnapshot(algorithmGame.snapshot);
}

async function lastAnswer(i: number, j: number): Promise<string> {
  const transcript = await algorithmGame!.transcript();
  const record = transcript.queries[transcript.queries.length - 1];
  if (record && record.i === Math.min(i, j) && record.j === Math.max(i, j)) {
    return record.answer === "equal" ? "equal" : "not equal";
  }
  return "recorded";
}

function renderAdversaryActions(): void {
  el.actions.innerHTML = `
    <button id="answer-equal">answer: equal</button>
    <button id="answer-not-equal">answer: not equal</button>`;
  document.getElementById("answer-equal")!.addEventListener("click", () => submitAnswer("equal"));
  document
    .getElementById("answer-not-equal")!
    .addEventListener("click", () => submitAnswer("not_equal"));
}

async function submitAnswer(answer: "equal" | "not_equal"): Promise<void> {
  if (!adversaryGame || adversaryGame.finished) return;
  try {
    const response = await adversaryGame.answer(answer);
    if (response.solver_output) {
      const witness = response.witness
        ? ` — your answers admit the defeating instance [${response.witness.join(", ")}]`
        : "";
      status(
        response.verdict === "correct"
          ? `solver outputs ${response.solver_output.position}: correct under every instance consistent with your answers`
          : `solver outputs ${response.solver_output.position}: you win${witness}`,
        response.verdict === "correct" ? "loss" : "win",
      );
      el.actions.innerHTML = "";
      return;
    }
    showPendingQuery();
  } catch (err) {
    if (err instanceof ApiError && err.status === 409) {
      const detail = err.detail as { error?: string; conflict?: [number, number] | null };
      status(
        detail.error === "inconsistent_answer"
          ? `rejected: contradicts your earlier answer on (${detail.conflict?.join(", ")})`
          : "rejected: no valid instance is consistent with that answer",
        "loss",
      );
    } else {
      status(String(err), "loss");
    }
  }
}

function showPendingQuery(): void {
  const pending = adversaryGame?.pendingQuery;
  if (!pending) return;
  status(
    `solver asks: are positions ${pending[0]} and ${pending[1]} equal? ` +
      `(${adversaryGame!.comparisons} comparisons so far)`,
  );
  el.board.innerHTML = `<div class="pending-query">${pending[0]} ≟ ${pending[1]}</div>`;
  el.hud.innerHTML = "";
}

async function startGame(n: number, mode: Mode): Promise<void> {
  picked = [];
  committing = false;
  algorithmGame = null;
  adversaryGame = null;
  if (mode === "algorithm") {
    algorithmGame = new AlgorithmGame(api, n);
    const snapshot = await algorithmGame.start();
    el.board.innerHTML = "";
    paintSnapshot(snapshot);
    renderAlgorithmActions();
    status("query mode: click two positions to compare them");
  } else {
    adversaryGame = new AdversaryGame(api, n, "optimal");
    await adversaryGame.start();
    renderAdversaryActions();
    showPendingQuery();
  }
}

renderControls();
status("choose a side and start a game");
